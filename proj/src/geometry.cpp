#include "mmtf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmtf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 4-point Gauss-Legendre on [0,1]
constexpr double kG4x[4] = {0.069431844202973712, 0.330009478207571868,
                            0.669990521792428132, 0.930568155797026288};
constexpr double kG4w[4] = {0.173927422568726929, 0.326072577431273071,
                            0.326072577431273071, 0.173927422568726929};

}  // namespace

double BoundaryCurve::radius_fn(double t, double& dr, double& ddr) const {
  switch (kind_) {
    case CurveKind::Disk:
      dr = 0;
      ddr = 0;
      return sp_.a;
    case CurveKind::SmoothStar: {
      double c = std::cos(sp_.star_k * t), s = std::sin(sp_.star_k * t);
      dr = -sp_.a * sp_.star_eps * sp_.star_k * s;
      ddr = -sp_.a * sp_.star_eps * sp_.star_k * sp_.star_k * c;
      return sp_.a * (1.0 + sp_.star_eps * c);
    }
    default:
      dr = ddr = 0;
      return 0;
  }
}

Vec2 BoundaryCurve::point_of_param(double t) const {
  if (kind_ == CurveKind::Ellipse)
    return {sp_.a * std::cos(t), sp_.b * std::sin(t)};
  double dr, ddr;
  double r = radius_fn(t, dr, ddr);
  return {r * std::cos(t), r * std::sin(t)};
}

Vec2 BoundaryCurve::d1_of_param(double t) const {
  if (kind_ == CurveKind::Ellipse)
    return {-sp_.a * std::sin(t), sp_.b * std::cos(t)};
  double dr, ddr;
  double r = radius_fn(t, dr, ddr);
  double c = std::cos(t), s = std::sin(t);
  return {dr * c - r * s, dr * s + r * c};
}

Vec2 BoundaryCurve::d2_of_param(double t) const {
  if (kind_ == CurveKind::Ellipse)
    return {-sp_.a * std::cos(t), -sp_.b * std::sin(t)};
  double dr, ddr;
  double r = radius_fn(t, dr, ddr);
  double c = std::cos(t), s = std::sin(t);
  return {ddr * c - 2 * dr * s - r * c, ddr * s + 2 * dr * c - r * s};
}

double BoundaryCurve::speed_of_param(double t) const { return d1_of_param(t).norm(); }

double BoundaryCurve::curvature_of_param(double t) const {
  Vec2 g1 = d1_of_param(t), g2 = d2_of_param(t);
  double v = g1.norm();
  return g1.cross(g2) / (v * v * v);
}

BoundaryCurve::BoundaryCurve(CurveKind kind, const ShapeParams& p)
    : kind_(kind), sp_(p) {
  if (kind_ == CurveKind::Disk && p.a <= 0)
    throw validation_error("disk radius must be positive");
  if (kind_ == CurveKind::Ellipse && (p.a <= 0 || p.b <= 0))
    throw validation_error("ellipse semi-axes must be positive");
  if (kind_ == CurveKind::SmoothStar) {
    if (p.a <= 0) throw validation_error("star base radius must be positive");
    if (std::abs(p.star_eps) >= 1.0)
      throw validation_error(
          "star amplitude >= 1 gives a degenerate boundary (unbounded curvature)");
    if (p.star_k < 1) throw validation_error("star frequency must be >= 1");
  }

  table_n_ = 4096;
  s_table_.assign(table_n_ + 1, 0.0);
  double dt = kTwoPi / table_n_;
  Kahan acc;
  for (int i = 0; i < table_n_; ++i) {
    double t0 = i * dt;
    double panel = 0;
    for (int g = 0; g < 4; ++g) panel += kG4w[g] * speed_of_param(t0 + kG4x[g] * dt);
    acc.add(panel * dt);
    s_table_[i + 1] = acc.value();
  }
  length_ = s_table_[table_n_];

  max_curvature_ = 0;
  for (int i = 0; i < 4 * table_n_; ++i)
    max_curvature_ = std::max(max_curvature_,
                              std::abs(curvature_of_param(i * kTwoPi / (4 * table_n_))));
}

double BoundaryCurve::param_of_arclength(double s) const {
  s = std::fmod(s, length_);
  if (s < 0) s += length_;
  auto it = std::upper_bound(s_table_.begin(), s_table_.end(), s);
  int i = std::max<int>(0, int(it - s_table_.begin()) - 1);
  double dt = kTwoPi / table_n_;
  double t = i * dt;
  double v = speed_of_param(t);
  t += (s - s_table_[i]) / v;
  for (int k = 0; k < 8; ++k) {
    // invert s(t) by Newton; s'(t) = speed
    double ds = arc_err(t, s, *this);
    (void)ds;
    break;
  }
  // Newton iterations written out (no helper needed)
  for (int k = 0; k < 6; ++k) {
    double si = s_table_[i];
    // integrate speed from node i to t with one Gauss panel for the residual
    double span = t - i * dt;
    double acc = 0;
    for (int g = 0; g < 4; ++g) acc += kG4w[g] * speed_of_param(i * dt + kG4x[g] * span);
    double f = si + acc * span - s;
    double fp = speed_of_param(t);
    double step = f / fp;
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return t;
}

Vec2 BoundaryCurve::point(double s) const { return point_of_param(param_of_arclength(s)); }

Vec2 BoundaryCurve::tangent(double s) const {
  return d1_of_param(param_of_arclength(s)).normalized();
}

Vec2 BoundaryCurve::normal(double s) const { return tangent(s).rot_cw(); }

double BoundaryCurve::curvature(double s) const {
  return curvature_of_param(param_of_arclength(s));
}

bool BoundaryCurve::contains(const Vec2& x) const {
  if (kind_ == CurveKind::Ellipse) {
    double u = x.x / sp_.a, v = x.y / sp_.b;
    return u * u + v * v < 1.0;
  }
  double t = std::atan2(x.y, x.x);
  double dr, ddr;
  double r = radius_fn(t < 0 ? t + kTwoPi : t, dr, ddr);
  return x.norm() < r;
}

DomainGeometry::DomainGeometry(CurveKind kind, const ShapeParams& p, double tube_cap)
    : curve_(kind, p) {
  double cap = 1.0 / (2.0 * curve_.max_curvature());
  tube_radius_ = (tube_cap > 0) ? std::min(tube_cap, cap) : cap;

  int n = 1024;
  seed_pts_.resize(n);
  seed_s_.resize(n);
  Vec2 lo(1e300, 1e300), hi(-1e300, -1e300);
  for (int i = 0; i < n; ++i) {
    double s = curve_.length() * i / n;
    seed_s_[i] = s;
    seed_pts_[i] = curve_.point(s);
    lo.x = std::min(lo.x, seed_pts_[i].x);
    lo.y = std::min(lo.y, seed_pts_[i].y);
    hi.x = std::max(hi.x, seed_pts_[i].x);
    hi.y = std::max(hi.y, seed_pts_[i].y);
  }
  bbox_ = {lo, hi};
}

double DomainGeometry::nearest_sample_s(const Vec2& x) const {
  double best = 1e300;
  std::size_t bi = 0;
  for (std::size_t i = 0; i < seed_pts_.size(); ++i) {
    double d2 = (x - seed_pts_[i]).norm2();
    if (d2 < best - 1e-18 || (std::abs(d2 - best) <= 1e-18 && seed_s_[i] < seed_s_[bi])) {
      best = d2;
      bi = i;
    }
  }
  return seed_s_[bi];
}

LocateResult DomainGeometry::locate(const Vec2& x) const {
  LocateResult r;
  double s = nearest_sample_s(x);
  // Newton on F(s) = (x - phi(s)) . tau(s); F'(s) = -1 - kappa (x - phi) . n
  for (int k = 0; k < 60; ++k) {
    Frame f = frame(s);
    Vec2 dx = x - f.point;
    double F = dx.dot(f.tangent);
    double Fp = -1.0 - f.curvature * dx.dot(f.normal);
    if (std::abs(Fp) < 1e-12) break;
    double step = F / Fp;
    s -= step;
    if (std::abs(step) < 1e-14 * (1.0 + curve_.length())) break;
  }
  Frame f = frame(s);
  Vec2 dx = x - f.point;
  double dist = dx.norm();
  bool inside = curve_.contains(x);
  r.d = inside ? -dist : dist;
  r.s = std::fmod(s, curve_.length());
  if (r.s < 0) r.s += curve_.length();
  r.p = f.point;
  r.n = f.normal;
  r.has_projection = std::abs(r.d) < tube_radius_;
  return r;
}

LocateResult require_projection(const LocateResult& r) {
  if (!r.has_projection)
    throw outside_tube_error("projection requested outside the tubular neighborhood");
  return r;
}

DomainGeometry::Frame DomainGeometry::frame(double s) const {
  Frame f;
  double t = curve_.param_of_arclength(s);
  f.point = curve_.point_of_param(t);
  Vec2 g1 = curve_.d1_of_param(t);
  f.tangent = g1.normalized();
  f.normal = f.tangent.rot_cw();
  f.curvature = curve_.curvature_of_param(t);
  return f;
}

double DomainGeometry::boundary_integral(const std::function<double(double)>& g,
                                         int n_nodes) const {
  if (n_nodes <= 0) throw validation_error("boundary_integral needs at least one node");
  double L = curve_.length();
  double w = L / n_nodes;
  Kahan acc;
  for (int i = 0; i < n_nodes; ++i) acc.add(g(i * w));
  return acc.value() * w;
}

DomainGeometry make_domain(const std::string& kind, const ShapeParams& p, double tube_cap) {
  if (kind == "disk") return DomainGeometry(CurveKind::Disk, p, tube_cap);
  if (kind == "ellipse") return DomainGeometry(CurveKind::Ellipse, p, tube_cap);
  if (kind == "smooth-star" || kind == "star")
    return DomainGeometry(CurveKind::SmoothStar, p, tube_cap);
  throw validation_error("unknown domain kind: " + kind);
}

}  // namespace mmtf
