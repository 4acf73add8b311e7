// Planar C^2 domains with arc-length boundary parameterization, signed
// distance, projection onto the boundary and Frenet frame.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mmtf/util.hpp"
#include "mmtf/vec.hpp"

namespace mmtf {

enum class CurveKind { Disk, Ellipse, SmoothStar };

struct ShapeParams {
  double a = 1.0;        // disk radius / ellipse semi-axis / star base radius
  double b = 1.0;        // ellipse semi-axis
  double star_eps = 0.0; // star amplitude, |star_eps| < 1
  int star_k = 5;        // star frequency
};

// Closed C^2 curve given by a polar-type parameterization p(t), t in [0,2pi),
// with a precomputed monotone arc-length table.
class BoundaryCurve {
 public:
  BoundaryCurve(CurveKind kind, const ShapeParams& p);

  CurveKind kind() const { return kind_; }
  double length() const { return length_; }
  double max_curvature() const { return max_curvature_; }

  // curve data at arc length s (s wraps modulo length)
  Vec2 point(double s) const;
  Vec2 tangent(double s) const;
  Vec2 normal(double s) const;  // outward
  double curvature(double s) const;

  // parameter t for arc length s (table lookup + Newton polish)
  double param_of_arclength(double s) const;

  // raw parameterization (used by tests and the arc-length oracle)
  Vec2 point_of_param(double t) const;
  double speed_of_param(double t) const;
  double curvature_of_param(double t) const;

  // point-in-domain test; exact for the polar-graph families used here
  bool contains(const Vec2& x) const;

 private:
  Vec2 d1_of_param(double t) const;
  Vec2 d2_of_param(double t) const;
  double radius_fn(double t, double& dr, double& ddr) const;

  CurveKind kind_;
  ShapeParams sp_;
  double length_ = 0;
  double max_curvature_ = 0;
  std::vector<double> s_table_;  // arc length at uniform t nodes
  int table_n_ = 0;
};

struct LocateResult {
  double d = 0;          // signed distance, negative inside
  double s = 0;          // arc length of the projection (valid if has_projection)
  Vec2 p;                // projection point
  Vec2 n;                // outward normal at the projection
  bool has_projection = false;
};

struct BoundingBox {
  Vec2 lo, hi;
};

class DomainGeometry {
 public:
  DomainGeometry(CurveKind kind, const ShapeParams& p, double tube_cap = -1.0);

  const BoundaryCurve& boundary() const { return curve_; }
  double tube_radius() const { return tube_radius_; }
  double length() const { return curve_.length(); }
  BoundingBox bounding_box() const { return bbox_; }

  // Signed distance with projection data. Deep interior points (|d| >=
  // tube_radius) come back with has_projection = false; proj_of() then throws.
  LocateResult locate(const Vec2& x) const;
  double signed_distance(const Vec2& x) const { return locate(x).d; }

  struct Frame {
    Vec2 point, tangent, normal;
    double curvature;
  };
  Frame frame(double s) const;

  // composite quadrature of a boundary scalar along arc length
  // (periodic trapezoidal rule; spectrally accurate for smooth integrands)
  double boundary_integral(const std::function<double(double)>& g, int n_nodes = 512) const;

  bool contains(const Vec2& x) const { return curve_.contains(x); }

 private:
  double nearest_sample_s(const Vec2& x) const;

  BoundaryCurve curve_;
  double tube_radius_;
  BoundingBox bbox_;
  std::vector<Vec2> seed_pts_;  // coarse samples for projection seeding
  std::vector<double> seed_s_;
};

LocateResult require_projection(const LocateResult& r);

DomainGeometry make_domain(const std::string& kind, const ShapeParams& p,
                           double tube_cap = -1.0);

}  // namespace mmtf
