// Error types, compensated summation and the deterministic parallel reduction
// used by all energy kernels.
#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mmtf {

// Invalid input (unknown kind, out-of-range parameter, malformed file).
// Maps to CLI exit code 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerically unusable configuration (under-resolved layer, undecayed
// field, divergent line search). Maps to CLI exit code 3.
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Projection onto the boundary requested outside the tubular neighborhood,
// or a cutoff width at or beyond the tube radius.
struct outside_tube_error : resolution_error {
  using resolution_error::resolution_error;
};

// Clamped limit functionals are infinite when the trace is not +-e3.
struct infeasible_boundary_error : resolution_error {
  using resolution_error::resolution_error;
};

// Kahan-Neumaier compensated accumulator.
class Kahan {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0, comp_ = 0;
};

inline int worker_count() {
  if (const char* s = std::getenv("MMTF_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Deterministic chunked reduction: the index range is cut into fixed-size
// chunks, each chunk is summed with compensation, and chunk results are
// combined in index order. Results are bit-identical for any thread count.
inline double reduce_chunked(std::size_t n,
                             const std::function<double(std::size_t, std::size_t)>& chunk_sum,
                             std::size_t chunk = 1024) {
  if (n == 0) return 0.0;
  std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(nchunks);
  int nw = worker_count();
  if (nw <= 1 || nchunks == 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      partial[c] = chunk_sum(c * chunk, std::min(n, (c + 1) * chunk));
  } else {
    std::vector<std::thread> pool;
    std::size_t per = (nchunks + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      std::size_t c0 = w * per, c1 = std::min(nchunks, (w + 1) * per);
      if (c0 >= c1) break;
      pool.emplace_back([&, c0, c1]() {
        for (std::size_t c = c0; c < c1; ++c)
          partial[c] = chunk_sum(c * chunk, std::min(n, (c + 1) * chunk));
      });
    }
    for (auto& t : pool) t.join();
  }
  Kahan acc;
  for (double p : partial) acc.add(p);
  return acc.value();
}

}  // namespace mmtf
