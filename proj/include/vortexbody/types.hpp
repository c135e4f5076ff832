#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace vortexbody {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// x^perp = (-x2, x1), a rotation by +pi/2.
inline Vec2 perp(const Vec2& x) { return Vec2(-x.y(), x.x()); }

// R^2 and C are identified through (x1, x2) = x1 + i x2, so that
// perp(x) corresponds to multiplication by i.
inline Complex to_complex(const Vec2& x) { return Complex(x.x(), x.y()); }
inline Vec2 to_vec(Complex z) { return Vec2(z.real(), z.imag()); }

/// Rotation matrix of angle theta.
inline Mat2 rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 q;
  q << c, -s, s, c;
  return q;
}

struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsideBodyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T, typename F>
T pairwise_sum_range(std::size_t lo, std::size_t hi, F&& term) {
  if (hi - lo <= 8) {
    T acc = term(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum_range<T>(lo, mid, term) + pairwise_sum_range<T>(mid, hi, term);
}

}  // namespace detail

/// Sum term(0) + ... + term(n-1) by fixed-order pairwise reduction.
/// The association order depends only on n, so results are reproducible
/// bit-for-bit for a given input regardless of evaluation context.
template <typename T, typename F>
T pairwise_sum(std::size_t n, F&& term, T zero = T{}) {
  if (n == 0) return zero;
  return detail::pairwise_sum_range<T>(0, n, term);
}

inline std::atomic<int>& detail_thread_budget() {
  static std::atomic<int> budget{1};
  return budget;
}

inline void set_thread_budget(int n) { detail_thread_budget() = std::max(1, n); }
inline int thread_budget() { return detail_thread_budget().load(); }

/// Apply body(i) for i in [0, n). Runs on the configured thread budget;
/// each index is touched exactly once, so any writes to distinct slots
/// give bit-identical results for every thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const int threads = std::min<int>(thread_budget(), static_cast<int>(n / 64));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    workers.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace vortexbody
