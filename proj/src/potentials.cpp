#include "vortexbody/potentials.hpp"

#include <cmath>

#include "vortexbody/contour.hpp"

namespace vortexbody {

namespace {

// Conjugate boundary traces -int K_i ds of the three potentials, as
// functions of the boundary point z.
double conjugate_trace(int i, Complex z) {
  switch (i) {
    case 1:
      return z.imag();
    case 2:
      return -z.real();
    default:
      return -0.5 * std::norm(z);
  }
}

Complex series_eval(const std::vector<Complex>& a, Complex w) {
  Complex acc(0.0, 0.0);
  const Complex iw = 1.0 / w;
  Complex p(1.0, 0.0);
  for (const Complex& ak : a) {
    p *= iw;
    acc += ak * p;
  }
  return acc;
}

Complex series_derivative_eval(const std::vector<Complex>& a, Complex w) {
  Complex acc(0.0, 0.0);
  const Complex iw = 1.0 / w;
  Complex p = iw;
  for (std::size_t k = 0; k < a.size(); ++k) {
    p *= iw;
    acc -= static_cast<double>(k + 1) * a[k] * p;
  }
  return acc;
}

}  // namespace

KirchhoffPotentials::KirchhoffPotentials(const BodyGeometry& geom, double residual_tol,
                                         int initial_terms, int max_terms)
    : geom_(geom) {
  int terms = initial_terms;
  while (true) {
    const int nodes = std::max(256, 8 * terms);
    // Fourier projection of the conjugate traces on the unit circle.
    std::vector<Complex> zb(nodes);
    for (int n = 0; n < nodes; ++n) {
      zb[n] = geom_.inverse(std::polar(1.0, kTwoPi * n / nodes));
    }
    for (int i = 1; i <= 3; ++i) {
      std::vector<double> g(nodes);
      for (int n = 0; n < nodes; ++n) g[n] = conjugate_trace(i, zb[n]);
      auto& a = coeff_[i - 1];
      a.assign(terms, Complex(0.0, 0.0));
      for (int k = 1; k <= terms; ++k) {
        double ak_cos = 0.0, ak_sin = 0.0;
        for (int n = 0; n < nodes; ++n) {
          const double th = kTwoPi * k * n / nodes;
          ak_cos += g[n] * std::cos(th);
          ak_sin += g[n] * std::sin(th);
        }
        // Im F(e^{i theta}) = sum_k (Im a_k cos k theta - Re a_k sin k theta)
        a[k - 1] = Complex(-2.0 * ak_sin / nodes, 2.0 * ak_cos / nodes);
      }
      // Drop the noise floor of the projection.
      double scale = 1e-300;
      for (const auto& ak : a) scale = std::max(scale, std::abs(ak));
      for (auto& ak : a) {
        if (std::abs(ak) < 1e-14 * scale) ak = Complex(0.0, 0.0);
      }
      while (!a.empty() && a.back() == Complex(0.0, 0.0)) a.pop_back();
    }

    // Neumann residual at offset boundary nodes.
    const int check = 256;
    const double shift = 0.5 / check;
    const BoundaryCurve curve(
        [this, shift](double t) { return geom_.inverse(std::polar(1.0, kTwoPi * (t + shift))); },
        [this, shift](double t) {
          const Complex w = std::polar(1.0, kTwoPi * (t + shift));
          return geom_.epsilon * geom_.map.inverse_derivative(w) * Complex(0.0, kTwoPi) * w;
        },
        check);
    residual_ = 0.0;
    for (int n = 0; n < check; ++n) {
      const Vec2 x = to_vec(curve.points()[n]);
      const Vec2 nv = to_vec(curve.normals()[n]);
      const double k[3] = {nv.x(), nv.y(), perp(x).dot(nv)};
      for (int i = 1; i <= 3; ++i) {
        const double dn = gradient(i, x).dot(nv);
        residual_ = std::max(residual_, std::abs(dn - k[i - 1]));
      }
    }
    if (residual_ <= residual_tol) return;
    if (2 * terms > max_terms) {
      throw ConvergenceError("KirchhoffPotentials: Neumann residual " +
                             std::to_string(residual_) + " above tolerance at " +
                             std::to_string(terms) + " terms");
    }
    terms *= 2;
  }
}

KirchhoffPotentials::ValueGrad KirchhoffPotentials::evaluate(int i, const Vec2& x) const {
  if (i < 1 || i > 3) throw std::invalid_argument("KirchhoffPotentials: index must be 1, 2 or 3");
  geom_.require_outside(x, "kirchhoff");
  const Complex z = to_complex(x);
  const Complex w = geom_.forward(z);
  ValueGrad out;
  out.value = series_eval(coeff_[i - 1], w).real();
  // d1 Phi - i d2 Phi = F'(T(z)) T'(z)
  out.gradient = to_vec(std::conj(series_derivative_eval(coeff_[i - 1], w) * geom_.derivative(z)));
  return out;
}

Vec2 KirchhoffPotentials::gradient(int i, const Vec2& x) const { return evaluate(i, x).gradient; }

KirchhoffPotentials::ValueGrad kirchhoff(const BodyGeometry& geom, int i, const Vec2& x) {
  return KirchhoffPotentials(geom).evaluate(i, x);
}

namespace {

Mat3 m2_quadrature(const KirchhoffPotentials& phi, double R, int nt, int ntheta) {
  // int_{1<|w|<R} Re(F_a' conj(F_b')) dA in polar coordinates, with the
  // radial direction substituted r = 1/t so the integrand is polynomial-like
  // near infinity. Simpson in t, trapezoid in theta (exact for the
  // truncated series).
  Mat3 m = Mat3::Zero();
  const double t0 = 1.0 / R;
  const double h = (1.0 - t0) / nt;
  std::array<std::vector<Complex>, 3> dF;
  for (auto& v : dF) v.resize(ntheta);
  std::vector<double> weights(nt + 1);
  for (int it = 0; it <= nt; ++it) {
    weights[it] = (it == 0 || it == nt) ? 1.0 : (it % 2 == 1 ? 4.0 : 2.0);
  }
  for (int it = 0; it <= nt; ++it) {
    const double t = t0 + h * it;
    const double r = 1.0 / t;
    for (int n = 0; n < ntheta; ++n) {
      const Complex w = std::polar(r, kTwoPi * n / ntheta);
      for (int a = 1; a <= 3; ++a) dF[a - 1][n] = series_derivative_eval(phi.coefficients(a), w);
    }
    const double wr = weights[it] * (h / 3.0) / (t * t * t) * (kTwoPi / ntheta);
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        const double theta_sum = pairwise_sum<double>(
            ntheta, [&](std::size_t n) { return (dF[a][n] * std::conj(dF[b][n])).real(); });
        m(a, b) += wr * theta_sum;
      }
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) m(b, a) = m(a, b);
  }
  return m;
}

Mat3 m2_tail(const KirchhoffPotentials& phi, double R) {
  // Exact remainder of the truncated series over |w| > R:
  // int w^{-j-1} conj(w^{-k-1}) dA = pi delta_jk R^{-2j} / j applied to F'.
  Mat3 m = Mat3::Zero();
  for (int a = 1; a <= 3; ++a) {
    for (int b = a; b <= 3; ++b) {
      const auto& ca = phi.coefficients(a);
      const auto& cb = phi.coefficients(b);
      double acc = 0.0;
      for (std::size_t k = 0; k < std::min(ca.size(), cb.size()); ++k) {
        acc += kPi * (k + 1) * (ca[k] * std::conj(cb[k])).real() * std::pow(R, -2.0 * (k + 1.0));
      }
      m(a - 1, b - 1) = m(b - 1, a - 1) = acc;
    }
  }
  return m;
}

}  // namespace

Mat3 added_mass_m2(const KirchhoffPotentials& phi, double truncation_radius,
                   double certify_tol) {
  const Mat3 tail = m2_tail(phi, truncation_radius);
  const Mat3 coarse = m2_quadrature(phi, truncation_radius, 128, 128) + tail;
  const Mat3 fine = m2_quadrature(phi, truncation_radius, 256, 256) + tail;
  if ((coarse - fine).cwiseAbs().maxCoeff() > certify_tol) {
    throw ConvergenceError("added_mass: two-resolution quadrature disagreement above tolerance");
  }
  return fine;
}

AddedMass added_mass(const BodyGeometry& geom, double m, double J0) {
  if (!(m > 0.0) || !(J0 > 0.0)) {
    throw std::invalid_argument("added_mass: mass and J0 must be positive");
  }
  AddedMass out;
  const KirchhoffPotentials phi(geom);
  out.m2 = added_mass_m2(phi);
  out.m1 = Vec3(m, m, geom.epsilon * geom.epsilon * J0).asDiagonal();
  out.total = out.m1 + out.m2;
  return out;
}

}  // namespace vortexbody
