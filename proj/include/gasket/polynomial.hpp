#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace gasket {

/// Dense polynomial in the monomial basis, coefficients in ascending degree.
struct Polynomial {
  std::vector<double> coeffs{0.0};

  Polynomial() = default;
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    trim();
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  bool is_zero() const { return coeffs.size() == 1 && coeffs[0] == 0.0; }

  /// Drop trailing (near-)zero leading coefficients.
  void trim(double tol = 0.0) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= tol) coeffs.pop_back();
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs.size() == 1) return Polynomial{};
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(double s, const Polynomial& a) {
    std::vector<double> c = a.coeffs;
    for (double& v : c) v *= s;
    return Polynomial(std::move(c));
  }
};

/// All complex roots by the companion-matrix eigenproblem.
inline std::vector<std::complex<double>> companion_roots(const Polynomial& p) {
  Polynomial q = p;
  q.trim(0.0);
  const int n = q.degree();
  if (n < 1) return {};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -q.coeffs[i] / q.coeffs[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion_roots: eigensolver failed");
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
  return roots;
}

/// Newton polish with bisection fallback when a bracket is known.
template <class F, class DF>
double newton_refine(F f, DF df, double x0, double tol = 1e-14, int max_iter = 60) {
  double x = x0;
  for (int i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    const double d = df(x);
    if (d == 0.0) break;
    const double step = fx / d;
    x -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

/// Bisection on a sign change; f(lo) and f(hi) must have opposite signs.
template <class F>
double bisect(F f, double lo, double hi, int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Real roots of p inside [lo, hi], companion matrix then Newton polish.
inline std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi,
                                         double imag_tol = 1e-8) {
  std::vector<double> out;
  const Polynomial d = p.derivative();
  for (const auto& r : companion_roots(p)) {
    if (std::abs(r.imag()) > imag_tol) continue;
    double x = newton_refine([&](double v) { return p(v); }, [&](double v) { return d(v); },
                             r.real());
    if (x >= lo - 1e-9 && x <= hi + 1e-9) out.push_back(std::clamp(x, lo, hi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gasket
