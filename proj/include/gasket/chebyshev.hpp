#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gasket/polynomial.hpp"

namespace gasket::chebyshev {

using bigint = boost::multiprecision::cpp_int;

/// T_k(x) by the three-term recurrence; valid on all of R, unlike the
/// cos/arccos form which is only real on [-1, 1].
inline double eval_first_kind(int k, double x) {
  if (k < 0) throw std::invalid_argument("eval_first_kind: negative degree");
  double t0 = 1.0, t1 = x;
  if (k == 0) return t0;
  for (int i = 1; i < k; ++i) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

/// U_k(x) by recurrence; the polynomial value at x = +-1 is (k+1)(+-1)^k.
inline double eval_second_kind(int k, double x) {
  if (k < 0) throw std::invalid_argument("eval_second_kind: negative degree");
  double u0 = 1.0, u1 = 2.0 * x;
  if (k == 0) return u0;
  for (int i = 1; i < k; ++i) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

enum class Kind { first, second };

/// Exact monomial coefficients of T_k or U_k (ascending degree). Computed in
/// arbitrary-precision integers; the double conversion is exact up to 2^53,
/// i.e. through roughly k = 53 for T_k.
inline std::vector<bigint> exact_coefficients(Kind kind, int k) {
  if (k < 0) throw std::invalid_argument("coefficients: negative degree");
  std::vector<bigint> p0{1};                                   // degree 0
  std::vector<bigint> p1 = (kind == Kind::first) ? std::vector<bigint>{0, 1}
                                                 : std::vector<bigint>{0, 2};
  if (k == 0) return p0;
  for (int i = 1; i < k; ++i) {
    std::vector<bigint> p2(p1.size() + 1, 0);
    for (std::size_t j = 0; j < p1.size(); ++j) p2[j + 1] = 2 * p1[j];
    for (std::size_t j = 0; j < p0.size(); ++j) p2[j] -= p0[j];
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

inline Polynomial coefficients(Kind kind, int k) {
  const auto exact = exact_coefficients(kind, k);
  std::vector<double> c(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) c[i] = static_cast<double>(exact[i]);
  return Polynomial(std::move(c));
}

// Half-argument forms. With x = sqrt(z), T_k(x) and U_k(x) are polynomials in
// z after factoring out x^(k mod 2); these evaluate those factors directly so
// everything downstream stays a real rational function of z.
//   half_first(k, z)  = T_k(sqrt z) / (sqrt z)^(k mod 2)
//   half_second(k, z) = U_k(sqrt z) / (sqrt z)^(k mod 2)

inline double half_first(int k, double z) {
  double a0 = 1.0, a1 = 1.0;  // T_0 = 1, T_1(x)/x = 1
  if (k == 0) return a0;
  for (int i = 1; i < k; ++i) {
    const double a2 = (i % 2 == 1) ? 2.0 * z * a1 - a0 : 2.0 * a1 - a0;
    a0 = a1;
    a1 = a2;
  }
  return a1;
}

inline double half_second(int k, double z) {
  double b0 = 1.0, b1 = 2.0;  // U_0 = 1, U_1(x)/x = 2
  if (k == 0) return b0;
  for (int i = 1; i < k; ++i) {
    const double b2 = (i % 2 == 1) ? 2.0 * z * b1 - b0 : 2.0 * b1 - b0;
    b0 = b1;
    b1 = b2;
  }
  return b1;
}

/// Exact coefficient vectors of the half-argument forms, same recurrences.
inline std::vector<bigint> half_coefficients(Kind kind, int k) {
  std::vector<bigint> p0{1};
  std::vector<bigint> p1{kind == Kind::first ? 1 : 2};
  if (k == 0) return p0;
  for (int i = 1; i < k; ++i) {
    std::vector<bigint> p2;
    if (i % 2 == 1) {
      p2.assign(p1.size() + 1, 0);
      for (std::size_t j = 0; j < p1.size(); ++j) p2[j + 1] = 2 * p1[j];
    } else {
      p2.assign(p1.size(), 0);
      for (std::size_t j = 0; j < p1.size(); ++j) p2[j] = 2 * p1[j];
    }
    if (p2.size() < p0.size()) p2.resize(p0.size(), 0);
    for (std::size_t j = 0; j < p0.size(); ++j) p2[j] -= p0[j];
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

}  // namespace gasket::chebyshev
