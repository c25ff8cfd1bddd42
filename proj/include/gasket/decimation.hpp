#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gasket/chebyshev.hpp"
#include "gasket/laplacian.hpp"
#include "gasket/polynomial.hpp"

namespace gasket {

/// R(z) as an explicit ratio of monomial-basis polynomials.
struct RationalMap {
  int N = 1;
  Polynomial num;
  Polynomial den;
  std::vector<double> real_poles;  // sorted, inside (0, 1)

  double operator()(double z) const { return num(z) / den(z); }
};

/// Simple real poles of R: cos^2(m pi / 2N) with m odd for N even and m even
/// (m >= 2) for N odd; none for N = 1.
inline std::vector<double> poles_of_r(int N) {
  std::vector<double> p;
  const int start = (N % 2 == 0) ? 1 : 2;
  for (int m = start; m <= N - 1; m += 2) {
    const double c = std::cos(m * M_PI / (2.0 * N));
    p.push_back(c * c);
  }
  std::sort(p.begin(), p.end());
  return p;
}

namespace detail {

/// q(z) = 2 T_N(1-2z) + 2 U_{N-1}(1-2z) + 1, the degree-N polynomial whose
/// roots form the set A.
inline double q_eval(int N, double z) {
  const double y = 1.0 - 2.0 * z;
  return 2.0 * chebyshev::eval_first_kind(N, y) + 2.0 * chebyshev::eval_second_kind(N - 1, y) +
         1.0;
}

inline void check_pole_distance(int N, double z, const char* who) {
  for (double p : poles_of_r(N))
    if (std::abs(z - p) < 1e-12)
      throw std::invalid_argument(std::string(who) + ": z within 1e-12 of a pole");
}

}  // namespace detail

/// R(z) by the parity-reduced Chebyshev closed form, real for all real z.
inline double r_closed_form(int N, double z) {
  detail::check_pole_distance(N, z, "r_closed_form");
  const double q = detail::q_eval(N, z);
  if (N % 2 == 1) return z * chebyshev::half_first(N, z) * q / chebyshev::half_second(N - 1, z);
  return (z - 1.0) * z * chebyshev::half_second(N - 1, z) * q / chebyshev::half_first(N, z);
}

/// phi(z), the scalar conjugating the Schur complement to Delta_0 - R(z).
inline double phi_closed_form(int N, double z) {
  const double q = detail::q_eval(N, z);
  const double a = chebyshev::half_first(N, z);
  const double b = chebyshev::half_second(N - 1, z);
  const double den = (N % 2 == 1) ? (b - 2.0 * z * a) * q : (a - 2.0 * (z - 1.0) * z * b) * q;
  if (std::abs(den) < 1e-13)
    throw std::invalid_argument("phi_closed_form: z within tolerance of a pole of phi");
  return (N % 2 == 1) ? (3.0 - 2.0 * z) * b / den : (3.0 - 2.0 * z) * a / den;
}

/// Independent derivation of R(z) through the harmonic-extension route: the
/// level-1 circle is cut by the three boundary teeth into three sawtooth
/// pieces of m = N-1 segments; their transfer coefficients l, r feed the
/// three-unknown boundary system whose solution gives R = 1 + (a+z-1)/(b+c).
inline double r_via_pq(int N, double z) {
  if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("r_via_pq: z must lie in (0, 1)");
  if (N == 1) {
    // Degenerate m = 0 pieces: eliminate the three interior midpoints of the
    // level-1 Sierpinski graph directly. With boundary data (1, 0, 0) the two
    // distinct interior values p (adjacent midpoints) and q (opposite) solve
    // a 2x2 system, and R follows from the Schur rows at v1 and v2.
    const double a11 = 4.0 * (1.0 - z) - 1.0, a12 = -1.0;
    const double a21 = -2.0, a22 = 4.0 * (1.0 - z);
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-13) throw std::invalid_argument("r_via_pq: degenerate system");
    const double p = a22 / det;
    const double q = -a21 / det;
    if (std::abs(p + q) < 1e-13) throw std::invalid_argument("r_via_pq: degenerate system");
    return 1.0 - ((1.0 - z) - p) / (p + q);
  }
  const int m = N - 1;
  const double th = std::acos(1.0 - 2.0 * z);
  const double sh = std::sin(0.5 * m * th);
  const double ch = std::cos(0.5 * m * th);
  if (std::abs(sh) < 1e-12 || std::abs(ch) < 1e-12)
    throw std::invalid_argument("r_via_pq: excluded value of z");
  auto f1 = [&](int k) { return -std::sin((k - 0.5 * m) * th) / sh; };
  auto f2 = [&](int k) { return std::cos((k - 0.5 * m) * th) / ch; };
  // Neighbor sum seen by a circle endpoint: the next base vertex plus the
  // tooth hanging over the first segment.
  auto nb = [&](auto f) { return f(1) + (f(0) + f(1)) / (2.0 * (1.0 - z)); };
  const double P = nb(f1), Q = nb(f2);
  const double l = 0.5 * (Q - P), r = 0.5 * (P + Q);
  const double bc = -l * (-5.0 + l + r + 4.0 * z) /
                    ((l + r + 4.0 * z - 3.0) *
                     ((l - 1.0) * l - (r + 4.0 * z - 5.0) * (r + 4.0 * z - 3.0)));
  const double abc = 1.0 / (3.0 - 4.0 * z - r - l);
  const double a = abc - bc;
  if (std::abs(bc) < 1e-13) throw std::invalid_argument("r_via_pq: degenerate denominator");
  return 1.0 + (a + z - 1.0) / bc;
}

namespace detail {

using bigvec = std::vector<chebyshev::bigint>;

inline bigvec bigmul(const bigvec& a, const bigvec& b) {
  bigvec c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Exact coefficients of q(z): compose 2 T_N + 2 U_{N-1} with 1 - 2z, add 1.
inline bigvec q_exact(int N) {
  bigvec s = chebyshev::exact_coefficients(chebyshev::Kind::first, N);
  const bigvec u = chebyshev::exact_coefficients(chebyshev::Kind::second, N - 1);
  for (auto& v : s) v *= 2;
  for (std::size_t i = 0; i < u.size(); ++i) s[i] += 2 * u[i];
  // Horner composition with x = 1 - 2z.
  const bigvec sub{1, -2};
  bigvec out{0};
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    out = bigmul(out, sub);
    out[0] += *it;
  }
  out[0] += 1;
  return out;
}

inline Polynomial to_double_poly(const bigvec& v) {
  std::vector<double> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = static_cast<double>(v[i]);
  return Polynomial(std::move(c));
}

}  // namespace detail

/// Exact numerator/denominator of R for N <= 32 (integer coefficient regime).
inline RationalMap r_as_rational(int N) {
  if (N < 1 || N > 32)
    throw std::invalid_argument("r_as_rational: exact coefficients require 1 <= N <= 32");
  using detail::bigmul;
  detail::bigvec num, den;
  const auto q = detail::q_exact(N);
  if (N % 2 == 1) {
    num = bigmul(chebyshev::half_coefficients(chebyshev::Kind::first, N), q);
    num.insert(num.begin(), 0);  // times z
    den = chebyshev::half_coefficients(chebyshev::Kind::second, N - 1);
  } else {
    num = bigmul(chebyshev::half_coefficients(chebyshev::Kind::second, N - 1), q);
    num = bigmul(num, detail::bigvec{0, -1, 1});  // times (z-1)z
    den = chebyshev::half_coefficients(chebyshev::Kind::first, N);
  }
  // Strip the common integer content so small-N maps are in lowest terms.
  chebyshev::bigint g = 0;
  for (const auto& v : num) g = boost::multiprecision::gcd(g, v);
  for (const auto& v : den) g = boost::multiprecision::gcd(g, v);
  if (g > 1) {
    for (auto& v : num) v /= g;
    for (auto& v : den) v /= g;
  }
  RationalMap map;
  map.N = N;
  map.num = detail::to_double_poly(num);
  map.den = detail::to_double_poly(den);
  map.real_poles = poles_of_r(N);
  return map;
}

/// Roots of q(z); exactly N of them, all real.
inline std::vector<double> set_A(int N) {
  const auto roots = real_roots_in(detail::to_double_poly(detail::q_exact(N)), -1.0, 2.0);
  if (static_cast<int>(roots.size()) != N)
    throw std::runtime_error("set_A: expected exactly N real roots");
  return roots;
}

/// Roots of the parity-reduced set-B polynomial in [0, 3/2]; floor(N/2)+1 of
/// them.
inline std::vector<double> set_B(int N) {
  using chebyshev::Kind;
  const Polynomial t = detail::to_double_poly(chebyshev::half_coefficients(Kind::first, N));
  const Polynomial u = detail::to_double_poly(chebyshev::half_coefficients(Kind::second, N - 1));
  Polynomial f;
  if (N % 2 == 1) {
    f = u - Polynomial({0.0, 2.0}) * t;  // U_{N-1}(sqrt z) - 2 sqrt z T_N(sqrt z)
  } else {
    f = t - Polynomial({0.0, -2.0, 2.0}) * u;  // T_N(sqrt z) - 2(z-1) sqrt z U_{N-1}(sqrt z)
  }
  auto roots = real_roots_in(f, 0.0, 1.5);
  if (static_cast<int>(roots.size()) != N / 2 + 1)
    throw std::runtime_error("set_B: unexpected root count");
  return roots;
}

/// sigma(Delta_1) in closed form: sin^2(j pi / 3N) plus 3/2 with
/// multiplicity 3N.
inline std::vector<SpectralAtom> sigma_level1(int N) {
  std::vector<double> vals;
  for (int j = 0; j < 3 * N; ++j) {
    const double s = std::sin(j * M_PI / (3.0 * N));
    vals.push_back(s * s);
  }
  auto atoms = cluster(std::move(vals), 1e-12);
  atoms.push_back({1.5, 3LL * N});
  std::sort(atoms.begin(), atoms.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) { return a.value < b.value; });
  return atoms;
}

/// E(Delta_0, Delta) = {3/2} union A union B union the cos^2 pole family.
inline std::vector<double> exceptional_set(int N) {
  std::vector<double> e{1.5};
  for (double v : set_A(N)) e.push_back(v);
  for (double v : set_B(N)) e.push_back(v);
  for (int m = 1; m <= N - 1; ++m) {
    const double c = std::cos(m * M_PI / (2.0 * N));
    e.push_back(c * c);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-12; }),
          e.end());
  return e;
}

enum class SawtoothKind { antisymmetric, symmetric };

/// Eigenfunction of the sawtooth graph (path v_0..v_m with a tooth u_k over
/// each edge v_{k-1} v_k) at eigenvalue z, free at the two path endpoints.
struct SawtoothEigenfunction {
  int m = 1;
  double z = 0.0;
  SawtoothKind kind = SawtoothKind::antisymmetric;
  std::vector<double> base;   // f(v_0) .. f(v_m)
  std::vector<double> tooth;  // f(u_1) .. f(u_m)
};

inline SawtoothEigenfunction sawtooth_eigenfunction(int m, double z, SawtoothKind kind) {
  if (m < 1) throw std::invalid_argument("sawtooth_eigenfunction: m >= 1 required");
  if (!(z > 0.0 && z < 1.0))
    throw std::invalid_argument("sawtooth_eigenfunction: z must lie in (0, 1)");
  const double th = std::acos(1.0 - 2.0 * z);
  SawtoothEigenfunction f;
  f.m = m;
  f.z = z;
  f.kind = kind;
  if (kind == SawtoothKind::antisymmetric) {
    const double s = std::sin(0.5 * m * th);
    if (std::abs(s) < 1e-12)
      throw std::invalid_argument("sawtooth_eigenfunction: excluded value of z");
    for (int k = 0; k <= m; ++k) f.base.push_back(-std::sin((k - 0.5 * m) * th) / s);
  } else {
    const double c = std::cos(0.5 * m * th);
    if (std::abs(c) < 1e-12)
      throw std::invalid_argument("sawtooth_eigenfunction: excluded value of z");
    for (int k = 0; k <= m; ++k) f.base.push_back(std::cos((k - 0.5 * m) * th) / c);
  }
  for (int k = 1; k <= m; ++k)
    f.tooth.push_back((f.base[k - 1] + f.base[k]) / (2.0 * (1.0 - z)));
  return f;
}

/// Residual of the eigenvector equation at every vertex except the two path
/// endpoints (degree-2 teeth and degree-4 interior base vertices).
inline double sawtooth_residual(const SawtoothEigenfunction& f) {
  double res = 0.0;
  for (int k = 1; k <= f.m; ++k)
    res = std::max(res, std::abs(f.tooth[k - 1] - 0.5 * (f.base[k - 1] + f.base[k]) -
                                 f.z * f.tooth[k - 1]));
  for (int k = 1; k < f.m; ++k)
    res = std::max(res, std::abs(f.base[k] -
                                 0.25 * (f.base[k - 1] + f.base[k + 1] + f.tooth[k - 1] +
                                         f.tooth[k]) -
                                 f.z * f.base[k]));
  return res;
}

/// Residual of the decimated equation on the base path at eigenvalue 2z,
/// i.e. of R_sawtooth(z) = 2z.
inline double sawtooth_base_residual(const SawtoothEigenfunction& f) {
  double res = 0.0;
  for (int k = 1; k < f.m; ++k)
    res = std::max(res, std::abs(f.base[k] - 0.5 * (f.base[k - 1] + f.base[k + 1]) -
                                 2.0 * f.z * f.base[k]));
  return res;
}

}  // namespace gasket
