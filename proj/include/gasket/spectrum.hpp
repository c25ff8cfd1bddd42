#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "gasket/decimation.hpp"
#include "gasket/gasket_graph.hpp"
#include "gasket/laplacian.hpp"

namespace gasket {

/// Level-n spectrum assembled from the closed-form multiplicity rules.
struct Spectrum {
  int N = 1;
  int level = 0;
  std::int64_t dim = 0;
  std::vector<SpectralAtom> atoms;  // sorted by value, multiplicities > 0
};

/// All preimages of lambda under R inside [0, 3/2].
inline std::vector<double> preimages(const RationalMap& map, double lambda) {
  if (!(lambda >= -1e-12 && lambda <= 1.5 + 1e-12))
    throw std::invalid_argument("preimages: lambda outside [0, 3/2]");
  Polynomial p = map.num - lambda * map.den;
  auto roots = real_roots_in(p, 0.0, 1.5);
  for (double w : roots) {
    const double scale = std::max({1.0, std::abs(map.num(w)), std::abs(lambda * map.den(w))});
    if (std::abs(map.num(w) - lambda * map.den(w)) > 1e-9 * scale)
      throw std::runtime_error("preimages: root verification failed");
  }
  return roots;
}

/// End of the principal branch of R: its first positive critical point
/// (ternary search on [0, first pole)). R is strictly increasing up to it.
inline double branch_endpoint(int N) {
  const auto poles = poles_of_r(N);
  double hi = poles.empty() ? 1.5
                            : poles.front() - std::max(poles.front() * 1e-9, 2e-12);
  double lo = 0.0;
  for (int it = 0; it < 300; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (r_closed_form(N, m1) < r_closed_form(N, m2))
      lo = m1;
    else
      hi = m2;
  }
  return 0.5 * (lo + hi);
}

/// The inverse branch R~ with R~(0) = 0: unique solution of R(w) = lambda on
/// the principal branch.
inline double inverse_branch_zero(int N, double lambda, double branch_end) {
  if (lambda == 0.0) return 0.0;
  if (!(lambda > 0.0 && lambda <= r_closed_form(N, branch_end)))
    throw std::invalid_argument("inverse_branch_zero: lambda outside the branch range");
  return bisect([&](double w) { return r_closed_form(N, w) - lambda; }, 0.0, branch_end);
}

inline double inverse_branch_zero(int N, double lambda) {
  return inverse_branch_zero(N, lambda, branch_endpoint(N));
}

namespace detail {

inline long long ipow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Ordered atom accumulator keyed by value within an absolute tolerance.
struct AtomMap {
  std::map<double, long long> m;
  void add(double v, long long mult) {
    if (mult <= 0) return;
    auto it = m.lower_bound(v - 1e-9);
    if (it != m.end() && std::abs(it->first - v) < 1e-9) {
      it->second += mult;
    } else {
      m.emplace(v, mult);
    }
  }
};

}  // namespace detail

/// sigma(Delta_n) with multiplicities from the decimation rules; the total
/// multiplicity is checked against the vertex count and any mismatch is a
/// hard error.
inline Spectrum finite_spectrum(int N, int n) {
  if (n < 0) throw std::invalid_argument("finite_spectrum: level must be nonnegative");
  const int M = 3 * N;
  const RationalMap map = r_as_rational(N);
  detail::AtomMap atoms;
  atoms.add(0.0, 1);
  atoms.add(1.5, (M + (M - 2) * detail::ipow(M, n)) / (M - 1));
  if (n >= 1) {
    // Circle eigenvalues sin^2(k pi / 3N), grouped by coincident value; the
    // group {k, 3N-k} collapses except at k = 3N/2.
    std::map<long long, std::vector<int>> groups;
    for (int k = 1; k < M; ++k) {
      const double s = std::sin(k * M_PI / M);
      groups[std::llround(s * s * 1e12)].push_back(k);
    }
    for (const auto& [key, ks] : groups) {
      const double s = std::sin(ks.front() * M_PI / M);
      const double v = s * s;
      const bool div3 = ks.front() % 3 == 0;
      const long long mult_d = static_cast<long long>(ks.size()) - 1;
      std::vector<double> tree{v};
      for (int depth = 0; depth < n; ++depth) {
        const long long mult =
            div3 ? detail::ipow(M, n - depth - 1) * mult_d + 1
                 : (M + (M - 2) * detail::ipow(M, n - depth - 1)) / (M - 1);
        for (double w : tree) atoms.add(w, mult);
        if (depth < n - 1) {
          std::vector<double> next;
          for (double w : tree)
            for (double u : preimages(map, w)) next.push_back(u);
          tree = std::move(next);
        }
      }
    }
    for (double a : set_A(N)) {
      std::vector<double> tree{a};
      for (int depth = 0; depth < n; ++depth) {
        const long long mult = (detail::ipow(M, n - depth - 1) - 1) / (M - 1);
        for (double w : tree) atoms.add(w, mult);
        if (depth < n - 1) {
          std::vector<double> next;
          for (double w : tree)
            for (double u : preimages(map, w)) next.push_back(u);
          tree = std::move(next);
        }
      }
    }
  }
  Spectrum s;
  s.N = N;
  s.level = n;
  s.dim = vertex_count(N, n);
  long long total = 0;
  for (const auto& [v, mult] : atoms.m) {
    s.atoms.push_back({v, mult});
    total += mult;
  }
  if (total != s.dim)
    throw std::runtime_error("finite_spectrum: multiplicity sum does not match dimension");
  return s;
}

/// lim_k c^k R~^k(z): the renormalized decimation limit of a seed value.
inline double decimation_limit(int N, double z, int iters = 80) {
  if (z == 0.0) return 0.0;
  const double c = 3.0 * N + 2.0 * N * N;
  const double zc = branch_endpoint(N);
  double w = z;
  double prev = 0.0;
  double scale = 1.0;
  bool have_prev = false;
  for (int k = 1; k <= iters; ++k) {
    w = inverse_branch_zero(N, w, zc);
    scale *= c;
    const double lam = scale * w;
    if (have_prev && std::abs(lam - prev) < 1e-13 * std::abs(lam)) return lam;
    prev = lam;
    have_prev = true;
  }
  // c R~ is a contraction near 0, so failure to settle means bad input.
  throw std::runtime_error("decimation_limit: renormalized sequence did not converge");
}

/// Smallest fractal Laplacian eigenvalues, repeated per multiplicity. Every
/// seed z in sigma(Delta_m) yields c^m * decimation_limit(z); values already
/// produced at an earlier level (the 0-branch duplicates) are skipped.
inline std::vector<double> fractal_eigenvalues(int N, int count, int iters = 80,
                                               int max_level = 12) {
  if (count < 1) throw std::invalid_argument("fractal_eigenvalues: count must be positive");
  const double c = 3.0 * N + 2.0 * N * N;
  std::vector<std::pair<double, long long>> cand;  // (lambda, mult)
  // Lower bound for any genuinely new value entering at the next level.
  double zmin_new = std::min(branch_endpoint(N), std::pow(std::sin(M_PI / (3.0 * N)), 2));
  for (double a : set_A(N)) zmin_new = std::min(zmin_new, a);
  const double lmin_new = decimation_limit(N, zmin_new, iters);
  double cpow = 1.0;
  for (int m = 0; m <= max_level; ++m) {
    const Spectrum fs = finite_spectrum(N, m);
    for (const auto& atom : fs.atoms) {
      const double lam = (atom.value == 0.0) ? 0.0 : cpow * decimation_limit(N, atom.value, iters);
      bool dup = false;
      for (auto& [l, mult] : cand) {
        if (std::abs(lam - l) <= 1e-6 * std::max(1.0, l)) {
          if (mult != atom.mult)
            throw std::runtime_error("fractal_eigenvalues: inconsistent duplicate multiplicity");
          dup = true;
          break;
        }
      }
      if (!dup) cand.emplace_back(lam, atom.mult);
    }
    std::sort(cand.begin(), cand.end());
    long long run = 0;
    double kth = -1.0;
    for (const auto& [l, mult] : cand) {
      run += mult;
      if (run >= count) {
        kth = l;
        break;
      }
    }
    if (kth >= 0.0 && cpow * c * lmin_new > kth) break;
    cpow *= c;
  }
  std::vector<double> out;
  for (const auto& [l, mult] : cand) {
    for (long long i = 0; i < mult && static_cast<int>(out.size()) < count; ++i) out.push_back(l);
    if (static_cast<int>(out.size()) >= count) break;
  }
  if (static_cast<int>(out.size()) < count)
    throw std::runtime_error("fractal_eigenvalues: level cap reached before count was filled");
  return out;
}

/// Consecutive ratios lambda_{k+1}/lambda_k over the positive entries.
inline std::pair<std::vector<double>, double> gap_ratios(const std::vector<double>& eigs) {
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < eigs.size(); ++i)
    if (eigs[i] > 0.0) ratios.push_back(eigs[i + 1] / eigs[i]);
  if (ratios.empty()) throw std::invalid_argument("gap_ratios: need at least two positive values");
  double mx = ratios.front();
  for (double r : ratios) mx = std::max(mx, r);
  return {std::move(ratios), mx};
}

/// Truncated density of states: atom weights of the limiting measure kappa
/// down to preimage depth `depth`, plus the truncated total mass.
struct DosReport {
  std::vector<std::pair<double, double>> atoms;  // (value, weight), sorted
  double total_mass = 0.0;
};

inline DosReport dos_atoms(int N, int depth) {
  if (depth < 0 || depth > 6) throw std::invalid_argument("dos_atoms: depth must be in [0, 6]");
  const int M = 3 * N;
  const RationalMap map = r_as_rational(N);
  std::map<double, double> acc;
  auto add = [&](double v, double w) {
    if (w <= 0.0) return;
    auto it = acc.lower_bound(v - 1e-9);
    if (it != acc.end() && std::abs(it->first - v) < 1e-9)
      it->second += w;
    else
      acc.emplace(v, w);
  };
  add(1.5, (3.0 * N - 2.0) / (6.0 * N - 3.0));
  std::map<long long, std::vector<int>> groups;
  for (int k = 1; k < M; ++k) {
    const double s = std::sin(k * M_PI / M);
    groups[std::llround(s * s * 1e12)].push_back(k);
  }
  for (const auto& [key, ks] : groups) {
    const double s = std::sin(ks.front() * M_PI / M);
    const bool div3 = ks.front() % 3 == 0;
    const double per_level = div3 ? (static_cast<double>(ks.size()) - 1.0) * (3.0 * N - 1.0) /
                                        (6.0 * N - 3.0)
                                  : (3.0 * N - 2.0) / (6.0 * N - 3.0);
    std::vector<double> tree{s * s};
    for (int m = 0; m <= depth; ++m) {
      for (double w : tree) add(w, per_level * std::pow(3.0 * N, -m - 1));
      if (m < depth) {
        std::vector<double> next;
        for (double w : tree)
          for (double u : preimages(map, w)) next.push_back(u);
        tree = std::move(next);
      }
    }
  }
  for (double a : set_A(N)) {
    std::vector<double> tree{a};
    for (int m = 0; m <= depth; ++m) {
      for (double w : tree) add(w, std::pow(3.0 * N, -m - 1) / (6.0 * N - 3.0));
      if (m < depth) {
        std::vector<double> next;
        for (double w : tree)
          for (double u : preimages(map, w)) next.push_back(u);
        tree = std::move(next);
      }
    }
  }
  DosReport rep;
  for (const auto& [v, w] : acc) {
    rep.atoms.emplace_back(v, w);
    rep.total_mass += w;
  }
  return rep;
}

/// lambda_k for large N against the limit (2/9) pi^2 k^2.
struct LimitCheck {
  double lambda = 0.0;
  double target = 0.0;
  double rel_dev = 0.0;
};

inline LimitCheck large_n_limit_check(int N, int k) {
  if (k < 1 || 10 * k > N)
    throw std::invalid_argument("large_n_limit_check: need 1 <= k and 10k <= N");
  const double c = 3.0 * N + 2.0 * N * N;
  const double seed = std::pow(std::sin(k * M_PI / (3.0 * N)), 2);
  LimitCheck lc;
  lc.lambda = c * decimation_limit(N, seed);
  lc.target = (2.0 / 9.0) * M_PI * M_PI * k * k;
  lc.rel_dev = std::abs(lc.lambda / lc.target - 1.0);
  return lc;
}

}  // namespace gasket
