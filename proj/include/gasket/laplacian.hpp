#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gasket/gasket_graph.hpp"

namespace gasket {

/// Probabilistic Laplacian of a level graph with its boundary bookkeeping.
struct LaplacianMatrix {
  int N = 1;
  int level = 0;
  Eigen::MatrixXd L;               // I - D^{-1} A, row sums zero
  Eigen::VectorXd degrees;
  std::array<int, 3> boundary{0, 1, 2};
};

/// One clustered eigenvalue with its multiplicity.
struct SpectralAtom {
  double value = 0.0;
  long long mult = 0;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;   // sorted ascending, with repetition
  std::vector<SpectralAtom> atoms;   // clustered within tolerance
};

inline LaplacianMatrix laplacian(const LevelGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices);
  LaplacianMatrix M;
  M.N = g.N;
  M.level = g.level;
  M.boundary = g.boundary;
  M.L = Eigen::MatrixXd::Identity(n, n);
  M.degrees = Eigen::VectorXd::Zero(n);
  for (auto [u, v] : g.edges) {
    M.degrees[u] += 1.0;
    M.degrees[v] += 1.0;
  }
  for (auto [u, v] : g.edges) {
    M.L(u, v) = -1.0 / M.degrees[u];
    M.L(v, u) = -1.0 / M.degrees[v];
  }
  return M;
}

inline std::vector<SpectralAtom> cluster(std::vector<double> vals, double tol) {
  std::sort(vals.begin(), vals.end());
  std::vector<SpectralAtom> atoms;
  for (double v : vals) {
    if (!atoms.empty() && std::abs(v - atoms.back().value) < tol) {
      auto& a = atoms.back();
      a.value = (a.value * a.mult + v) / (a.mult + 1);  // running mean
      ++a.mult;
    } else {
      atoms.push_back({v, 1});
    }
  }
  return atoms;
}

namespace detail {

/// Eigenvalues of I - D^{-1/2} A D^{-1/2} built from a Laplacian-shaped
/// matrix; similar to I - D^{-1} A, so the spectra coincide.
inline std::vector<double> symmetrized_eigenvalues(const Eigen::MatrixXd& L,
                                                   const Eigen::VectorXd& degrees) {
  const Eigen::Index n = L.rows();
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      S(i, j) = (i == j) ? L(i, j)
                         : L(i, j) * std::sqrt(degrees[i] / degrees[j]);
  S = 0.5 * (S + S.transpose().eval());  // kill rounding asymmetry
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_spectrum: eigensolver failed");
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

}  // namespace detail

/// Brute-force oracle: every eigenvalue of the level-n Laplacian.
inline SpectrumReport dense_spectrum(const LaplacianMatrix& M, double cluster_tol = 1e-7) {
  if (M.L.rows() > 20000)
    throw std::invalid_argument("dense_spectrum: dimension guard exceeded");
  SpectrumReport r;
  r.eigenvalues = detail::symmetrized_eigenvalues(M.L, M.degrees);
  r.atoms = cluster(r.eigenvalues, cluster_tol);
  return r;
}

/// Dirichlet block D of the level-1 Laplacian (interior rows and columns)
/// and its spectrum.
inline std::pair<Eigen::MatrixXd, SpectrumReport> dirichlet_block(const LaplacianMatrix& M,
                                                                  double cluster_tol = 1e-7) {
  if (M.level != 1) throw std::invalid_argument("dirichlet_block: level-1 Laplacian required");
  const Eigen::Index n = M.L.rows();
  std::vector<Eigen::Index> interior;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i != M.boundary[0] && i != M.boundary[1] && i != M.boundary[2])
      interior.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd D(m, m);
  Eigen::VectorXd deg(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    deg[i] = M.degrees[interior[i]];
    for (Eigen::Index j = 0; j < m; ++j) D(i, j) = M.L(interior[i], interior[j]);
  }
  SpectrumReport r;
  r.eigenvalues = detail::symmetrized_eigenvalues(D, deg);
  r.atoms = cluster(r.eigenvalues, cluster_tol);
  return {std::move(D), std::move(r)};
}

/// Schur complement S(z) = (A - z) - B (D - z)^{-1} C of Delta_1 - z with
/// respect to the boundary/interior block split.
inline Eigen::Matrix3d schur_complement(const LaplacianMatrix& M, double z) {
  if (M.level != 1) throw std::invalid_argument("schur_complement: level-1 Laplacian required");
  auto [D, sd] = dirichlet_block(M);
  for (double ev : sd.eigenvalues)
    if (std::abs(ev - z) < 1e-9)
      throw std::invalid_argument("schur_complement: z within 1e-9 of sigma(D)");

  const Eigen::Index n = M.L.rows();
  std::vector<Eigen::Index> interior;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != M.boundary[0] && i != M.boundary[1] && i != M.boundary[2]) interior.push_back(i);
  const auto m = static_cast<Eigen::Index>(interior.size());

  Eigen::Matrix3d A;
  Eigen::MatrixXd B(3, m), C(m, 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) A(a, b) = M.L(M.boundary[a], M.boundary[b]);
    for (Eigen::Index j = 0; j < m; ++j) {
      B(a, j) = M.L(M.boundary[a], interior[j]);
      C(j, a) = M.L(interior[j], M.boundary[a]);
    }
  }
  const Eigen::MatrixXd Dz = D - z * Eigen::MatrixXd::Identity(m, m);
  return (A - z * Eigen::Matrix3d::Identity()) - B * Dz.partialPivLu().solve(C);
}

/// Normalized counting measure of the level-n spectrum: each atom weighted by
/// multiplicity / dimension.
inline std::vector<std::pair<double, double>> empirical_dos(const LaplacianMatrix& M,
                                                            double cluster_tol = 1e-7) {
  const auto r = dense_spectrum(M, cluster_tol);
  const double dim = static_cast<double>(M.L.rows());
  std::vector<std::pair<double, double>> out;
  out.reserve(r.atoms.size());
  for (const auto& a : r.atoms) out.emplace_back(a.value, static_cast<double>(a.mult) / dim);
  return out;
}

}  // namespace gasket
