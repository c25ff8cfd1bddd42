// Command-line frontend: constructs gasket graphs, computes level and
// fractal spectra, and cross-validates the decimation engine against the
// dense eigensolver oracle. All output is deterministic for a fixed
// configuration. Exit codes: 0 success, 1 validation mismatch, 2 usage error.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gasket/spectrum.hpp"

using json = nlohmann::ordered_json;
using namespace gasket;

namespace {

json atoms_to_json(const std::vector<SpectralAtom>& atoms) {
  json arr = json::array();
  for (const auto& a : atoms) arr.push_back({{"value", a.value}, {"mult", a.mult}});
  return arr;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_graph(int N, int level, const std::string& format) {
  const auto g = build(N, level);
  if (format == "edgelist") {
    std::cout << "# N=" << N << " level=" << level << " vertices=" << g.num_vertices
              << " boundary=" << g.boundary[0] << "," << g.boundary[1] << ","
              << g.boundary[2] << "\n";
    for (auto [u, v] : g.edges) std::cout << u << " " << v << "\n";
  } else {
    json j{{"N", N},
           {"level", level},
           {"num_vertices", g.num_vertices},
           {"boundary", {g.boundary[0], g.boundary[1], g.boundary[2]}}};
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    print_json(j);
  }
  return 0;
}

int cmd_spectrum(int N, int level, const std::string& method, const std::string& out) {
  std::vector<SpectralAtom> atoms;
  std::int64_t dim = 0;
  if (method == "oracle") {
    const auto rep = dense_spectrum(laplacian(build(N, level)));
    atoms = rep.atoms;
    dim = static_cast<std::int64_t>(rep.eigenvalues.size());
  } else {
    const auto s = finite_spectrum(N, level);
    atoms = s.atoms;
    dim = s.dim;
  }
  if (out == "csv") {
    std::cout << "value,mult\n";
    for (const auto& a : atoms)
      std::cout << std::setprecision(17) << a.value << "," << a.mult << "\n";
  } else {
    print_json({{"N", N}, {"level", level}, {"dim", dim}, {"atoms", atoms_to_json(atoms)}});
  }
  return 0;
}

int cmd_rmap(int N, bool want_eval, double z, bool coeffs, bool poles, bool sets) {
  json j{{"N", N}};
  if (want_eval) {
    j["z"] = z;
    j["R"] = r_closed_form(N, z);
    j["phi"] = phi_closed_form(N, z);
  }
  if (coeffs) {
    const auto rm = r_as_rational(N);
    j["numerator"] = rm.num.coeffs;
    j["denominator"] = rm.den.coeffs;
  }
  if (poles || (!want_eval && !coeffs && !sets)) j["poles"] = poles_of_r(N);
  if (sets) {
    j["A"] = set_A(N);
    j["B"] = set_B(N);
    j["exceptional"] = exceptional_set(N);
  }
  print_json(j);
  return 0;
}

int cmd_fractal_eigs(int N, int count, int iters, const std::string& out) {
  const auto eigs = fractal_eigenvalues(N, count, iters);
  // collapse the multiplicity-expanded list back into distinct atoms
  std::vector<std::pair<double, long long>> distinct;
  for (double l : eigs) {
    if (!distinct.empty() && std::abs(l - distinct.back().first) <= 1e-9 * std::max(1.0, l))
      ++distinct.back().second;
    else
      distinct.emplace_back(l, 1);
  }
  if (out == "csv") {
    std::cout << "k,lambda_k,mult\n";
    long long k = 0;
    for (const auto& [l, m] : distinct) {
      std::cout << k << "," << std::setprecision(17) << l << "," << m << "\n";
      k += m;
    }
  } else {
    json arr = json::array();
    long long k = 0;
    for (const auto& [l, m] : distinct) {
      arr.push_back({{"k", k}, {"lambda", l}, {"mult", m}});
      k += m;
    }
    print_json({{"N", N}, {"count", count}, {"eigenvalues", arr}});
  }
  return 0;
}

int cmd_dos(int N, int depth) {
  const auto rep = dos_atoms(N, depth);
  json arr = json::array();
  for (const auto& [v, w] : rep.atoms) arr.push_back({{"value", v}, {"weight", w}});
  print_json({{"N", N}, {"depth", depth}, {"atoms", arr}, {"total_mass", rep.total_mass}});
  return 0;
}

int cmd_gaps(int N, int count) {
  const auto eigs = fractal_eigenvalues(N, count);
  const auto [ratios, mx] = gap_ratios(eigs);
  print_json({{"N", N}, {"count", count}, {"max_ratio", mx}, {"ratios", ratios}});
  return 0;
}

int cmd_metric(int N) {
  const auto p = params(N);
  const auto g1 = build(N, 1);
  print_json({{"N", N},
              {"c", p.c},
              {"rho", p.rho},
              {"alpha", p.alpha},
              {"d_H", p.d_H},
              {"d_w", p.d_w},
              {"d_s", p.d_s},
              {"diam_V1", diameter(g1)}});
  return 0;
}

int cmd_validate(int max_N, int max_level, double tol) {
  int mismatches = 0;
  for (int N = 1; N <= max_N; ++N) {
    for (int n = 0; n <= max_level; ++n) {
      const auto fs = finite_spectrum(N, n);
      const auto oracle = dense_spectrum(laplacian(build(N, n))).atoms;
      bool ok = fs.atoms.size() == oracle.size();
      if (ok) {
        for (std::size_t i = 0; i < fs.atoms.size(); ++i)
          ok = ok && std::abs(fs.atoms[i].value - oracle[i].value) <= tol &&
               fs.atoms[i].mult == oracle[i].mult;
      }
      std::printf("validate N=%d level=%d: %s\n", N, n, ok ? "ok" : "MISMATCH");
      if (!ok) ++mismatches;
    }
  }
  // level-1 closed form and Dirichlet census ride along for free
  for (int N = 1; N <= max_N; ++N) {
    const auto closed = sigma_level1(N);
    const auto oracle = dense_spectrum(laplacian(build(N, 1))).atoms;
    bool ok = closed.size() == oracle.size();
    if (ok)
      for (std::size_t i = 0; i < closed.size(); ++i)
        ok = ok && std::abs(closed[i].value - oracle[i].value) <= tol &&
             closed[i].mult == oracle[i].mult;
    std::printf("validate sigma(Delta_1) N=%d: %s\n", N, ok ? "ok" : "MISMATCH");
    if (!ok) ++mismatches;
  }
  if (mismatches > 0) {
    std::printf("validate: %d mismatch(es)\n", mismatches);
    return 1;
  }
  std::printf("validate: all checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3N-gasket spectral decimation toolkit"};
  app.require_subcommand(1);

  int N = 1, level = 0, count = 50, iters = 80, depth = 3, max_N = 3, max_level = 3;
  double z = 0.0, tol = 1e-8;
  std::string format = "edgelist", method = "decimation", out = "json";
  bool coeffs = false, poles = false, sets = false;

  auto* graph = app.add_subcommand("graph", "emit the level-n graph");
  graph->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  graph->add_option("--level", level)->required()->check(CLI::NonNegativeNumber);
  graph->add_option("--format", format)->check(CLI::IsMember({"edgelist", "json"}));

  auto* spectrum = app.add_subcommand("spectrum", "level-n Laplacian spectrum");
  spectrum->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--level", level)->required()->check(CLI::NonNegativeNumber);
  spectrum->add_option("--method", method)->check(CLI::IsMember({"oracle", "decimation"}));
  spectrum->add_option("--out", out)->check(CLI::IsMember({"json", "csv"}));

  auto* rmap = app.add_subcommand("rmap", "the rational map R and its root sets");
  rmap->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  auto* eval_opt = rmap->add_option("--eval", z, "evaluate R and phi at z");
  rmap->add_flag("--coeffs", coeffs);
  rmap->add_flag("--poles", poles);
  rmap->add_flag("--sets", sets);

  auto* feigs = app.add_subcommand("fractal-eigs", "fractal Laplacian eigenvalues");
  feigs->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  feigs->add_option("--count", count)->check(CLI::PositiveNumber);
  feigs->add_option("--iters", iters)->check(CLI::PositiveNumber);
  feigs->add_option("--out", out)->check(CLI::IsMember({"json", "csv"}));

  auto* dos = app.add_subcommand("dos", "density-of-states atoms");
  dos->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  dos->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

  auto* gaps = app.add_subcommand("gaps", "consecutive eigenvalue ratios");
  gaps->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  gaps->add_option("--count", count)->check(CLI::PositiveNumber);

  auto* metric = app.add_subcommand("metric", "dimension constants and diameter");
  metric->add_option("--N", N)->required()->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "decimation vs oracle sweep");
  validate->add_option("--max-N", max_N)->check(CLI::PositiveNumber);
  validate->add_option("--max-level", max_level)->check(CLI::NonNegativeNumber);
  validate->add_option("--tol", tol)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (graph->parsed()) return cmd_graph(N, level, format);
    if (spectrum->parsed()) return cmd_spectrum(N, level, method, out);
    if (rmap->parsed()) return cmd_rmap(N, eval_opt->count() > 0, z, coeffs, poles, sets);
    if (feigs->parsed()) return cmd_fractal_eigs(N, count, iters, out);
    if (dos->parsed()) return cmd_dos(N, depth);
    if (gaps->parsed()) return cmd_gaps(N, count);
    if (metric->parsed()) return cmd_metric(N);
    if (validate->parsed()) return cmd_validate(max_N, max_level, tol);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
