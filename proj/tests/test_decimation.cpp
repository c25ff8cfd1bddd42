#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gasket/decimation.hpp"
#include "gasket/laplacian.hpp"

using namespace gasket;

TEST_CASE("R closed form at N = 1 is z(5-4z)") {
  for (double z : {0.0, 0.1, 0.37, 0.75, 1.2}) {
    CHECK_THAT(r_closed_form(1, z), Catch::Matchers::WithinAbs(z * (5 - 4 * z), 1e-12));
  }
  CHECK_THAT(r_closed_form(1, 0.1), Catch::Matchers::WithinAbs(0.46, 1e-12));
}

TEST_CASE("R fixes 0 for every N") {
  for (int N = 1; N <= 8; ++N) CHECK_THAT(r_closed_form(N, 0.0), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("phi closed form") {
  CHECK_THAT(phi_closed_form(1, 1.5), Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(phi_closed_form(1, 0.1),
             Catch::Matchers::WithinAbs(2.8 / (0.8 * 4.6), 1e-12));
  for (int N = 2; N <= 6; ++N)
    CHECK_THAT(phi_closed_form(N, 1.5), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("dual derivation: r_via_pq agrees with the closed form") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  for (int N = 1; N <= 6; ++N) {
    int done = 0;
    while (done < 200) {
      const double z = unif(rng);
      double rc, rp;
      try {
        rc = r_closed_form(N, z);
        rp = r_via_pq(N, z);
      } catch (const std::invalid_argument&) {
        continue;  // excluded value or pole proximity
      }
      if (std::abs(rc) < 1e-8) continue;
      CAPTURE(N, z);
      CHECK(std::abs(rp - rc) / std::abs(rc) < 1e-9);
      ++done;
    }
  }
  CHECK_THAT(r_via_pq(1, 0.1), Catch::Matchers::WithinAbs(0.46, 1e-12));
  CHECK_THAT(r_via_pq(2, 0.37), Catch::Matchers::WithinAbs(r_closed_form(2, 0.37), 1e-10));
  CHECK_THAT(r_via_pq(3, 0.81),
             Catch::Matchers::WithinRel(r_closed_form(3, 0.81), 1e-9));
}

TEST_CASE("rational form") {
  const auto r1 = r_as_rational(1);
  REQUIRE(r1.num.coeffs == std::vector<double>({0.0, 5.0, -4.0}));
  REQUIRE(r1.den.coeffs == std::vector<double>({1.0}));
  CHECK(r1.real_poles.empty());

  const auto r2 = r_as_rational(2);
  REQUIRE(r2.real_poles.size() == 1);
  CHECK_THAT(r2.real_poles[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK(r2.den.degree() == 1);  // proportional to 2z - 1

  const auto r3 = r_as_rational(3);
  REQUIRE(r3.real_poles.size() == 1);
  CHECK_THAT(r3.real_poles[0], Catch::Matchers::WithinAbs(0.25, 1e-12));

  // ratio matches the evaluator away from poles
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> unif(0.0, 1.5);
  for (int N = 1; N <= 6; ++N) {
    const auto rm = r_as_rational(N);
    int done = 0;
    while (done < 50) {
      const double z = unif(rng);
      bool near_pole = false;
      for (double p : rm.real_poles) near_pole = near_pole || std::abs(z - p) < 1e-3;
      if (near_pole) continue;
      const double rc = r_closed_form(N, z);
      if (std::abs(rc) < 1e-8) { ++done; continue; }
      CHECK(std::abs(rm(z) - rc) / std::abs(rc) < 1e-9);
      ++done;
    }
  }
  CHECK_THROWS_AS(r_as_rational(33), std::invalid_argument);
}

TEST_CASE("derivative of R at 0 equals c = 3N + 2N^2") {
  const double h = 1e-6;
  for (int N = 1; N <= 10; ++N) {
    const double d = (r_closed_form(N, h) - r_closed_form(N, -h)) / (2 * h);
    const double c = 3.0 * N + 2.0 * N * N;
    CHECK(std::abs(d - c) / c < 1e-6);
  }
}

TEST_CASE("poles of R") {
  CHECK(poles_of_r(1).empty());
  REQUIRE(poles_of_r(2).size() == 1);
  CHECK_THAT(poles_of_r(2)[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
  const auto p4 = poles_of_r(4);
  REQUIRE(p4.size() == 2);
  CHECK_THAT(p4[0], Catch::Matchers::WithinAbs(std::pow(std::cos(3 * M_PI / 8), 2), 1e-12));
  CHECK_THAT(p4[1], Catch::Matchers::WithinAbs(std::pow(std::cos(M_PI / 8), 2), 1e-12));
}

TEST_CASE("poles are simple: (z-p) R(z) has a finite nonzero limit") {
  for (int N : {2, 3, 4, 5}) {
    for (double p : poles_of_r(N)) {
      const double l1 = (p + 1e-6 - p) * r_closed_form(N, p + 1e-6);
      const double l2 = (p + 1e-7 - p) * r_closed_form(N, p + 1e-7);
      CAPTURE(N, p);
      CHECK(std::abs(l1) > 1e-8);
      CHECK(std::abs(l1 - l2) / std::abs(l1) < 1e-2);
    }
  }
}

TEST_CASE("zeros of phi are the poles of R together with 3/2") {
  for (int N = 1; N <= 5; ++N) {
    std::vector<double> zeros = poles_of_r(N);
    zeros.push_back(1.5);
    // phi vanishes at every expected zero...
    for (double z : zeros) {
      CAPTURE(N, z);
      CHECK_THAT(phi_closed_form(N, z), Catch::Matchers::WithinAbs(0.0, 1e-9));
    }
    // ...and at no other point of [0, 3/2]: every sign change of phi on the
    // scan grid is explained by an expected zero or by a pole of phi (which
    // sits in A union B).
    std::vector<double> phi_poles = set_A(N);
    for (double b : set_B(N)) phi_poles.push_back(b);
    const int grid = 20000;
    double prev = phi_closed_form(N, 1e-9);
    for (int i = 1; i <= grid; ++i) {
      const double z = 1.5 * i / grid;
      double cur;
      try {
        cur = phi_closed_form(N, z);
      } catch (const std::invalid_argument&) {
        prev = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      if (std::isfinite(prev) && prev * cur <= 0.0) {
        const double lo = 1.5 * (i - 1) / grid;
        bool explained = false;
        for (double w : zeros) explained = explained || (w > lo - 1e-9 && w < z + 1e-9);
        for (double w : phi_poles) explained = explained || (w > lo - 1e-9 && w < z + 1e-9);
        CAPTURE(N, lo, z);
        CHECK(explained);
      }
      prev = cur;
    }
  }
}

TEST_CASE("set A") {
  const auto a1 = set_A(1);
  REQUIRE(a1.size() == 1);
  CHECK_THAT(a1[0], Catch::Matchers::WithinAbs(1.25, 1e-12));
  for (int N = 1; N <= 6; ++N) {
    const auto a = set_A(N);
    CHECK(static_cast<int>(a.size()) == N);
    // A-elements are zeros of R (removable or genuine)
    const auto rm = r_as_rational(N);
    for (double z : a) CHECK(std::abs(rm.num(z)) < 1e-7 * std::max(1.0, std::abs(rm.den(z))));
  }
}

TEST_CASE("set B") {
  const auto b1 = set_B(1);
  REQUIRE(b1.size() == 1);
  CHECK_THAT(b1[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
  for (int N = 1; N <= 6; ++N) CHECK(static_cast<int>(set_B(N).size()) == N / 2 + 1);
}

TEST_CASE("A and B sit inside sigma(D) at the right multiplicities") {
  for (int N = 1; N <= 4; ++N) {
    const auto sd = dirichlet_block(laplacian(build(N, 1))).second;
    for (double z : set_A(N)) {
      long long mult = 0;
      for (const auto& atom : sd.atoms)
        if (std::abs(atom.value - z) < 1e-7) mult = atom.mult;
      CAPTURE(N, z);
      CHECK(mult == 2);
    }
    for (double z : set_B(N)) {
      long long mult = 0;
      for (const auto& atom : sd.atoms)
        if (std::abs(atom.value - z) < 1e-7) mult = atom.mult;
      CAPTURE(N, z);
      CHECK(mult == 1);
    }
  }
}

TEST_CASE("sigma(Delta_1) closed form matches the oracle") {
  const auto s1 = sigma_level1(1);
  REQUIRE(s1.size() == 3);
  CHECK(s1[0].mult == 1);
  CHECK_THAT(s1[1].value, Catch::Matchers::WithinAbs(0.75, 1e-12));
  CHECK(s1[1].mult == 2);
  CHECK(s1[2].mult == 3);
  for (int N = 1; N <= 6; ++N) {
    const auto closed = sigma_level1(N);
    long long total = 0;
    for (const auto& a : closed) total += a.mult;
    CHECK(total == 6LL * N);
    const auto oracle = dense_spectrum(laplacian(build(N, 1))).atoms;
    REQUIRE(closed.size() == oracle.size());
    for (std::size_t i = 0; i < closed.size(); ++i) {
      CHECK_THAT(closed[i].value, Catch::Matchers::WithinAbs(oracle[i].value, 1e-8));
      CHECK(closed[i].mult == oracle[i].mult);
    }
  }
}

TEST_CASE("exceptional set") {
  const auto e1 = exceptional_set(1);
  REQUIRE(e1.size() == 3);
  CHECK_THAT(e1[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK_THAT(e1[1], Catch::Matchers::WithinAbs(1.25, 1e-12));
  CHECK_THAT(e1[2], Catch::Matchers::WithinAbs(1.5, 1e-12));
  // contains the poles and the full sigma(D)
  for (int N = 1; N <= 4; ++N) {
    const auto e = exceptional_set(N);
    auto contains = [&](double v) {
      for (double x : e)
        if (std::abs(x - v) < 1e-7) return true;
      return false;
    };
    for (double p : poles_of_r(N)) CHECK(contains(p));
    for (const auto& atom : dirichlet_block(laplacian(build(N, 1))).second.atoms)
      CHECK(contains(atom.value));
  }
}

TEST_CASE("sawtooth eigenfunctions") {
  const auto f = sawtooth_eigenfunction(3, 0.2, SawtoothKind::antisymmetric);
  CHECK_THAT(f.base.front(), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(f.base.back(), Catch::Matchers::WithinAbs(-1.0, 1e-12));
  CHECK(sawtooth_residual(f) < 1e-10);

  const auto g = sawtooth_eigenfunction(5, 0.37, SawtoothKind::symmetric);
  CHECK_THAT(g.base.front(), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(g.base.back(), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK(sawtooth_residual(g) < 1e-10);
  // decimation onto the base path at eigenvalue 2z
  CHECK(sawtooth_base_residual(g) < 1e-10);

  CHECK_THROWS_AS(sawtooth_eigenfunction(3, 1.2, SawtoothKind::symmetric),
                  std::invalid_argument);
}
