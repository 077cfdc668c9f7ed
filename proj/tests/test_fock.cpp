#include <catch_amalgamated.hpp>
#include <cmath>

#include "qopa/fock.hpp"
#include "qopa/verify.hpp"

using namespace qopa;

TEST_CASE("register construction and indexing") {
  const FockRegister r = make_register(1, 3, {1});
  REQUIRE(r.dim() == 3);
  CHECK(r.state[0] == Cplx(0, 0));
  CHECK(r.state[1] == Cplx(1, 0));

  const FockRegister q = make_register(3, 4, {2, 0, 3});
  CHECK(q.index_of({2, 0, 3}) == 2 * 16 + 0 * 4 + 3);
  CHECK(q.occ_of(q.index_of({2, 0, 3})) == std::vector<int>{2, 0, 3});
  CHECK_THROWS_AS(make_register(2, 3, {3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_register(1, 1, {0}), std::invalid_argument);
}

TEST_CASE("injected-qubit superpositions") {
  const FockRegister r = make_register_superposition(4, 3, {1, 0, 0, 0}, {0, 1, 0, 0}, M_PI);
  CHECK_THAT(std::abs(r.state[r.index_of({1, 0, 0, 0})] - 1.0 / std::sqrt(2.0)),
             Catch::Matchers::WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(r.state[r.index_of({0, 1, 0, 0})] + 1.0 / std::sqrt(2.0)),
             Catch::Matchers::WithinAbs(0.0, 1e-15));

  const FockRegister q = make_register_superposition(2, 3, {1, 0}, {0, 1}, M_PI / 2);
  CHECK_THAT(std::abs(q.state[q.index_of({0, 1})] - Cplx(0, 1.0 / std::sqrt(2.0))),
             Catch::Matchers::WithinAbs(0.0, 1e-15));
}

TEST_CASE("ladder operator matrices") {
  const int d = 6;
  const CMat a = annihilation_matrix(d);
  const CMat comm = a * a.adjoint() - a.adjoint() * a;
  // canonical commutator holds below the cutoff level
  for (int n = 0; n + 1 < d; ++n) CHECK_THAT(std::abs(comm(n, n) - 1.0), Catch::Matchers::WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(comm(d - 1, d - 1) + (d - 1.0)), Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK((number_matrix(d) - a.adjoint() * a).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("squeeze propagator") {
  SECTION("zero gain is the identity") {
    const CMat u = two_mode_squeeze_matrix(5, 0.0);
    CHECK((u - CMat::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("unitarity within the cutoff policy") {
    for (double g : {0.3, 0.8}) {
      const int d = suggested_cutoff(g, 2);
      const CMat u = two_mode_squeeze_matrix(d, g);
      FockRegister r = make_register(2, d, {0, 0});
      apply_two_mode(r, 0, 1, u);
      CHECK_THAT(norm_squared(r), Catch::Matchers::WithinAbs(1.0, 1e-8));
    }
  }
  SECTION("cutoff too small for the gain is refused with a suggestion") {
    CHECK_THROWS_WITH(two_mode_squeeze_matrix(6, 2.0),
                      Catch::Matchers::ContainsSubstring("suggested cutoff"));
  }
}

TEST_CASE("suggested cutoff policy") {
  CHECK(suggested_cutoff(0.0, 4) == 2);
  CHECK(suggested_cutoff(0.5, 2) == 15);
  CHECK(suggested_cutoff(0.8, 4) == 29);
  // g = 2.5 over 4 modes would need a dense register far past the cap
  CHECK_THROWS_WITH(suggested_cutoff(2.5, 4), Catch::Matchers::ContainsSubstring("infeasible"));
}

TEST_CASE("disentangling closed forms (appendix suite)") {
  const auto c = check_appendix_closed_forms();
  INFO("max deviation " << c.max_deviation);
  CHECK(c.pass);
}

TEST_CASE("squeezed vacuum photon statistics") {
  const auto c = check_photon_statistics();
  INFO("max deviation " << c.max_deviation);
  CHECK(c.pass);
}

TEST_CASE("Bogoliubov conjugation") {
  const auto c = check_bogoliubov({0.2, 0.5});
  INFO("max deviation " << c.max_deviation);
  CHECK(c.pass);
}

TEST_CASE("expectation values") {
  FockRegister r = make_register(1, 5, {1});
  const Cplx n1 = expectation_one_mode(r, 0, number_matrix(5));
  CHECK_THAT(std::abs(n1 - 1.0), Catch::Matchers::WithinAbs(0.0, 1e-14));

  // total photons in two-mode squeezed vacuum = 2 nbar
  const OpaParams p(0.6, 0.0);
  const int d = suggested_cutoff(0.6, 2);
  FockRegister v = make_register(2, d, {0, 0});
  apply_two_mode(v, 0, 1, two_mode_squeeze_matrix(d, 0.6));
  CHECK_THAT(total_photon_number(v), Catch::Matchers::WithinAbs(2.0 * p.mean_photons(), 1e-8));
}

TEST_CASE("displaced-parity Wigner values") {
  SECTION("vacuum at the origin") {
    const FockRegister r = make_register(1, 8, {0});
    CHECK_THAT(wigner_by_displacement(r, {Cplx(0, 0)}), Catch::Matchers::WithinAbs(2.0 / M_PI, 1e-12));
  }
  SECTION("single photon flips the sign") {
    const FockRegister r = make_register(1, 8, {1});
    CHECK_THAT(wigner_by_displacement(r, {Cplx(0, 0)}), Catch::Matchers::WithinAbs(-2.0 / M_PI, 1e-12));
  }
  SECTION("coherent displacement recenters the vacuum Gaussian") {
    const Cplx alpha(0.6, -0.3);
    FockRegister r = make_register(1, 24, {0});
    apply_one_mode(r, 0, displacement_matrix(24, alpha));
    CHECK_THAT(wigner_by_displacement(r, {alpha}), Catch::Matchers::WithinAbs(2.0 / M_PI, 1e-9));
  }
}

TEST_CASE("apply_two_mode respects mode ordering") {
  // put a single excitation pair on modes (1,2) of a 4-mode register and
  // check the amplitude lands on the right tuple
  const int d = 14;
  FockRegister r = make_register(4, d, {0, 0, 0, 0});
  apply_two_mode(r, 1, 2, two_mode_squeeze_matrix(d, 0.4));
  const OpaParams p(0.4, 0.0);
  CHECK_THAT(std::abs(r.state[r.index_of({0, 1, 1, 0})]),
             Catch::Matchers::WithinAbs(p.gamma_ratio() / p.cosh_c(), 1e-10));
  CHECK_THAT(std::abs(r.state[r.index_of({0, 0, 1, 1})]), Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THROWS_AS(apply_two_mode(r, 1, 1, two_mode_squeeze_matrix(d, 0.1)),
                  std::invalid_argument);
}

TEST_CASE("overlap and dimension guards") {
  const FockRegister a = make_register(1, 4, {1}), b = make_register(1, 4, {1});
  CHECK_THAT(std::abs(overlap(a, b) - 1.0), Catch::Matchers::WithinAbs(0.0, 1e-15));
  const FockRegister c = make_register(1, 5, {1});
  CHECK_THROWS_AS(overlap(a, c), std::invalid_argument);
}
