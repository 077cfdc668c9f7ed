#include <catch_amalgamated.hpp>
#include <cmath>

#include "qopa/params.hpp"

using namespace qopa;

TEST_CASE("derive_params trivial and plotting gains") {
  const OpaParams zero = derive_params(0.0, 0.0);
  CHECK(zero.cosh_c() == 1.0);
  CHECK(zero.sinh_s() == 0.0);
  CHECK(zero.gamma_ratio() == 0.0);
  CHECK(zero.mean_photons() == 0.0);

  const OpaParams plot = derive_params(2.5, 0.0);
  CHECK_THAT(plot.cosh_c(), Catch::Matchers::WithinRel(6.132289479663686, 1e-13));
  CHECK_THAT(plot.sinh_s(), Catch::Matchers::WithinRel(6.050204481039787, 1e-13));
  CHECK_THAT(plot.mean_photons(), Catch::Matchers::WithinRel(36.604974262393924, 1e-13));
}

TEST_CASE("hyperbolic invariant C^2 - S^2 = 1") {
  for (double g : {0.0, 0.1, 0.5, 1.0, 2.5, 4.0}) {
    const OpaParams p(g, 0.3);
    const double c2 = p.cosh_c() * p.cosh_c(), s2 = p.sinh_s() * p.sinh_s();
    CHECK_THAT(c2 - s2, Catch::Matchers::WithinRel(1.0, 1e-12));
    CHECK(p.gamma_ratio() >= 0.0);
    CHECK(p.gamma_ratio() < 1.0);
    CHECK((p.gamma_ratio() == 0.0) == (g == 0.0));
  }
}

TEST_CASE("invalid parameters rejected") {
  CHECK_THROWS_AS(derive_params(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(0.5, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("thermal weights") {
  SECTION("zero gain is a point mass") {
    const auto t = thermal_weights(OpaParams(0.0, 0.0), 5);
    CHECK(t.weights[0] == 1.0);
    for (size_t n = 1; n < t.weights.size(); ++n) CHECK(t.weights[n] == 0.0);
  }
  SECTION("nbar = 1 gives the halving sequence") {
    const OpaParams p(gain_for_mean_photons(1.0), 0.0);
    REQUIRE_THAT(p.gain(), Catch::Matchers::WithinAbs(0.881373587019543, 1e-14));
    const auto t = thermal_weights(p, 8);
    for (size_t n = 0; n < t.weights.size(); ++n)
      CHECK_THAT(t.weights[n], Catch::Matchers::WithinRel(std::pow(0.5, n + 1.0), 1e-12));
  }
  SECTION("geometric partial sum identity") {
    for (double g : {0.3, 0.8, 1.7}) {
      const OpaParams p(g, 0.0);
      for (int nmax : {0, 3, 11}) {
        const auto t = thermal_weights(p, nmax);
        double sum = 0.0;
        for (double w : t.weights) sum += w;
        const double gam2 = p.gamma_ratio() * p.gamma_ratio();
        CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0 - std::pow(gam2, nmax + 1), 1e-12));
        CHECK_THAT(t.tail_bound, Catch::Matchers::WithinRel(std::pow(gam2, nmax + 1), 1e-12));
      }
    }
  }
  SECTION("P_n equals the thermal form nbar^n/(1+nbar)^(n+1)") {
    const OpaParams p(0.9, 0.0);
    const double nb = p.mean_photons();
    const auto t = thermal_weights(p, 6);
    for (size_t n = 0; n < t.weights.size(); ++n)
      CHECK_THAT(t.weights[n], Catch::Matchers::WithinRel(
                                   std::pow(nb, static_cast<double>(n)) /
                                       std::pow(1.0 + nb, static_cast<double>(n) + 1.0),
                                   1e-12));
  }
  CHECK_THROWS_AS(thermal_weights(OpaParams(0.5, 0.0), -1), std::invalid_argument);
}

TEST_CASE("configuration helpers") {
  CHECK(mode_count(Configuration::NonDegenerate) == 4);
  CHECK(mode_count(Configuration::Degenerate) == 2);
  CHECK(configuration_from_string("degenerate") == Configuration::Degenerate);
  CHECK(configuration_from_string("noncollinear") == Configuration::NonDegenerate);
  CHECK_THROWS_AS(configuration_from_string("both"), std::invalid_argument);
}
