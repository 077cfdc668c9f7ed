#include <catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "qopa/correlations.hpp"
#include "qopa/verify.hpp"

using namespace qopa;

namespace {
OpaParams params_for_nbar(double nbar, double phi = 0.0) {
  return OpaParams(gain_for_mean_photons(nbar), phi);
}
}  // namespace

TEST_CASE("first-order correlations, closed forms") {
  const DetectorSettings zero{};
  SECTION("nbar = 1 at zero settings") {
    const OpaParams p = params_for_nbar(1.0);
    CHECK_THAT(g1_nondegenerate(p, zero, 1), Catch::Matchers::WithinAbs(3.0, 1e-12));
    CHECK_THAT(g1_nondegenerate(p, zero, 2), Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(g1_degenerate(p, zero), Catch::Matchers::WithinAbs(4.0, 1e-12));  // 3 nbar + 1
  }
  SECTION("rotator at 45 degrees kills the fringe term") {
    const OpaParams p = params_for_nbar(2.5, 1.234);
    DetectorSettings s;
    s.mode1.rotator_angle = M_PI / 4;
    s.mode1.psi_perp = 0.4;
    const double nb = p.mean_photons();
    CHECK_THAT(g1_nondegenerate(p, s, 1), Catch::Matchers::WithinAbs(nb + 0.5 * (nb + 1), 1e-12));
    CHECK_THAT(g1_degenerate(p, s), Catch::Matchers::WithinAbs(nb + nb + 0.5, 1e-12));
  }
  SECTION("degenerate zero-gain single photon") {
    const OpaParams p(0.0, 0.0);
    CHECK_THAT(g1_degenerate(p, zero), Catch::Matchers::WithinAbs(1.0, 1e-15));
  }
  SECTION("invalid mode rejected") {
    CHECK_THROWS_AS(g1_nondegenerate(params_for_nbar(1.0), zero, 3), std::invalid_argument);
  }
}

TEST_CASE("second-order correlations, closed forms") {
  const DetectorSettings zero{};
  SECTION("nbar = 1 at zero settings") {
    const OpaParams p = params_for_nbar(1.0);
    CHECK_THAT(g2_nondegenerate(p, zero, 1, 1), Catch::Matchers::WithinAbs(10.0, 1e-12));
    CHECK_THAT(g2_nondegenerate(p, zero, 2, 2), Catch::Matchers::WithinAbs(6.0, 1e-12));
    // printed cross form gives 11.5; the oracle-corrected value is 10
    CHECK_THAT(g2_nondegenerate(p, zero, 1, 2), Catch::Matchers::WithinAbs(10.0, 1e-12));
    CHECK_THAT(g2_nondegenerate_printed(p, zero, 1, 2), Catch::Matchers::WithinAbs(11.5, 1e-12));
    CHECK_THAT(g2_degenerate(p, zero, PairArrangement::Same),
               Catch::Matchers::WithinAbs(24.0, 1e-12));
    CHECK_THAT(g2_degenerate(p, zero, PairArrangement::Crossed),
               Catch::Matchers::WithinAbs(4.0, 1e-12));
  }
  SECTION("degenerate at 45 degrees") {
    const OpaParams p = params_for_nbar(1.7, 0.4);
    DetectorSettings s;
    s.mode1.rotator_angle = M_PI / 4;
    const double nb = p.mean_photons();
    CHECK_THAT(g2_degenerate(p, s, PairArrangement::Same),
               Catch::Matchers::WithinAbs(6 * nb * nb + 2 * nb, 1e-10));
    CHECK_THAT(g2_degenerate(p, s, PairArrangement::Crossed),
               Catch::Matchers::WithinAbs(2 * nb * (3 * nb + 2), 1e-10));
  }
  SECTION("zero gain means zero coincidences") {
    const OpaParams p(0.0, 0.0);
    CHECK(g2_nondegenerate(p, zero, 2, 2) == 0.0);
    CHECK(g2_degenerate(p, zero, PairArrangement::Same) == 0.0);
    CHECK(g2_degenerate(p, zero, PairArrangement::Crossed) == 0.0);
  }
  SECTION("interference bracket is exchange symmetric") {
    const double dpsi = 0.7;
    auto bracket = [&](double f1, double f2) {
      const double cm = std::cos(f1 - f2), sp = std::sin(f1 + f2);
      return (1 + std::cos(dpsi)) * cm * cm + (1 - std::cos(dpsi)) * sp * sp;
    };
    CHECK_THAT(bracket(0.3, -0.9), Catch::Matchers::WithinAbs(bracket(-0.9, 0.3), 1e-15));
  }
}

TEST_CASE("positivity and periodicity sweeps") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  for (double nbar : {0.0, 0.3, 1.0, 4.0}) {
    for (int it = 0; it < 60; ++it) {
      const OpaParams p = params_for_nbar(nbar, ang(rng));
      DetectorSettings s{{ang(rng), ang(rng), ang(rng)}, {ang(rng), ang(rng), ang(rng)}};
      for (double v : {g1_nondegenerate(p, s, 1), g1_nondegenerate(p, s, 2),
                       g2_nondegenerate(p, s, 1, 1), g2_nondegenerate(p, s, 2, 2),
                       g2_nondegenerate(p, s, 1, 2),
                       g1_degenerate(p, s), g2_degenerate(p, s, PairArrangement::Same),
                       g2_degenerate(p, s, PairArrangement::Crossed)})
        CHECK(v >= -1e-12);
      // pi-periodicity in the rotator angles, 2pi in the birefringent shifts
      DetectorSettings s2 = s;
      s2.mode1.rotator_angle += M_PI;
      s2.mode2.psi_perp += 2 * M_PI;
      CHECK_THAT(g2_nondegenerate(p, s, 1, 2),
                 Catch::Matchers::WithinAbs(g2_nondegenerate(p, s2, 1, 2), 1e-9));
      CHECK_THAT(g1_degenerate(p, s), Catch::Matchers::WithinAbs(g1_degenerate(p, s2), 1e-10));
    }
  }
}

TEST_CASE("detected-field commutator preservation") {
  for (double phi : {-1.2, 0.0, 0.4, 2.9}) {
    ModeDetector d{phi, 0.3, -0.8};
    CHECK_THAT(detected_field_norm(d), Catch::Matchers::WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("visibility") {
  SECTION("non-degenerate mode 2 saturates 1/3 for every nbar > 0") {
    for (double nbar : {0.01, 0.5, 1.0, 10.0, 500.0}) {
      const auto v = visibility(params_for_nbar(nbar), Configuration::NonDegenerate, 2);
      REQUIRE(v.applicable);
      CHECK(v.value == 1.0 / 3.0);
    }
  }
  SECTION("mode 1 and degenerate forms") {
    const double nbar = 2.0;
    const auto v1 = visibility(params_for_nbar(nbar), Configuration::NonDegenerate, 1);
    CHECK_THAT(v1.value, Catch::Matchers::WithinRel((nbar + 1) / (3 * nbar + 1), 1e-12));
    const auto vd = visibility(params_for_nbar(nbar), Configuration::Degenerate);
    CHECK_THAT(vd.value, Catch::Matchers::WithinRel((2 * nbar + 1) / (4 * nbar + 1), 1e-12));
  }
  SECTION("degenerate bound and limits") {
    for (double nbar : {0.1, 1.0, 30.0})
      CHECK(visibility(params_for_nbar(nbar), Configuration::Degenerate).value >= 0.5);
    CHECK_THAT(visibility(params_for_nbar(1e7), Configuration::Degenerate).value,
               Catch::Matchers::WithinAbs(0.5, 1e-6));
    CHECK(visibility(OpaParams(0.0, 0.0), Configuration::Degenerate).value == 1.0);
  }
  SECTION("collinear-to-noncollinear factor approaches 1.5") {
    const double ratio = visibility(params_for_nbar(100.0), Configuration::Degenerate).value /
                         visibility(params_for_nbar(100.0), Configuration::NonDegenerate, 2).value;
    CHECK_THAT(ratio, Catch::Matchers::WithinRel(1.5, 0.01));
  }
  SECTION("zero gain mode 2 is undefined") {
    CHECK_FALSE(visibility(OpaParams(0.0, 0.0), Configuration::NonDegenerate, 2).applicable);
  }
}

TEST_CASE("signal to noise") {
  const double nbar = 3.0;
  CHECK(signal_to_noise(params_for_nbar(nbar), Configuration::NonDegenerate, 2).value == 2.0);
  CHECK_THAT(signal_to_noise(params_for_nbar(nbar), Configuration::NonDegenerate, 1).value,
             Catch::Matchers::WithinRel((2 * nbar + 1) / nbar, 1e-12));
  CHECK_THAT(signal_to_noise(params_for_nbar(nbar), Configuration::Degenerate).value,
             Catch::Matchers::WithinRel((3 * nbar + 1) / nbar, 1e-12));
  CHECK(signal_to_noise(params_for_nbar(nbar), Configuration::NonDegenerate, 1).value > 2.0);
  CHECK(signal_to_noise(params_for_nbar(nbar), Configuration::Degenerate).value > 3.0);
  CHECK_FALSE(signal_to_noise(OpaParams(0.0, 0.0), Configuration::NonDegenerate).applicable);
}

TEST_CASE("fringe difference") {
  SECTION("non-degenerate amplitude nbar") {
    const OpaParams p = params_for_nbar(1.0);
    const DetectorSettings zero{};
    CHECK_THAT(fringe_difference(p, Configuration::NonDegenerate, zero).value,
               Catch::Matchers::WithinAbs(1.0, 1e-12));
    DetectorSettings diag{};
    diag.mode2.rotator_angle = M_PI / 4;
    CHECK_THAT(fringe_difference(p, Configuration::NonDegenerate, diag).value,
               Catch::Matchers::WithinAbs(0.0, 1e-12));
    // functional form: G1_2(phi) - G1_2(phi + 90deg) over a sweep
    for (double phi2 = 0.0; phi2 < M_PI; phi2 += 0.31) {
      DetectorSettings a{}, b{};
      a.mode2.rotator_angle = phi2;
      b.mode2.rotator_angle = phi2 + M_PI / 2;
      const double diff = g1_nondegenerate(p, a, 2) - g1_nondegenerate(p, b, 2);
      CHECK_THAT(diff, Catch::Matchers::WithinAbs(
                           p.mean_photons() * std::cos(2 * phi2), 1e-12));
    }
  }
  SECTION("degenerate printed amplitude disagrees with its own G1") {
    const OpaParams p = params_for_nbar(2.0, 0.3);
    DetectorSettings s{};
    s.mode1.rotator_angle = 0.2;
    s.mode1.psi_perp = 0.5;
    const auto f = fringe_difference(p, Configuration::Degenerate, s);
    DetectorSettings crossed = s;
    crossed.mode1.rotator_angle += M_PI / 2;
    const double by_g1 = g1_degenerate(p, s) - g1_degenerate(p, crossed);
    CHECK_THAT(f.value, Catch::Matchers::WithinAbs(by_g1, 1e-12));
    // the printed amplitude nbar differs from the differenced (2 nbar + 1)
    CHECK(std::abs(f.printed_value) < std::abs(f.value));
  }
}

TEST_CASE("Cauchy-Schwarz violation") {
  SECTION("nbar = 1 at zero phases") {
    const auto cs = cauchy_schwarz_test(params_for_nbar(1.0), DetectorSettings{});
    REQUIRE(cs.applicable);
    CHECK_THAT(cs.g2_11, Catch::Matchers::WithinRel(10.0 / 9.0, 1e-12));
    CHECK_THAT(cs.g2_22, Catch::Matchers::WithinRel(1.5, 1e-12));
    CHECK_THAT(cs.g2_12, Catch::Matchers::WithinRel(10.0 / 6.0, 1e-12));
    CHECK(cs.violated);
    // with the printed cross form the violation is even larger (the spec's
    // quoted 11.5/6 value); both sides of the discrepancy violate
    const double g12p = 11.5 / 6.0;
    CHECK(g12p * g12p > cs.rhs);
  }
  SECTION("violation across the nbar sweep") {
    for (double nbar : {0.5, 1.0, 5.0, 20.0}) {
      const auto cs = cauchy_schwarz_test(params_for_nbar(nbar), DetectorSettings{});
      REQUIRE(cs.applicable);
      CHECK(cs.violated);
      // closed-form margin 2(3 nbar + 2)/(2 nbar + 1)^2
      CHECK_THAT(cs.lhs - cs.rhs,
                 Catch::Matchers::WithinRel(
                     2 * (3 * nbar + 2) / ((2 * nbar + 1) * (2 * nbar + 1)), 1e-10));
    }
  }
  SECTION("zero gain not applicable") {
    CHECK_FALSE(cauchy_schwarz_test(OpaParams(0.0, 0.0), DetectorSettings{}).applicable);
  }
}

TEST_CASE("quick oracle spot check at g = 0.5") {
  const OpaParams p(0.5, 0.7);
  const DetectorSettings s{{0.3, 0.2, -0.15}, {-0.4, 0.5, 0.1}};
  const int dn = suggested_cutoff(0.5, 4);
  const FockRegister rn = opa_output_register(p, Configuration::NonDegenerate, dn);
  CHECK_THAT(g1_nondegenerate(p, s, 1),
             Catch::Matchers::WithinAbs(oracle_g1(rn, Configuration::NonDegenerate, 1, s.mode1), 1e-7));
  CHECK_THAT(g2_nondegenerate(p, s, 1, 2),
             Catch::Matchers::WithinAbs(
                 oracle_g2(rn, Configuration::NonDegenerate, 1, s.mode1, 2, s.mode2), 1e-7));
  // at the zero-setting reference the printed cross form misses the oracle by
  // exactly nbar(nbar + 1/2)
  const double nb = p.mean_photons();
  const DetectorSettings zero{};
  CHECK_THAT(g2_nondegenerate_printed(p, zero, 1, 2) -
                 oracle_g2(rn, Configuration::NonDegenerate, 1, zero.mode1, 2, zero.mode2),
             Catch::Matchers::WithinAbs(nb * (nb + 0.5), 1e-7));
}

TEST_CASE("correlation report assembles all quantities") {
  const OpaParams p = params_for_nbar(1.0);
  const auto r = correlation_report(p, DetectorSettings{});
  CHECK_THAT(r.g1_1, Catch::Matchers::WithinAbs(3.0, 1e-12));
  CHECK_THAT(r.g2_12, Catch::Matchers::WithinAbs(10.0, 1e-12));
  CHECK_THAT(r.g2_12_printed, Catch::Matchers::WithinAbs(11.5, 1e-12));
  CHECK(r.cauchy_schwarz.violated);
  CHECK(r.visibility_mode2.applicable);
  CHECK_THAT(r.fringe_deg.value, Catch::Matchers::WithinAbs(3.0, 1e-12));  // (2 nbar + 1)
}
