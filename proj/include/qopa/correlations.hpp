#pragma once
// Detection model and the closed-form first/second-order correlation
// functions.  Detected fields: c_j = xi_j^- a_j + xi_j^+ b_j with
// xi_j^-+ = 2^{-1/2}(cos phi_j -+ sin phi_j) e^{i psi_j(a/b)}; for mode 1 the
// (a, b) operators are (1perp, 1par), for mode 2 they are (2par, 2perp).
// All closed forms consume the birefringent difference Psi_j = psi_perp -
// psi_par; the individual shifts are kept for the operator-level oracle.
//
// Two printed formulas disagree with the propagator oracle and are carried
// with both values:
//   - G2_12: the printed cross-correlation overshoots the oracle; at the
//     zero-angle/zero-phase reference settings the gap is exactly
//     nbar(nbar + 1/2).  The oracle-matched form used here is derived in the
//     Heisenberg picture (Bogoliubov-transform the detected fields onto the
//     two-photon injected qubit) and is exact at all settings.
//   - degenerate fringe difference: differencing the (oracle-confirmed)
//     degenerate G1 gives amplitude (2 nbar + 1) cos(2 phi) cos DPhi, not the
//     printed nbar cos(2 phi) cos D2+Phi.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qopa/params.hpp"

namespace qopa {

struct ModeDetector {
  double rotator_angle = 0.0;  // phi_j, measured from the 45 degree axis
  double psi_perp = 0.0;
  double psi_par = 0.0;
  double birefringent_shift() const { return psi_perp - psi_par; }
};

struct DetectorSettings {
  ModeDetector mode1, mode2;
};

// Psi_j is always psi_perp - psi_par here.  Because the amplifier pairing
// swaps the mode-2 arms (2par rides amplifier A together with 1perp), the
// mode-2 fringe phase that matches the operator-level oracle is Phi - Psi_2;
// in the published convention that combination is the "Delta_2^+" fringe.
struct PhaseCombos {
  double delta1_minus = 0.0;  // Phi - Psi_1
  double delta1_plus = 0.0;   // Phi + Psi_1
  double delta2_minus = 0.0;  // Phi - Psi_2
  double delta2_plus = 0.0;   // Phi + Psi_2
  double dphi_minus = 0.0;    // phi_1 - phi_2
  double dphi_plus = 0.0;     // phi_1 + phi_2
  double dpsi = 0.0;          // Psi_1 + Psi_2
  double dphi_deg = 0.0;      // Psi_1 - Phi (degenerate; detector = mode1)
};

inline PhaseCombos phase_combos(const OpaParams& p, const DetectorSettings& s) {
  const double phi = p.phase_phi();
  const double p1 = s.mode1.birefringent_shift(), p2 = s.mode2.birefringent_shift();
  PhaseCombos c;
  c.delta1_minus = phi - p1;
  c.delta1_plus = phi + p1;
  c.delta2_minus = phi - p2;
  c.delta2_plus = phi + p2;
  c.dphi_minus = s.mode1.rotator_angle - s.mode2.rotator_angle;
  c.dphi_plus = s.mode1.rotator_angle + s.mode2.rotator_angle;
  c.dpsi = p1 + p2;
  c.dphi_deg = p1 - phi;
  return c;
}

// |xi^+|^2 + |xi^-|^2, identically 1; exposed for the commutator invariant.
inline double detected_field_norm(const ModeDetector& d) {
  const double cm = (std::cos(d.rotator_angle) - std::sin(d.rotator_angle)) / std::sqrt(2.0);
  const double cp = (std::cos(d.rotator_angle) + std::sin(d.rotator_angle)) / std::sqrt(2.0);
  return cm * cm + cp * cp;
}

inline double g1_nondegenerate(const OpaParams& p, const DetectorSettings& s, int mode) {
  const double nb = p.mean_photons();
  const PhaseCombos c = phase_combos(p, s);
  if (mode == 1)
    return nb + 0.5 * (nb + 1.0) *
                    (1.0 + std::cos(2.0 * s.mode1.rotator_angle) * std::cos(c.delta1_minus));
  if (mode == 2)
    return nb + 0.5 * nb *
                    (1.0 + std::cos(2.0 * s.mode2.rotator_angle) * std::cos(c.delta2_minus));
  throw std::invalid_argument("mode must be 1 or 2");
}

inline double g1_degenerate(const OpaParams& p, const DetectorSettings& s) {
  const double nb = p.mean_photons();
  const PhaseCombos c = phase_combos(p, s);
  return nb + (nb + 0.5) *
                  (1.0 + std::cos(2.0 * s.mode1.rotator_angle) * std::cos(c.dphi_deg));
}

inline double g2_nondegenerate(const OpaParams& p, const DetectorSettings& s, int i, int j) {
  const double nb = p.mean_photons();
  const PhaseCombos c = phase_combos(p, s);
  const double c1 = std::cos(2.0 * s.mode1.rotator_angle);
  const double c2 = std::cos(2.0 * s.mode2.rotator_angle);
  if (i == 1 && j == 1)
    return 2.0 * nb * (nb + (nb + 1.0) * (1.0 + c1 * std::cos(c.delta1_minus)));
  if (i == 2 && j == 2)
    return 2.0 * nb * nb * (1.0 + (1.0 + c2 * std::cos(c.delta2_minus)));
  if ((i == 1 && j == 2) || (i == 2 && j == 1)) {
    // Heisenberg-picture closed form: with the detected-field coefficients
    //   u = xm1 e^{i psi1perp},  v = xp1 e^{i psi1par},
    //   w = xm2 e^{i psi2par},   z = xp2 e^{i psi2perp},  e = e^{i Phi},
    // the Bogoliubov transform reduces <c1+ c2+ c2 c1> over the injected
    // qubit to
    //   (1/2) nbar(nbar+1) (|2uw + evw + vz|^2 + |uz + euw + 2evz|^2)
    //     + nbar^2 + (1/2) nbar^2 (1 + 2 Re[e w z*]).
    const std::complex<double> e = std::polar(1.0, p.phase_phi());
    const double r = 1.0 / std::sqrt(2.0);
    const double xm1 = (std::cos(s.mode1.rotator_angle) - std::sin(s.mode1.rotator_angle)) * r;
    const double xp1 = (std::cos(s.mode1.rotator_angle) + std::sin(s.mode1.rotator_angle)) * r;
    const double xm2 = (std::cos(s.mode2.rotator_angle) - std::sin(s.mode2.rotator_angle)) * r;
    const double xp2 = (std::cos(s.mode2.rotator_angle) + std::sin(s.mode2.rotator_angle)) * r;
    const std::complex<double> u = std::polar(xm1, s.mode1.psi_perp);
    const std::complex<double> v = std::polar(xp1, s.mode1.psi_par);
    const std::complex<double> w = std::polar(xm2, s.mode2.psi_par);
    const std::complex<double> z = std::polar(xp2, s.mode2.psi_perp);
    const double t1 = std::norm(2.0 * u * w + e * v * w + v * z);
    const double t2 = std::norm(u * z + e * u * w + 2.0 * e * v * z);
    return 0.5 * nb * (nb + 1.0) * (t1 + t2) + nb * nb +
           0.5 * nb * nb * (1.0 + 2.0 * (e * w * std::conj(z)).real());
  }
  throw std::invalid_argument("pair must be (1,1), (2,2) or (1,2)");
}

// The cross-correlation exactly as printed; overshoots the oracle (by
// nbar(nbar + 1/2) at the zero-setting reference point).
inline double g2_nondegenerate_printed(const OpaParams& p, const DetectorSettings& s, int i, int j) {
  const double nb = p.mean_photons();
  if ((i == 1 && j == 2) || (i == 2 && j == 1)) {
    const PhaseCombos c = phase_combos(p, s);
    const double c1 = std::cos(2.0 * s.mode1.rotator_angle);
    const double c2 = std::cos(2.0 * s.mode2.rotator_angle);
    const double cm = std::cos(c.dphi_minus), sp = std::sin(c.dphi_plus);
    return 2.0 * nb * nb + 0.5 * nb + nb * (nb + 1.0) * c1 * std::cos(c.delta1_minus) +
           nb * (nb + 0.5) * (1.0 + c2 * std::cos(c.delta2_minus)) +
           nb * (nb + 1.0) *
               ((1.0 + std::cos(c.dpsi)) * cm * cm + (1.0 - std::cos(c.dpsi)) * sp * sp);
  }
  return g2_nondegenerate(p, s, i, j);
}

enum class PairArrangement { Same, Crossed };  // phi,phi vs phi,phi+90deg

inline double g2_degenerate(const OpaParams& p, const DetectorSettings& s, PairArrangement arr) {
  const double nb = p.mean_photons();
  const PhaseCombos c = phase_combos(p, s);
  const double c2phi = std::cos(2.0 * s.mode1.rotator_angle);
  if (arr == PairArrangement::Same)
    return 6.0 * nb * nb + 2.0 * nb + 3.0 * nb * (nb + 1.0) * c2phi * c2phi +
           2.0 * nb * (3.0 * nb + 2.0) * c2phi * std::cos(c.dphi_deg);
  return 2.0 * nb * (3.0 * nb + 2.0) - 3.0 * nb * (nb + 1.0) * c2phi * c2phi;
}

struct OptionalRatio {
  double value = 0.0;
  bool applicable = false;
};

// Fringe visibility (G_max - G_min)/(G_max + G_min), extremized analytically
// over the cos(2 phi) cos(phase) fringe factor.
inline OptionalRatio visibility(const OpaParams& p, Configuration cfg, int mode = 2) {
  const double nb = p.mean_photons();
  OptionalRatio v;
  if (cfg == Configuration::Degenerate) {
    v.value = (2.0 * nb + 1.0) / (4.0 * nb + 1.0);
    v.applicable = true;
    return v;
  }
  if (mode == 1) {
    v.value = (nb + 1.0) / (3.0 * nb + 1.0);
    v.applicable = true;
    return v;
  }
  if (mode != 2) throw std::invalid_argument("mode must be 1 or 2");
  if (nb <= 0.0) return v;  // 0/0 at zero gain
  v.value = 1.0 / 3.0;
  v.applicable = true;
  return v;
}

// G1 at zero angles/phases over the vacuum-injection level nbar.
inline OptionalRatio signal_to_noise(const OpaParams& p, Configuration cfg, int mode = 2) {
  const double nb = p.mean_photons();
  OptionalRatio r;
  if (nb <= 0.0) return r;
  if (cfg == Configuration::Degenerate)
    r.value = (3.0 * nb + 1.0) / nb;
  else if (mode == 1)
    r.value = (2.0 * nb + 1.0) / nb;
  else if (mode == 2)
    r.value = 2.0;
  else
    throw std::invalid_argument("mode must be 1 or 2");
  r.applicable = true;
  return r;
}

struct FringeDifference {
  double value = 0.0;          // oracle-confirmed difference G1(phi) - G1(phi + 90deg)
  double printed_value = 0.0;  // amplitude as printed in the paper
};

inline FringeDifference fringe_difference(const OpaParams& p, Configuration cfg,
                                          const DetectorSettings& s) {
  const double nb = p.mean_photons();
  const PhaseCombos c = phase_combos(p, s);
  FringeDifference f;
  if (cfg == Configuration::NonDegenerate) {
    f.value = nb * std::cos(2.0 * s.mode2.rotator_angle) * std::cos(c.delta2_minus);
    f.printed_value = f.value;  // printed form agrees for the non-degenerate case
  } else {
    f.value = (2.0 * nb + 1.0) * std::cos(2.0 * s.mode1.rotator_angle) * std::cos(c.dphi_deg);
    f.printed_value = nb * std::cos(2.0 * s.mode1.rotator_angle) * std::cos(c.delta2_plus);
  }
  return f;
}

struct CauchySchwarzResult {
  double g2_11 = 0.0, g2_22 = 0.0, g2_12 = 0.0;  // normalized g(2) values
  double lhs = 0.0, rhs = 0.0;
  bool violated = false;
  bool applicable = false;
};

inline CauchySchwarzResult cauchy_schwarz_test(const OpaParams& p, const DetectorSettings& s) {
  CauchySchwarzResult r;
  if (p.mean_photons() <= 0.0) return r;
  const double G1_1 = g1_nondegenerate(p, s, 1), G1_2 = g1_nondegenerate(p, s, 2);
  r.g2_11 = g2_nondegenerate(p, s, 1, 1) / (G1_1 * G1_1);
  r.g2_22 = g2_nondegenerate(p, s, 2, 2) / (G1_2 * G1_2);
  r.g2_12 = g2_nondegenerate(p, s, 1, 2) / (G1_1 * G1_2);
  r.lhs = r.g2_12 * r.g2_12;
  r.rhs = r.g2_11 * r.g2_22;
  r.violated = r.lhs > r.rhs;
  r.applicable = true;
  return r;
}

struct CorrelationReport {
  double g1_1 = 0.0, g1_2 = 0.0;
  double g2_11 = 0.0, g2_22 = 0.0, g2_12 = 0.0;
  double g2_12_printed = 0.0;
  OptionalRatio visibility_mode1, visibility_mode2, snr_mode1, snr_mode2;
  FringeDifference fringe;
  CauchySchwarzResult cauchy_schwarz;
  // degenerate block
  double g1_deg = 0.0, g2_deg_same = 0.0, g2_deg_crossed = 0.0;
  OptionalRatio visibility_deg, snr_deg;
  FringeDifference fringe_deg;
};

inline CorrelationReport correlation_report(const OpaParams& p, const DetectorSettings& s) {
  CorrelationReport r;
  r.g1_1 = g1_nondegenerate(p, s, 1);
  r.g1_2 = g1_nondegenerate(p, s, 2);
  r.g2_11 = g2_nondegenerate(p, s, 1, 1);
  r.g2_22 = g2_nondegenerate(p, s, 2, 2);
  r.g2_12 = g2_nondegenerate(p, s, 1, 2);
  r.g2_12_printed = g2_nondegenerate_printed(p, s, 1, 2);
  r.visibility_mode1 = visibility(p, Configuration::NonDegenerate, 1);
  r.visibility_mode2 = visibility(p, Configuration::NonDegenerate, 2);
  r.snr_mode1 = signal_to_noise(p, Configuration::NonDegenerate, 1);
  r.snr_mode2 = signal_to_noise(p, Configuration::NonDegenerate, 2);
  r.fringe = fringe_difference(p, Configuration::NonDegenerate, s);
  r.cauchy_schwarz = cauchy_schwarz_test(p, s);
  r.g1_deg = g1_degenerate(p, s);
  r.g2_deg_same = g2_degenerate(p, s, PairArrangement::Same);
  r.g2_deg_crossed = g2_degenerate(p, s, PairArrangement::Crossed);
  r.visibility_deg = visibility(p, Configuration::Degenerate);
  r.snr_deg = signal_to_noise(p, Configuration::Degenerate);
  r.fringe_deg = fringe_difference(p, Configuration::Degenerate, s);
  return r;
}

}  // namespace qopa
