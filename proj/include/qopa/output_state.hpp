#pragma once
// Closed-form Fock expansions of the OPA output states.
//
// Non-degenerate (two amplifiers, modes ordered 1perp,1par,2perp,2par):
//   |Psi> = G { |Psi_B(0)> (x) |Psi_A(1)>  +  e^{i Phi} |Psi_A(0)> (x) |Psi_B(1)> }
// with amplifier A coupling (1perp,2par), amplifier B coupling (1par,2perp),
//   amp(m+1, n, n, m)   = G sqrt(P_n) Gamma^m sqrt(m+1)
//   amp(n, m+1, m, n)   = e^{i Phi} G sqrt(P_n) Gamma^m sqrt(m+1)
// and G = (sqrt(2) C^2)^{-1}.  The two branches have disjoint support and the
// untruncated state has unit norm with this prefactor.
//
// Degenerate (single collinear amplifier, modes 1perp,1par):
//   amp(n+1, n) = G Gamma^n sqrt(n+1),  amp(n, n+1) = e^{i Phi} * same,
// again with G = (sqrt(2) C^2)^{-1}.  The prefactor printed alongside the
// degenerate expansion, (2C)^{-2}, does not normalize the state; the
// propagator oracle confirms (sqrt(2) C^2)^{-1}.  Both are recorded below.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qopa/params.hpp"

namespace qopa {

struct OutputState {
  Configuration configuration = Configuration::NonDegenerate;
  double gain = 0.0;
  double phi = 0.0;
  int truncation = 0;  // max series index n (and m) retained
  std::vector<std::string> mode_labels;
  // occupation tuple (fixed mode order) -> amplitude; unit-normalized.
  std::map<std::vector<int>, std::complex<double>> amplitudes;
  double normalization_deficit = 0.0;  // 1 - raw truncated norm^2
  double paper_prefactor = 0.0;        // G as used: (sqrt(2) C^2)^{-1}
  double printed_prefactor_degenerate = 0.0;  // (2C)^{-2}, kept for reference
  bool truncation_warning = false;     // deficit > 0.5

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [occ, amp] : amplitudes) s += std::norm(amp);
    return s;
  }
};

namespace detail {

inline void renormalize(OutputState& st) {
  double raw = 0.0;
  for (const auto& [occ, amp] : st.amplitudes) raw += std::norm(amp);
  st.normalization_deficit = 1.0 - raw;
  if (st.normalization_deficit < 0.0 && st.normalization_deficit > -1e-14)
    st.normalization_deficit = 0.0;
  st.truncation_warning = st.normalization_deficit > 0.5;
  const double scale = 1.0 / std::sqrt(raw);
  for (auto& [occ, amp] : st.amplitudes) amp *= scale;
}

}  // namespace detail

inline OutputState build_output_state_nondegenerate(const OpaParams& p, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  OutputState st;
  st.configuration = Configuration::NonDegenerate;
  st.gain = p.gain();
  st.phi = p.phase_phi();
  st.truncation = truncation;
  st.mode_labels = {"1perp", "1par", "2perp", "2par"};

  const double C = p.cosh_c();
  const double Gam = p.gamma_ratio();
  const double G = 1.0 / (std::sqrt(2.0) * C * C);
  st.paper_prefactor = G;
  st.printed_prefactor_degenerate = 1.0 / (4.0 * C * C);
  const std::complex<double> eiphi = std::polar(1.0, p.phase_phi());

  // sqrt(P_n) = Gamma^n / C
  for (int n = 0; n <= truncation; ++n) {
    const double sqrtPn = std::pow(Gam, n) / C;
    if (n > 0 && Gam == 0.0) break;
    for (int m = 0; m <= truncation; ++m) {
      const double w = G * sqrtPn * std::pow(Gam, m) * std::sqrt(m + 1.0);
      if (m > 0 && Gam == 0.0) break;
      if (w == 0.0) continue;
      // branch: vacuum-squeezed B |n,n> on (1par,2perp), injected A on (1perp,2par)
      st.amplitudes[{m + 1, n, n, m}] += w;
      // branch: vacuum-squeezed A, injected B, carries e^{i Phi}
      st.amplitudes[{n, m + 1, m, n}] += eiphi * w;
    }
  }
  detail::renormalize(st);
  return st;
}

inline OutputState build_output_state_degenerate(const OpaParams& p, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  OutputState st;
  st.configuration = Configuration::Degenerate;
  st.gain = p.gain();
  st.phi = p.phase_phi();
  st.truncation = truncation;
  st.mode_labels = {"1perp", "1par"};

  const double C = p.cosh_c();
  const double Gam = p.gamma_ratio();
  const double G = 1.0 / (std::sqrt(2.0) * C * C);
  st.paper_prefactor = G;
  st.printed_prefactor_degenerate = 1.0 / (4.0 * C * C);
  const std::complex<double> eiphi = std::polar(1.0, p.phase_phi());

  for (int n = 0; n <= truncation; ++n) {
    const double w = G * std::pow(Gam, n) * std::sqrt(n + 1.0);
    if (n > 0 && Gam == 0.0) break;
    st.amplitudes[{n + 1, n}] += w;
    st.amplitudes[{n, n + 1}] += eiphi * w;
  }
  detail::renormalize(st);
  return st;
}

// Entanglement swapping at a polarizing beam splitter: the two polarization
// modes of k1 become the momentum modes k3 (perp) and k4 (par).  Amplitudes
// are untouched.
inline OutputState apply_pbs_swap(const OutputState& in) {
  if (in.configuration != Configuration::Degenerate)
    throw std::invalid_argument("apply_pbs_swap requires a degenerate-configuration state");
  OutputState out = in;
  out.mode_labels = {"3perp", "4par"};
  return out;
}

}  // namespace qopa
