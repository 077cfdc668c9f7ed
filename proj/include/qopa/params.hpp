#pragma once
// Physical parameters of the quantum-injected OPA and the thermal photon
// statistics of squeezed vacuum.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qopa {

// Optical layout: two independent amplifiers over (1perp,1par,2perp,2par),
// or a single collinear amplifier over (1perp,1par).
enum class Configuration { NonDegenerate, Degenerate };

inline int mode_count(Configuration c) {
  return c == Configuration::NonDegenerate ? 4 : 2;
}

inline const char* to_string(Configuration c) {
  return c == Configuration::NonDegenerate ? "nondegenerate" : "degenerate";
}

inline Configuration configuration_from_string(const std::string& s) {
  if (s == "nondegenerate" || s == "noncollinear") return Configuration::NonDegenerate;
  if (s == "degenerate" || s == "collinear") return Configuration::Degenerate;
  throw std::invalid_argument("unknown configuration: " + s);
}

class OpaParams {
 public:
  OpaParams(double gain, double phase_phi) : gain_(gain), phi_(phase_phi) {
    if (!std::isfinite(gain) || gain < 0.0)
      throw std::invalid_argument("gain must be finite and >= 0");
    if (!std::isfinite(phase_phi))
      throw std::invalid_argument("phase_phi must be finite");
    c_ = std::cosh(gain);
    s_ = std::sinh(gain);
  }

  double gain() const { return gain_; }
  double phase_phi() const { return phi_; }
  double cosh_c() const { return c_; }
  double sinh_s() const { return s_; }
  double gamma_ratio() const { return s_ / c_; }
  double mean_photons() const { return s_ * s_; }

 private:
  double gain_, phi_, c_, s_;
};

inline OpaParams derive_params(double gain, double phase_phi) {
  return OpaParams(gain, phase_phi);
}

// gain such that mean_photons == nbar (S = sqrt(nbar)).
inline double gain_for_mean_photons(double nbar) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
  return std::asinh(std::sqrt(nbar));
}

struct ThermalDistribution {
  std::vector<double> weights;  // P_n = Gamma^(2n)/C^2, n = 0..n_max
  double tail_bound;            // Gamma^(2(n_max+1)) >= sum of dropped weights
};

inline ThermalDistribution thermal_weights(const OpaParams& p, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const double g2 = p.gamma_ratio() * p.gamma_ratio();
  const double p0 = 1.0 / (p.cosh_c() * p.cosh_c());
  ThermalDistribution out;
  out.weights.resize(static_cast<size_t>(n_max) + 1);
  double w = p0;
  for (int n = 0; n <= n_max; ++n) {
    out.weights[static_cast<size_t>(n)] = w;
    w *= g2;
  }
  out.tail_bound = std::pow(g2, n_max + 1);
  return out;
}

}  // namespace qopa
