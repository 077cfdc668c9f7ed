#pragma once
// Closed-form Wigner function of the OPA output, characteristic function,
// grids/marginals, normalization quadrature, and the Schroedinger-cat
// criteria report.
//
// Everything is evaluated in the squeezed coordinates gamma_{A/B,+-}.  In the
// real coordinate vector x built from their Re/Im parts the Wigner function is
// a Gaussian times a quadratic form,
//
//     W(x) = -K exp(-|x|^2) (1 - |L.x|^2),
//
// with K = 16/pi^4 (non-degenerate, 8 real coords) or 4/pi^2 (degenerate,
// 4 real coords; the gamma_B's are conjugates of the gamma_A's there) and L a
// complex coefficient vector carrying the injection phase Phi.  The physical
// measure is d(phase space) = jac * dx with jac = 1/16 resp. 1/4, under which
// the integral of W is exactly 1.  The degenerate prefactor 4/pi^2 is the
// displaced-parity value for two modes; it is what the propagator oracle
// reproduces (the per-pair 4/pi^2 envelope convention of the non-degenerate
// formula corresponds to it after the pi^2/4 rescaling mentioned alongside
// the degenerate case).
//
// Marginals: integrating out any coordinate subset I of a Gaussian x quadratic
// gives another Gaussian x quadratic via second moments,
//     m(x_J) = jac K pi^(|I|/2) e^(-|x_J|^2) (x_J^T M_JJ x_J + tr(M_II)/2 - 1)
// with M = Re(conj(L) L^T).

#include <array>
#include <cmath>
#include <limits>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qopa/gauss_hermite.hpp"
#include "qopa/params.hpp"

namespace qopa {

struct PhasePoint {
  Configuration configuration = Configuration::NonDegenerate;
  // NonDegenerate: alpha_j conjugate to the OPA_A pair (1perp, 2par),
  // beta_j to the OPA_B pair (1par, 2perp).  Degenerate: alpha1, beta1 only.
  std::complex<double> alpha1{0, 0}, alpha2{0, 0}, beta1{0, 0}, beta2{0, 0};
};

struct SqueezedCoords {
  std::complex<double> a_plus, a_minus, b_plus, b_minus;
};

inline SqueezedCoords squeezed_coords(const OpaParams& p, const PhasePoint& pt) {
  const double em = std::exp(-p.gain()), ep = std::exp(p.gain());
  const std::complex<double> I(0, 1);
  SqueezedCoords c;
  if (pt.configuration == Configuration::NonDegenerate) {
    c.a_plus = (pt.alpha1 + std::conj(pt.alpha2)) * em;
    c.a_minus = I * (pt.alpha1 - std::conj(pt.alpha2)) * ep;
    c.b_plus = (pt.beta1 + std::conj(pt.beta2)) * em;
    c.b_minus = I * (pt.beta1 - std::conj(pt.beta2)) * ep;
  } else {
    c.a_plus = (pt.alpha1 + std::conj(pt.beta1)) * em;
    c.a_minus = I * (pt.alpha1 - std::conj(pt.beta1)) * ep;
    c.b_plus = (pt.beta1 + std::conj(pt.alpha1)) * em;
    c.b_minus = I * (pt.beta1 - std::conj(pt.alpha1)) * ep;
  }
  return c;
}

struct WignerValue {
  double value = 0.0;
  double envelope_a = 0.0;  // Gaussian envelope factors, value = -a*b*(1-s)
  double envelope_b = 0.0;
  double superposition_modulus_sq = 0.0;
};

inline int squeezed_dim(Configuration c) {
  return c == Configuration::NonDegenerate ? 8 : 4;
}

inline double wigner_prefactor(Configuration c) {
  return c == Configuration::NonDegenerate ? 16.0 / std::pow(M_PI, 4) : 4.0 / (M_PI * M_PI);
}

inline double measure_jacobian(Configuration c) {
  return c == Configuration::NonDegenerate ? 1.0 / 16.0 : 1.0 / 4.0;
}

inline std::string squeezed_axis_name(Configuration c, int coord) {
  static const char* nd[8] = {"ReA+", "ImA+", "ReA-", "ImA-", "ReB+", "ImB+", "ReB-", "ImB-"};
  static const char* dg[4] = {"Re+", "Im+", "Re-", "Im-"};
  if (coord < 0 || coord >= squeezed_dim(c)) throw std::invalid_argument("axis out of range");
  return c == Configuration::NonDegenerate ? nd[coord] : dg[coord];
}

inline int squeezed_axis_index(Configuration c, const std::string& name) {
  for (int k = 0; k < squeezed_dim(c); ++k)
    if (squeezed_axis_name(c, k) == name) return k;
  throw std::invalid_argument("unknown squeezed axis: " + name);
}

// Coefficients of e^{i Phi} Delta_A + Delta_B as a linear form in x, where
// Delta = (gamma_+ - i gamma_-)/sqrt(2).
inline std::vector<std::complex<double>> superposition_coefficients(Configuration c, double phi) {
  const std::complex<double> e = std::polar(1.0, phi), I(0, 1);
  const double r = 1.0 / std::sqrt(2.0);
  if (c == Configuration::NonDegenerate)
    return {e * r, e * I * r, e * (-I) * r, e * r, r, I * r, -I * r, r};
  // Degenerate: Delta_B is built from the conjugated coordinates.
  return {(e + 1.0) * r, I * (e - 1.0) * r, -I * (e + 1.0) * r, (e - 1.0) * r};
}

inline std::vector<double> superposition_quadratic_form(Configuration c, double phi) {
  const auto L = superposition_coefficients(c, phi);
  const int n = static_cast<int>(L.size());
  std::vector<double> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i) * n + j] = (std::conj(L[static_cast<size_t>(i)]) * L[static_cast<size_t>(j)]).real();
  return m;
}

inline WignerValue wigner_from_squeezed(const OpaParams& p, Configuration c,
                                        const std::vector<double>& x) {
  const int n = squeezed_dim(c);
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("squeezed coordinate vector has wrong dimension");
  const auto L = superposition_coefficients(c, p.phase_phi());
  double s = 0.0;
  std::complex<double> lx{0, 0};
  for (int k = 0; k < n; ++k) {
    s += x[static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
    lx += L[static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
  }
  WignerValue w;
  w.superposition_modulus_sq = std::norm(lx);
  if (c == Configuration::NonDegenerate) {
    double sa = 0.0, sb = 0.0;
    for (int k = 0; k < 4; ++k) {
      sa += x[static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
      sb += x[static_cast<size_t>(k + 4)] * x[static_cast<size_t>(k + 4)];
    }
    w.envelope_a = 4.0 / (M_PI * M_PI) * std::exp(-sa);
    w.envelope_b = 4.0 / (M_PI * M_PI) * std::exp(-sb);
  } else {
    w.envelope_a = w.envelope_b = 2.0 / M_PI * std::exp(-0.5 * s);
  }
  w.value = -w.envelope_a * w.envelope_b * (1.0 - w.superposition_modulus_sq);
  return w;
}

inline std::vector<double> squeezed_vector(Configuration c, const SqueezedCoords& sc) {
  if (c == Configuration::NonDegenerate)
    return {sc.a_plus.real(), sc.a_plus.imag(), sc.a_minus.real(), sc.a_minus.imag(),
            sc.b_plus.real(), sc.b_plus.imag(), sc.b_minus.real(), sc.b_minus.imag()};
  return {sc.a_plus.real(), sc.a_plus.imag(), sc.a_minus.real(), sc.a_minus.imag()};
}

inline WignerValue wigner_closed_form(const OpaParams& p, const PhasePoint& pt) {
  return wigner_from_squeezed(p, pt.configuration,
                              squeezed_vector(pt.configuration, squeezed_coords(p, pt)));
}

// --- characteristic function (symmetric ordering) -------------------------
//
// eta_j conjugate to the OPA_A modes (1perp, 2par), xi_j to the OPA_B modes
// (1par, 2perp).  Degenerate: eta -> 1perp, xi -> 1par (pass eta2 = xi2 = 0).
inline std::complex<double> characteristic_function(const OpaParams& p, Configuration cfg,
                                                    std::complex<double> eta1,
                                                    std::complex<double> eta2,
                                                    std::complex<double> xi1,
                                                    std::complex<double> xi2) {
  const double C = p.cosh_c(), S = p.sinh_s();
  const std::complex<double> e = std::polar(1.0, p.phase_phi());
  std::complex<double> e1t, e2t, x1t, x2t;
  if (cfg == Configuration::NonDegenerate) {
    e1t = eta1 * C - std::conj(eta2) * S;
    e2t = eta2 * C - std::conj(eta1) * S;
    x1t = xi1 * C - std::conj(xi2) * S;
    x2t = xi2 * C - std::conj(xi1) * S;
  } else {
    // single amplifier couples the two polarization modes: eta pairs with xi
    e1t = eta1 * C - std::conj(xi1) * S;
    x1t = xi1 * C - std::conj(eta1) * S;
    e2t = x2t = 0.0;
  }
  const double quad = std::norm(e1t) + std::norm(e2t) + std::norm(x1t) + std::norm(x2t);
  return (1.0 - 0.5 * std::norm(e * e1t + x1t)) * std::exp(-0.5 * quad);
}

// --- grids ----------------------------------------------------------------

enum class GridMode { Slice, Marginal };

struct GridAxis {
  int coord = 0;  // squeezed-coordinate index
  double min = -3.0, max = 3.0;
  int count = 2;
};

struct GridSpec {
  Configuration configuration = Configuration::NonDegenerate;
  GridMode mode = GridMode::Marginal;
  GridAxis x_axis, y_axis;
  // Slice mode: values of the non-swept coordinates (full-dimension vector,
  // swept entries ignored; empty = all zero).  Ignored for marginals.
  std::vector<double> fixed;
};

struct GridSample {
  double x = 0.0, y = 0.0;
  WignerValue w;
};

struct PhaseGrid {
  GridSpec spec;
  double gain = 0.0, phi = 0.0;
  std::vector<GridSample> samples;  // row-major, x fastest
  double min_value = 0.0;
  size_t min_index = 0;
};

namespace detail {

struct MarginalForm {
  // m(x_J) = constant * e^{-|x_J|^2} * (1 - deficit(x_J)),
  // deficit = x_J^T M_JJ x_J + tr(M_II)/2
  double constant = 0.0;
  double trace_half = 0.0;
  std::vector<int> kept;
  std::vector<double> m_kept;  // |kept| x |kept| block of M
};

inline MarginalForm marginal_form(const OpaParams& p, Configuration c,
                                  const std::vector<int>& kept) {
  const int n = squeezed_dim(c);
  std::vector<char> is_kept(static_cast<size_t>(n), 0);
  for (int k : kept) {
    if (k < 0 || k >= n) throw std::invalid_argument("kept axis out of range");
    if (is_kept[static_cast<size_t>(k)]) throw std::invalid_argument("duplicate kept axis");
    is_kept[static_cast<size_t>(k)] = 1;
  }
  const auto M = superposition_quadratic_form(c, p.phase_phi());
  MarginalForm f;
  f.kept = kept;
  const int ni = n - static_cast<int>(kept.size());
  f.constant = measure_jacobian(c) * wigner_prefactor(c) * std::pow(M_PI, 0.5 * ni);
  for (int i = 0; i < n; ++i)
    if (!is_kept[static_cast<size_t>(i)])
      f.trace_half += 0.5 * M[static_cast<size_t>(i) * n + i];
  const int nk = static_cast<int>(kept.size());
  f.m_kept.resize(static_cast<size_t>(nk) * nk);
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      f.m_kept[static_cast<size_t>(a) * nk + b] =
          M[static_cast<size_t>(kept[static_cast<size_t>(a)]) * n + kept[static_cast<size_t>(b)]];
  return f;
}

inline double marginal_eval(const MarginalForm& f, const std::vector<double>& xk) {
  const int nk = static_cast<int>(f.kept.size());
  if (static_cast<int>(xk.size()) != nk)
    throw std::invalid_argument("kept-coordinate vector has wrong dimension");
  double s = 0.0, quad = 0.0;
  for (int a = 0; a < nk; ++a) {
    s += xk[static_cast<size_t>(a)] * xk[static_cast<size_t>(a)];
    for (int b = 0; b < nk; ++b)
      quad += xk[static_cast<size_t>(a)] * f.m_kept[static_cast<size_t>(a) * nk + b] * xk[static_cast<size_t>(b)];
  }
  return -f.constant * std::exp(-s) * (1.0 - quad - f.trace_half);
}

}  // namespace detail

// Marginal density over the kept squeezed coordinates (all others integrated
// against the physical measure); integrates to 1 over the kept coordinates.
inline double marginal_value(const OpaParams& p, Configuration c,
                             const std::vector<int>& kept, const std::vector<double>& xk) {
  return detail::marginal_eval(detail::marginal_form(p, c, kept), xk);
}

// Integral of W over all of phase space; with no kept axes the marginal
// machinery reduces to the number int W = 1.
inline double marginal_total_integral(const OpaParams& p, Configuration c) {
  return detail::marginal_eval(detail::marginal_form(p, c, {}), {});
}

inline PhaseGrid wigner_grid(const OpaParams& p, const GridSpec& spec,
                             size_t max_points = 4'000'000) {
  const int n = squeezed_dim(spec.configuration);
  if (spec.x_axis.count < 2 || spec.y_axis.count < 2)
    throw std::invalid_argument("grid needs at least 2 samples per axis");
  if (!(spec.x_axis.min < spec.x_axis.max) || !(spec.y_axis.min < spec.y_axis.max))
    throw std::invalid_argument("grid ranges must be finite and increasing");
  if (spec.x_axis.coord == spec.y_axis.coord)
    throw std::invalid_argument("grid axes must differ");
  const size_t total = static_cast<size_t>(spec.x_axis.count) * static_cast<size_t>(spec.y_axis.count);
  if (total > max_points)
    throw std::invalid_argument("grid size " + std::to_string(total) + " exceeds cap " +
                                std::to_string(max_points));

  PhaseGrid g;
  g.spec = spec;
  g.gain = p.gain();
  g.phi = p.phase_phi();
  g.samples.reserve(total);

  std::vector<double> base(static_cast<size_t>(n), 0.0);
  if (spec.mode == GridMode::Slice && !spec.fixed.empty()) {
    if (static_cast<int>(spec.fixed.size()) != n)
      throw std::invalid_argument("fixed vector must have the full squeezed dimension");
    base = spec.fixed;
  }
  detail::MarginalForm mf;
  if (spec.mode == GridMode::Marginal)
    mf = detail::marginal_form(p, spec.configuration, {spec.x_axis.coord, spec.y_axis.coord});

  double mn = std::numeric_limits<double>::infinity();
  size_t mn_idx = 0;
  for (int iy = 0; iy < spec.y_axis.count; ++iy) {
    const double y = spec.y_axis.min +
                     (spec.y_axis.max - spec.y_axis.min) * iy / (spec.y_axis.count - 1);
    for (int ix = 0; ix < spec.x_axis.count; ++ix) {
      const double x = spec.x_axis.min +
                       (spec.x_axis.max - spec.x_axis.min) * ix / (spec.x_axis.count - 1);
      GridSample smp;
      smp.x = x;
      smp.y = y;
      if (spec.mode == GridMode::Slice) {
        std::vector<double> v = base;
        v[static_cast<size_t>(spec.x_axis.coord)] = x;
        v[static_cast<size_t>(spec.y_axis.coord)] = y;
        smp.w = wigner_from_squeezed(p, spec.configuration, v);
      } else {
        // decompose the marginal so value = -env_a*env_b*(1-deficit) still holds
        const double s = x * x + y * y;
        double quad = x * (mf.m_kept[0] * x + mf.m_kept[1] * y) +
                      y * (mf.m_kept[2] * x + mf.m_kept[3] * y);
        smp.w.superposition_modulus_sq = quad + mf.trace_half;
        smp.w.envelope_a = smp.w.envelope_b = std::sqrt(mf.constant * std::exp(-s));
        smp.w.value = -mf.constant * std::exp(-s) * (1.0 - smp.w.superposition_modulus_sq);
      }
      if (smp.w.value < mn) {
        mn = smp.w.value;
        mn_idx = g.samples.size();
      }
      g.samples.push_back(smp);
    }
  }
  g.min_value = mn;
  g.min_index = mn_idx;
  return g;
}

// Gauss-Hermite check that int W d(phase space) = 1.  The integrand is a
// Gaussian times a degree-2 polynomial, exact for >= 2 nodes; anything below
// 3 is refused as under the documented exactness margin.
inline double wigner_normalization(const OpaParams& p, Configuration c, int nodes_per_dim = 5) {
  if (nodes_per_dim < 3)
    throw std::invalid_argument("quadrature order below exactness threshold");
  const int n = squeezed_dim(c);
  const auto q = gauss_hermite(nodes_per_dim);
  const auto M = superposition_quadratic_form(c, p.phase_phi());
  const double K = wigner_prefactor(c), jac = measure_jacobian(c);
  double total = 0.0;
  std::vector<int> idx(static_cast<size_t>(n), 0);
  std::vector<double> x(static_cast<size_t>(n));
  while (true) {
    double wgt = 1.0;
    for (int k = 0; k < n; ++k) {
      x[static_cast<size_t>(k)] = q.nodes[static_cast<size_t>(idx[static_cast<size_t>(k)])];
      wgt *= q.weights[static_cast<size_t>(idx[static_cast<size_t>(k)])];
    }
    double quad = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        quad += x[static_cast<size_t>(i)] * M[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
    total += wgt * -(1.0 - quad);
    int k = 0;
    for (; k < n; ++k) {
      if (++idx[static_cast<size_t>(k)] < nodes_per_dim) break;
      idx[static_cast<size_t>(k)] = 0;
    }
    if (k == n) break;
  }
  return jac * K * total;
}

// Quadrature of one vacuum envelope W-bar over its own pair of phase-space
// variables (4 squeezed coordinates, jacobian 1/4); equals 1.
inline double envelope_normalization(int nodes_per_dim = 5) {
  if (nodes_per_dim < 3)
    throw std::invalid_argument("quadrature order below exactness threshold");
  const auto q = gauss_hermite(nodes_per_dim);
  double one_dim = 0.0;
  for (size_t k = 0; k < q.weights.size(); ++k) one_dim += q.weights[k];
  return 0.25 * 4.0 / (M_PI * M_PI) * std::pow(one_dim, 4);
}

// --- figure-style preset and cat criteria ---------------------------------

// Plane of the published surface plots.  For real alpha, beta the caption's
// X = (alpha+beta*)e^{-g} is Re gamma_{A+} and its Y = i(beta-alpha*)e^{+g}
// equals gamma_{B-} up to the factor i, so the plotted real coordinate is
// Im gamma_{B-} (degenerate: gamma_{B-} = conj(gamma_{A-}), i.e. the Im-
// coordinate up to sign).  This is the only axis pairing whose cross term
// distinguishes the three published panels: Phi = 0 and pi are mirror images
// and pi/2 is symmetric.  The reduction of the remaining coordinates is not
// stated alongside the plots; the preset marginalizes them (slice mode with
// the rest pinned to 0 is available separately).
inline GridSpec figure_plane_spec(Configuration c, GridMode mode = GridMode::Marginal,
                                  int count = 81, double extent = 3.0) {
  GridSpec s;
  s.configuration = c;
  s.mode = mode;
  s.x_axis = {0, -extent, extent, count};
  s.y_axis = {c == Configuration::NonDegenerate ? 7 : 3, -extent, extent, count};
  return s;
}

struct CatReport {
  double min_value = 0.0;            // refined global minimum of W
  std::vector<double> min_location;  // squeezed coordinates of the minimum
  double closed_form_min = 0.0;      // -K, attained at the origin
  bool negativity = false;           // criterion (b)
  bool fringe_capable = false;       // criterion (a)
  double max_cross_term = 0.0;       // max |2 Re e^{i Phi} Delta_A Delta_B^*| seen
  double peak_separation = 0.0;      // criterion (c), in the marginal plane
  double peak_width_fwhm = 0.0;
  double separation_ratio = 0.0;
  bool peaks_resolved = false;
  bool microscopic = false;          // mean photon number < 1
};

inline CatReport cat_criteria(const OpaParams& p, Configuration c) {
  CatReport rep;
  const int n = squeezed_dim(c);
  rep.closed_form_min = -wigner_prefactor(c);
  rep.microscopic = p.mean_photons() < 1.0;

  // (b) grid search over the preset plane, then pattern-search refinement in
  // the full coordinate space.  The quadratic form is positive semidefinite,
  // so the true minimum sits at the origin; the search must find it.
  const GridSpec plane = figure_plane_spec(c, GridMode::Slice, 41, 3.0);
  std::vector<double> best(static_cast<size_t>(n), 0.0);
  double best_val = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < plane.y_axis.count; ++iy)
    for (int ix = 0; ix < plane.x_axis.count; ++ix) {
      std::vector<double> v(static_cast<size_t>(n), 0.0);
      v[static_cast<size_t>(plane.x_axis.coord)] =
          plane.x_axis.min + (plane.x_axis.max - plane.x_axis.min) * ix / (plane.x_axis.count - 1);
      v[static_cast<size_t>(plane.y_axis.coord)] =
          plane.y_axis.min + (plane.y_axis.max - plane.y_axis.min) * iy / (plane.y_axis.count - 1);
      const double w = wigner_from_squeezed(p, c, v).value;
      if (w < best_val) {
        best_val = w;
        best = v;
      }
    }
  double step = 0.25;
  while (step > 1e-10) {
    bool improved = false;
    for (int k = 0; k < n; ++k) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> v = best;
        v[static_cast<size_t>(k)] += sgn * step;
        const double w = wigner_from_squeezed(p, c, v).value;
        if (w < best_val) {
          best_val = w;
          best = v;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  rep.min_value = best_val;
  rep.min_location = best;
  rep.negativity = rep.min_value < 0.0;

  // (a) fringe capability: the interference cross term 2 Re[e^{i Phi}
  // Delta_A Delta_B^*] must not vanish identically.
  const auto L = superposition_coefficients(c, p.phase_phi());
  const int half = n / 2;
  for (double xa = -2.0; xa <= 2.0; xa += 0.5)
    for (double xb = -2.0; xb <= 2.0; xb += 0.5) {
      std::complex<double> da{0, 0}, db{0, 0};
      // scan one coordinate per branch; enough to witness a nonzero cross term
      if (c == Configuration::NonDegenerate) {
        da = L[0] * xa;
        db = L[static_cast<size_t>(half)] * xb;
      } else {
        // both Deltas share coordinates in the degenerate case; split L
        const double r = 1.0 / std::sqrt(2.0);
        const std::complex<double> e = std::polar(1.0, p.phase_phi());
        da = e * r * xa;
        db = r * xa;
        da += e * std::complex<double>(0, 1) * r * xb;
        db += std::complex<double>(0, -1) * r * xb;
      }
      rep.max_cross_term = std::max(rep.max_cross_term, std::abs(2.0 * (da * std::conj(db)).real()));
    }
  rep.fringe_capable = rep.max_cross_term > 1e-12;

  // (c) peak separation vs width in the preset marginal plane.  Along the
  // dominant eigendirection of the kept 2x2 block the marginal is
  // const * e^{-r^2} (lam r^2 - (1 - t)); its positive peaks sit at
  // r*^2 = 1 + (1-t)/lam with height const * lam * e^{-r*^2}.  Width is the
  // full width at half prominence (midway between the peak and the saddle at
  // the origin), the usual resolvability measure for overlapping peaks; when
  // the saddle is at or below zero this coincides with the half-max width.
  const GridSpec mplane = figure_plane_spec(c, GridMode::Marginal);
  const auto mf = detail::marginal_form(p, c, {mplane.x_axis.coord, mplane.y_axis.coord});
  const double a = mf.m_kept[0], b = mf.m_kept[1], d = mf.m_kept[3];
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  const double lam = 0.5 * (a + d) + disc;
  const double one_minus_t = 1.0 - mf.trace_half;
  const double rstar_sq = lam > 1e-14 ? 1.0 + one_minus_t / lam : -1.0;
  if (rstar_sq > 1e-12) {
    const double rstar = std::sqrt(rstar_sq);
    rep.peak_separation = 2.0 * rstar;
    auto profile = [&](double r) { return std::exp(-r * r) * (lam * r * r - one_minus_t); };
    const double peak = profile(rstar);
    const double saddle = std::max(profile(0.0), 0.0);
    const double level = 0.5 * (peak + saddle);
    auto f = [&](double r) { return profile(r) - level; };
    auto bisect = [&](double lo, double hi) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(lo) * f(mid) <= 0.0)
          hi = mid;
        else
          lo = mid;
      }
      return 0.5 * (lo + hi);
    };
    const double rl = bisect(0.0, rstar);
    const double rr = bisect(rstar, rstar + 12.0);
    rep.peak_width_fwhm = rr - rl;
    rep.separation_ratio = rep.peak_width_fwhm > 0.0 ? rep.peak_separation / rep.peak_width_fwhm : 0.0;
    rep.peaks_resolved = rep.separation_ratio > 1.0 && peak > saddle;
  }
  return rep;
}

}  // namespace qopa
