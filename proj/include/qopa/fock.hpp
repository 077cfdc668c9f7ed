#pragma once
// Brute-force truncated Fock-space engine.  Dense state vectors over
// mode_count modes with per-mode cutoff d; index = occ[0]*d^(m-1) + ... +
// occ[m-1] (mode 0 most significant).  Used purely as an independent oracle
// for the closed forms elsewhere in the library.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qopa/params.hpp"

namespace qopa {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct FockRegister {
  int mode_count = 0;
  int cutoff = 0;
  CVec state;

  long dim() const { return state.size(); }

  long index_of(const std::vector<int>& occ) const {
    if (static_cast<int>(occ.size()) != mode_count)
      throw std::invalid_argument("occupation tuple has wrong mode count");
    long idx = 0;
    for (int k = 0; k < mode_count; ++k) {
      if (occ[static_cast<size_t>(k)] < 0 || occ[static_cast<size_t>(k)] >= cutoff)
        throw std::invalid_argument("occupation out of cutoff range");
      idx = idx * cutoff + occ[static_cast<size_t>(k)];
    }
    return idx;
  }

  std::vector<int> occ_of(long idx) const {
    std::vector<int> occ(static_cast<size_t>(mode_count));
    for (int k = mode_count - 1; k >= 0; --k) {
      occ[static_cast<size_t>(k)] = static_cast<int>(idx % cutoff);
      idx /= cutoff;
    }
    return occ;
  }
};

inline FockRegister make_register(int mode_count, int cutoff,
                                  const std::vector<int>& occupations) {
  if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
  FockRegister r;
  r.mode_count = mode_count;
  r.cutoff = cutoff;
  long dim = 1;
  for (int k = 0; k < mode_count; ++k) dim *= cutoff;
  r.state = CVec::Zero(dim);
  r.state[r.index_of(occupations)] = 1.0;
  return r;
}

// 2^{-1/2}(|occ_a> + e^{i phi}|occ_b>), the injected-qubit inputs.
inline FockRegister make_register_superposition(int mode_count, int cutoff,
                                                const std::vector<int>& occ_a,
                                                const std::vector<int>& occ_b,
                                                double phi) {
  FockRegister r = make_register(mode_count, cutoff, occ_a);
  r.state[r.index_of(occ_a)] = 1.0 / std::sqrt(2.0);
  r.state[r.index_of(occ_b)] += std::polar(1.0 / std::sqrt(2.0), phi);
  return r;
}

inline CMat annihilation_matrix(int d) {
  CMat a = CMat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline CMat creation_matrix(int d) { return annihilation_matrix(d).adjoint(); }

inline CMat number_matrix(int d) {
  CMat n = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

namespace detail {

// exp(A) for anti-Hermitian A via eigendecomposition of the Hermitian iA.
inline CMat exp_antihermitian(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(Cplx(0, 1) * a);
  const Eigen::VectorXd& w = es.eigenvalues();
  CVec ph(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) ph[k] = std::polar(1.0, -w[k]);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

inline CMat displacement_matrix(int d, Cplx alpha) {
  const CMat a = annihilation_matrix(d);
  return detail::exp_antihermitian(alpha * a.adjoint() - std::conj(alpha) * a);
}

// exp[g(a_i^dag a_j^dag - a_i a_j)] as a d^2 x d^2 matrix (i the slow index).
// The exponential of the truncated generator is exactly unitary at any
// cutoff, so unitarity cannot detect truncation; instead the squeezed-vacuum
// column is compared against its closed form Gamma^n / C, whose truncation
// error scales like Gamma^d.  Throws when the cutoff is too small for the
// gain.
inline CMat two_mode_squeeze_matrix(int d, double gain, double accuracy_tol = 1e-4) {
  // Generator in the product basis |n_i, n_j> (i slow):
  //   <n_i+1, n_j+1| gen |n_i, n_j> = g sqrt((n_i+1)(n_j+1)), minus adjoint.
  CMat gen = CMat::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
  for (int ni = 0; ni + 1 < d; ++ni)
    for (int nj = 0; nj + 1 < d; ++nj) {
      const double w = gain * std::sqrt((ni + 1.0) * (nj + 1.0));
      const long lo = static_cast<long>(ni) * d + nj;
      const long hi = static_cast<long>(ni + 1) * d + nj + 1;
      gen(hi, lo) += w;
      gen(lo, hi) -= w;
    }
  CMat u = detail::exp_antihermitian(gen);
  // column 0 = U|0,0>, closed form Gamma^n / C on the diagonal tuples.
  const double C = std::cosh(gain), gam = std::tanh(gain);
  double dev = 0.0;
  for (int n = 0; n < d; ++n)
    dev = std::max(dev, std::abs(u(static_cast<long>(n) * d + n, 0) - std::pow(gam, n) / C));
  if (dev > accuracy_tol) {
    const int suggest = static_cast<int>(std::ceil(std::log(1e-10) / (2.0 * std::log(gam)))) + 2;
    throw std::runtime_error(
        "squeeze propagator inaccurate at this cutoff; suggested cutoff >= " +
        std::to_string(suggest));
  }
  return u;
}

// Smallest d with Gamma^(2d) < tail_tol.  Refuses configurations whose dense
// register would be unreasonably large.
inline int suggested_cutoff(double gain, int mode_count, double tail_tol = 1e-10,
                            long max_amplitudes = 6'000'000) {
  if (gain <= 0.0) return 2;
  const double gam = std::tanh(gain);
  int d = static_cast<int>(std::ceil(std::log(tail_tol) / (2.0 * std::log(gam))));
  d = std::max(d, 2);
  double amps = std::pow(static_cast<double>(d), mode_count);
  if (amps > static_cast<double>(max_amplitudes))
    throw std::runtime_error("oracle cutoff " + std::to_string(d) + " over " +
                             std::to_string(mode_count) +
                             " modes is infeasible; use the closed-form path");
  return d;
}

inline void apply_one_mode(FockRegister& r, int mode, const CMat& m) {
  const int d = r.cutoff;
  if (m.rows() != d || m.cols() != d) throw std::invalid_argument("operator dimension mismatch");
  long stride = 1;
  for (int k = r.mode_count - 1; k > mode; --k) stride *= d;
  const long outer = r.dim() / (stride * d);
  CVec v(d), w(d);
  for (long o = 0; o < outer; ++o) {
    for (long s = 0; s < stride; ++s) {
      const long base = o * stride * d + s;
      for (int n = 0; n < d; ++n) v[n] = r.state[base + n * stride];
      w.noalias() = m * v;
      for (int n = 0; n < d; ++n) r.state[base + n * stride] = w[n];
    }
  }
}

// Applies a d^2 x d^2 operator on modes (i, j), i != j, i the slow index of
// the operator's row/column ordering.
inline void apply_two_mode(FockRegister& r, int mode_i, int mode_j, const CMat& m) {
  const int d = r.cutoff;
  if (mode_i == mode_j) throw std::invalid_argument("mode pair must be distinct");
  if (m.rows() != static_cast<long>(d) * d) throw std::invalid_argument("operator dimension mismatch");
  std::vector<long> stride(static_cast<size_t>(r.mode_count));
  long s = 1;
  for (int k = r.mode_count - 1; k >= 0; --k) {
    stride[static_cast<size_t>(k)] = s;
    s *= d;
  }
  const long si = stride[static_cast<size_t>(mode_i)];
  const long sj = stride[static_cast<size_t>(mode_j)];
  std::vector<int> rest;
  for (int k = 0; k < r.mode_count; ++k)
    if (k != mode_i && k != mode_j) rest.push_back(k);
  long nblocks = 1;
  for (int k : rest) { (void)k; nblocks *= d; }

  CVec v(static_cast<long>(d) * d), w(static_cast<long>(d) * d);
  for (long b = 0; b < nblocks; ++b) {
    long base = 0, t = b;
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
      base += (t % d) * stride[static_cast<size_t>(*it)];
      t /= d;
    }
    for (int ni = 0; ni < d; ++ni)
      for (int nj = 0; nj < d; ++nj)
        v[static_cast<long>(ni) * d + nj] = r.state[base + ni * si + nj * sj];
    w.noalias() = m * v;
    for (int ni = 0; ni < d; ++ni)
      for (int nj = 0; nj < d; ++nj)
        r.state[base + ni * si + nj * sj] = w[static_cast<long>(ni) * d + nj];
  }
}

inline Cplx overlap(const FockRegister& a, const FockRegister& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("register dimension mismatch");
  return a.state.dot(b.state);  // conjugates a
}

inline double norm_squared(const FockRegister& r) { return r.state.squaredNorm(); }

inline Cplx expectation_one_mode(const FockRegister& r, int mode, const CMat& m) {
  FockRegister t = r;
  apply_one_mode(t, mode, m);
  return r.state.dot(t.state);
}

inline double total_photon_number(const FockRegister& r) {
  const CMat n = number_matrix(r.cutoff);
  double tot = 0.0;
  for (int k = 0; k < r.mode_count; ++k) {
    Cplx e = expectation_one_mode(r, k, n);
    if (std::abs(e.imag()) > 1e-12)
      throw std::runtime_error("Hermitian expectation came out complex");
    tot += e.real();
  }
  return tot;
}

// Propagated output register: injected qubit then the squeeze propagators.
// Non-degenerate: input 2^{-1/2}(|1>_{1perp} + e^{i Phi}|1>_{1par}) (x) vacuum,
// amplifier A on (1perp,2par) = modes (0,3), amplifier B on (1par,2perp) = (1,2).
// Degenerate: same qubit on (1perp,1par), one amplifier on modes (0,1).
inline FockRegister opa_output_register(const OpaParams& p, Configuration cfg, int cutoff) {
  const int m = mode_count(cfg);
  std::vector<int> occ_a(static_cast<size_t>(m), 0), occ_b(static_cast<size_t>(m), 0);
  occ_a[0] = 1;
  occ_b[1] = 1;
  FockRegister r = make_register_superposition(m, cutoff, occ_a, occ_b, p.phase_phi());
  const CMat u = two_mode_squeeze_matrix(cutoff, p.gain());
  if (cfg == Configuration::NonDegenerate) {
    apply_two_mode(r, 0, 3, u);
    apply_two_mode(r, 1, 2, u);
  } else {
    apply_two_mode(r, 0, 1, u);
  }
  return r;
}

// Vacuum-injection reference (squeezed vacuum only).
inline FockRegister opa_vacuum_register(const OpaParams& p, Configuration cfg, int cutoff) {
  const int m = mode_count(cfg);
  FockRegister r = make_register(m, cutoff, std::vector<int>(static_cast<size_t>(m), 0));
  const CMat u = two_mode_squeeze_matrix(cutoff, p.gain());
  if (cfg == Configuration::NonDegenerate) {
    apply_two_mode(r, 0, 3, u);
    apply_two_mode(r, 1, 2, u);
  } else {
    apply_two_mode(r, 0, 1, u);
  }
  return r;
}

// W(alpha) per mode-pair convention of the closed forms: (2/pi)^m times the
// parity expectation of the displaced state.
inline double wigner_by_displacement(const FockRegister& r, const std::vector<Cplx>& alphas) {
  if (static_cast<int>(alphas.size()) != r.mode_count)
    throw std::invalid_argument("one displacement per mode required");
  FockRegister t = r;
  for (int k = 0; k < r.mode_count; ++k)
    apply_one_mode(t, k, displacement_matrix(r.cutoff, -alphas[static_cast<size_t>(k)]));
  // parity expectation = sum (-1)^(total occupation) |amp|^2
  double par = 0.0;
  for (long idx = 0; idx < t.dim(); ++idx) {
    long tot = 0, q = idx;
    for (int k = 0; k < t.mode_count; ++k) { tot += q % t.cutoff; q /= t.cutoff; }
    const double sign = (tot % 2 == 0) ? 1.0 : -1.0;
    par += sign * std::norm(t.state[idx]);
  }
  return par * std::pow(2.0 / M_PI, r.mode_count);
}

}  // namespace qopa
