#include "fock_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nfg::oracle {
namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("Fock cutoff must be at least 2");
}

FockDensityMatrix pure_state(int modes, int cutoff, const std::vector<std::pair<Eigen::Index, Complex>>& amplitudes) {
  Eigen::Index dim = 1;
  for (int m = 0; m < modes; ++m) dim *= cutoff;
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(amplitudes.size() * amplitudes.size());
  for (const auto& [i, ai] : amplitudes)
    for (const auto& [j, aj] : amplitudes) trip.emplace_back(i, j, ai * std::conj(aj));
  SparseDm m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return FockDensityMatrix(modes, cutoff, std::move(m));
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(int modes, int cutoff, SparseDm entries)
    : modes_(modes), cutoff_(cutoff), entries_(std::move(entries)) {
  entries_.makeCompressed();
  Complex tr = 0.0;
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) tr += entries_.coeff(i, i);
  trace_deficit_ = 1.0 - tr.real();
}

double FockDensityMatrix::hermiticity_error() const {
  const SparseDm adj = entries_.adjoint();
  const SparseDm diff = entries_ - adj;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
    for (SparseDm::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double FockDensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd dense(entries_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double FockDensityMatrix::purity() const { return overlap_fock(*this, *this); }

FockDensityMatrix thermal_dm(double n_bar, int cutoff) {
  require_cutoff(cutoff);
  if (!(n_bar >= 0.0)) throw std::invalid_argument("thermal occupation must be ≥ 0");
  const double ratio = n_bar / (1.0 + n_bar);
  std::vector<Eigen::Triplet<Complex>> trip;
  double p = 1.0 / (1.0 + n_bar);
  for (int k = 0; k < cutoff; ++k) {
    trip.emplace_back(k, k, p);
    p *= ratio;
  }
  SparseDm m(cutoff, cutoff);
  m.setFromTriplets(trip.begin(), trip.end());
  return FockDensityMatrix(1, cutoff, std::move(m));
}

FockDensityMatrix coherent_dm(Complex alpha, int cutoff) {
  require_cutoff(cutoff);
  std::vector<std::pair<Eigen::Index, Complex>> amp;
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int k = 0; k < cutoff; ++k) {
    if (k > 0) c *= alpha / std::sqrt(static_cast<double>(k));
    amp.emplace_back(k, c);
  }
  return pure_state(1, cutoff, amp);
}

FockDensityMatrix squeezed_vacuum_dm(double r, int cutoff) {
  require_cutoff(cutoff);
  std::vector<std::pair<Eigen::Index, Complex>> amp;
  const double t = std::tanh(r);
  double c = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n < cutoff; ++n) {
    if (n > 0) c *= -t * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
    amp.emplace_back(2 * n, c);
  }
  return pure_state(1, cutoff, amp);
}

FockDensityMatrix two_mode_squeezed_dm(double r, int cutoff) {
  require_cutoff(cutoff);
  std::vector<std::pair<Eigen::Index, Complex>> amp;
  const double t = std::tanh(r);
  double c = 1.0 / std::cosh(r);
  for (int k = 0; k < cutoff; ++k) {
    if (k > 0) c *= t;
    amp.emplace_back(static_cast<Eigen::Index>(k) * cutoff + k, c);
  }
  return pure_state(2, cutoff, amp);
}

FockDensityMatrix tensor(const FockDensityMatrix& rho, const FockDensityMatrix& sigma) {
  if (rho.modes() != 1 || sigma.modes() != 1 || rho.cutoff() != sigma.cutoff()) {
    throw std::invalid_argument("tensor() takes single-mode factors at equal cutoff");
  }
  const int n = rho.cutoff();
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Eigen::Index k1 = 0; k1 < rho.entries().outerSize(); ++k1)
    for (SparseDm::InnerIterator a(rho.entries(), k1); a; ++a)
      for (Eigen::Index k2 = 0; k2 < sigma.entries().outerSize(); ++k2)
        for (SparseDm::InnerIterator b(sigma.entries(), k2); b; ++b)
          trip.emplace_back(a.row() * n + b.row(), a.col() * n + b.col(), a.value() * b.value());
  SparseDm m(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  m.setFromTriplets(trip.begin(), trip.end());
  return FockDensityMatrix(2, n, std::move(m));
}

int adaptive_cutoff(const std::function<FockDensityMatrix(int)>& build, const CutoffPolicy& policy) {
  for (int cutoff = policy.start; cutoff <= policy.ceiling; cutoff *= 2) {
    if (build(cutoff).trace_deficit() < policy.trace_guard) return cutoff;
  }
  throw std::runtime_error("trace deficit did not fall below the guard within the cutoff ceiling");
}

double overlap_fock(const FockDensityMatrix& rho, const FockDensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::runtime_error("Fock overlap: dimension mismatch");
  const SparseDm sigma_t = sigma.entries().transpose();
  const Complex tr = rho.entries().cwiseProduct(sigma_t).sum();
  if (std::abs(tr.imag()) >= 1e-12) throw std::runtime_error("Fock overlap has a non-negligible imaginary part");
  return tr.real();
}

// ---------------------------------------------------------------------------
// CM descriptions

CmDescription thermal_cm(double n_bar) {
  const double v = 2.0 * n_bar + 1.0;
  return {1, {v, 0.0, 0.0, v}, {0.0, 0.0}};
}

CmDescription coherent_cm(Complex alpha) {
  return {1, {1.0, 0.0, 0.0, 1.0}, {std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag()}};
}

CmDescription squeezed_vacuum_cm(double r) {
  return {1, {std::exp(-2.0 * r), 0.0, 0.0, std::exp(2.0 * r)}, {0.0, 0.0}};
}

CmDescription two_mode_squeezed_cm(double r) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return {2,
          {ch, 0.0, sh, 0.0,
           0.0, ch, 0.0, -sh,
           sh, 0.0, ch, 0.0,
           0.0, -sh, 0.0, ch},
          {0.0, 0.0, 0.0, 0.0}};
}

CmDescription product_cm(const CmDescription& a, const CmDescription& b) {
  const int da = 2 * a.modes;
  const int db = 2 * b.modes;
  const int d = da + db;
  CmDescription out{a.modes + b.modes, std::vector<double>(static_cast<std::size_t>(d * d), 0.0), a.mean};
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) out.cm[static_cast<std::size_t>(i * d + j)] = a.cm[static_cast<std::size_t>(i * da + j)];
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      out.cm[static_cast<std::size_t>((da + i) * d + da + j)] = b.cm[static_cast<std::size_t>(i * db + j)];
  out.mean.insert(out.mean.end(), b.mean.begin(), b.mean.end());
  return out;
}

// ---------------------------------------------------------------------------
// Test matrix

namespace {

using Builder = std::function<FockDensityMatrix(int)>;

struct Side {
  Builder fock;
  CmDescription cm;
};

OracleCase run_case(const std::string& family, const std::string& label, const Side& rho, const Side& sigma,
                    const CutoffPolicy& policy) {
  const int cutoff = std::max(adaptive_cutoff(rho.fock, policy), adaptive_cutoff(sigma.fock, policy));
  const FockDensityMatrix fr = rho.fock(cutoff);
  const FockDensityMatrix fs = sigma.fock(cutoff);
  OracleCase c;
  c.family = family;
  c.label = label;
  c.rho = rho.cm;
  c.sigma = sigma.cm;
  c.cutoff = cutoff;
  c.fock_overlap = overlap_fock(fr, fs);
  c.trace_deficit = std::max(fr.trace_deficit(), fs.trace_deficit());
  return c;
}

Side thermal(double n) { return {[n](int k) { return thermal_dm(n, k); }, thermal_cm(n)}; }
Side coherent(Complex a) { return {[a](int k) { return coherent_dm(a, k); }, coherent_cm(a)}; }
Side squeezed(double r) { return {[r](int k) { return squeezed_vacuum_dm(r, k); }, squeezed_vacuum_cm(r)}; }
Side tmsv(double r) { return {[r](int k) { return two_mode_squeezed_dm(r, k); }, two_mode_squeezed_cm(r)}; }
Side thermal_pair(double n) {
  return {[n](int k) { return tensor(thermal_dm(n, k), thermal_dm(n, k)); }, product_cm(thermal_cm(n), thermal_cm(n))};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::vector<OracleCase> oracle_cases(const std::vector<std::string>& families, const CutoffPolicy& policy) {
  std::vector<OracleCase> out;
  for (const auto& fam : families) {
    if (fam == "thermal") {
      for (double n : {0.0, 0.5, 1.0, 3.0}) {
        out.push_back(run_case(fam, "thermal(" + num(n) + ") vs itself", thermal(n), thermal(n), policy));
        out.push_back(run_case(fam, "thermal(" + num(n) + ") vs vacuum", thermal(n), thermal(0.0), policy));
      }
      out.push_back(run_case(fam, "thermal(1) vs thermal(3)", thermal(1.0), thermal(3.0), policy));
    } else if (fam == "coherent") {
      for (Complex a : {Complex(0.5, 0), Complex(1, 0), Complex(2, 0), Complex(1, 1), Complex(0, -1.5)}) {
        out.push_back(run_case(fam, "coherent(" + num(a.real()) + "," + num(a.imag()) + ") vs vacuum", coherent(a),
                               thermal(0.0), policy));
      }
      out.push_back(run_case(fam, "coherent(1,0) vs coherent(0,1)", coherent({1, 0}), coherent({0, 1}), policy));
      out.push_back(run_case(fam, "coherent(1,0) vs thermal(1)", coherent({1, 0}), thermal(1.0), policy));
      out.push_back(run_case(fam, "coherent(1,-1) vs thermal(3)", coherent({1, -1}), thermal(3.0), policy));
    } else if (fam == "squeezed") {
      for (double r : {0.25, 0.5, 1.0}) {
        out.push_back(run_case(fam, "squeezed(" + num(r) + ") vs vacuum", squeezed(r), thermal(0.0), policy));
      }
      out.push_back(run_case(fam, "squeezed(0.5) vs squeezed(1)", squeezed(0.5), squeezed(1.0), policy));
      out.push_back(run_case(fam, "squeezed(0.5) vs coherent(1,0)", squeezed(0.5), coherent({1, 0}), policy));
      out.push_back(run_case(fam, "squeezed(0.5) vs coherent(0,1)", squeezed(0.5), coherent({0, 1}), policy));
      out.push_back(run_case(fam, "squeezed(1) vs thermal(1)", squeezed(1.0), thermal(1.0), policy));
    } else if (fam == "tmsv") {
      for (double r : {0.25, 0.5, 1.0}) {
        out.push_back(run_case(fam, "tmsv(" + num(r) + ") vs vacuum", tmsv(r), thermal_pair(0.0), policy));
      }
      out.push_back(run_case(fam, "tmsv(0.5) vs tmsv(1)", tmsv(0.5), tmsv(1.0), policy));
      const double n = std::sinh(0.5) * std::sinh(0.5);
      out.push_back(run_case(fam, "tmsv(0.5) vs thermal(sinh^2 0.5)^2", tmsv(0.5), thermal_pair(n), policy));
    } else {
      throw std::invalid_argument("unknown oracle family '" + fam + "'");
    }
  }
  return out;
}

}  // namespace nfg::oracle
