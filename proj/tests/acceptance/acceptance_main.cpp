// Acceptance checks. One PASS/FAIL line per criterion; exit code is the
// number of failed criteria (capped). `--criterion N` runs a single one.
#include "nfg/correlation.hpp"
#include "nfg/families.hpp"
#include "nfg/gaussian_core.hpp"
#include "nfg/overlap.hpp"

#include "fock_oracle.hpp"
#include "random_states.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace {

using nfg::GaussianState;
using nfg::Matrix;
using nfg::Vector;
namespace t = nfg::testing;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Appends "name=value (want target ± tol)" and returns whether it is in range.
bool within(std::string& out, const char* name, double value, double target, double tol) {
  const bool ok = std::abs(value - target) <= tol;
  out += fmt("%s=%.10g (want %.6g±%.0e%s) ", name, value, target, tol, ok ? "" : " MISS");
  return ok;
}

Outcome point_values() {
  const auto t0 = std::chrono::steady_clock::now();
  const nfg::SstsParams p{49.0, 0.9};
  std::string d;
  bool ok = within(d, "nfg", nfg::nfg_ssts(p), 0.897955, 1e-5);
  ok &= within(d, "dg", nfg::dg_ssts(p), 0.000356, 1e-6);
  ok &= within(d, "q", nfg::q_ssts(p), 0.040867, 1e-6);
  d += fmt("t=%.3fs", seconds_since(t0));
  return {ok, d};
}

// The published dg and q at this point coincide with the formulas evaluated at
// n̄ = 100000, so the dg/q targets below cannot be met at n̄ = 10000. Reported
// as is.
Outcome large_n_bar_values() {
  const nfg::SstsParams p{10000.0, 0.9};
  std::string d;
  bool ok = within(d, "nfg", nfg::nfg_ssts(p), 0.89803, 1e-5);
  ok &= within(d, "dg", nfg::dg_ssts(p), 8.72518e-11, 1e-15);
  ok &= within(d, "q", nfg::q_ssts(p), 2.1e-5, 1e-6);
  const nfg::SstsParams big{100000.0, 0.9};
  d += fmt("| at n_bar=1e5: dg=%.6e q=%.6e", nfg::dg_ssts(big), nfg::q_ssts(big));
  return {ok, d};
}

Outcome limit_law() {
  bool ok = true;
  std::string d;
  for (double mu : {0.1, 0.5, 0.9}) {
    const double gap = std::abs(nfg::nfg_ssts({1e8, mu}) - nfg::nfg_ssts_limit(mu));
    ok &= gap < 1e-6;
    d += fmt("mu=%.1f gap=%.3e ", mu, gap);
  }
  return {ok, d};
}

Outcome tmsv_family() {
  bool ok = true;
  double worst = 0.0;
  for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const double got = nfg::nfg_two_mode(nfg::tmsv(r)).value;
    const double ch = std::cosh(4.0 * r);
    const double want = 1.0 - 16.0 / ((ch + 3.0) * (ch + 3.0));
    if (want == 0.0) {
      ok &= got == 0.0;
      continue;
    }
    const double rel = std::abs(got - want) / want;
    worst = std::max(worst, rel);
    ok &= rel < 1e-10;
  }
  bool increasing = true;
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = nfg::nfg_two_mode(nfg::tmsv(0.03 * i)).value;
    increasing &= v > prev;
    prev = v;
  }
  const double top = nfg::nfg_two_mode(nfg::tmsv(2.5)).value;
  ok &= increasing && top > 0.999;
  return {ok, fmt("max_rel=%.3e increasing=%s value(2.5)=%.8f", worst, increasing ? "yes" : "no", top)};
}

Outcome numeric_vs_closed() {
  const auto t0 = std::chrono::steady_clock::now();
  auto rng = t::make_rng(5);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const GaussianState s = t::random_state(rng, 1, 1);
    worst = std::max(worst, std::abs(nfg::nfg_numeric(s).value - nfg::nfg_two_mode(s).value));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-8 && secs < 10.0, fmt("max_diff=%.3e t=%.2fs", worst, secs)};
}

nfg::GaussianUnitary random_local(std::mt19937_64& rng, int modes) {
  return nfg::GaussianUnitary(nfg::SymplecticMatrix(t::random_symplectic(rng, modes)),
                              nfg::Displacement(t::random_vector(rng, 2 * modes)));
}

Outcome invariance() {
  auto rng = t::make_rng(6);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const GaussianState s = t::random_state(rng, 1, 1);
    const double base = nfg::nfg_two_mode(s).value;
    const GaussianState moved = nfg::apply_gaussian_unitary(
        nfg::apply_gaussian_unitary(s, random_local(rng, 1), nfg::Side::A), random_local(rng, 1), nfg::Side::B);
    worst = std::max(worst, std::abs(nfg::nfg_two_mode(moved).value - base));
  }
  double worst_multi = 0.0;
  for (int i = 0; i < 20; ++i) {
    const GaussianState s = t::random_state(rng, 2, 1);
    const double base = nfg::nfg_numeric(s).value;
    const GaussianState moved = nfg::apply_gaussian_unitary(
        nfg::apply_gaussian_unitary(s, random_local(rng, 2), nfg::Side::A), random_local(rng, 1), nfg::Side::B);
    worst_multi = std::max(worst_multi, std::abs(nfg::nfg_numeric(moved).value - base));
  }
  return {worst < 1e-9 && worst_multi < 1e-9,
          fmt("max_drift(1+1)=%.3e max_drift(2+1,numeric)=%.3e", worst, worst_multi)};
}

Outcome monotonicity() {
  auto rng = t::make_rng(7);
  int violations = 0;
  double worst_gap = 0.0, min_slack = 1.0;
  for (int i = 0; i < 200; ++i) {
    const GaussianState s = t::random_state(rng, 1, 1);
    const nfg::GaussianChannel ch = t::random_channel(rng);
    const auto rep = nfg::check_monotonicity(s, ch);
    if (rep.after > rep.before + 1e-10) ++violations;
    min_slack = std::min(min_slack, rep.before - rep.after);
    const double closed = nfg::nfg_after_channel_closed_form(s, ch).value;
    worst_gap = std::max(worst_gap, std::abs(closed - rep.after));
  }
  return {violations == 0 && worst_gap < 1e-8,
          fmt("violations=%d min_slack=%.3e closed_form_gap=%.3e", violations, min_slack, worst_gap)};
}

Outcome zero_iff_product() {
  auto rng = t::make_rng(8);
  bool products_zero = true;
  for (int i = 0; i < 100; ++i) {
    const Matrix g = nfg::direct_sum(t::random_physical_cm(rng, 1), t::random_physical_cm(rng, 1));
    const GaussianState s(g, 1, 1);
    products_zero &= nfg::nfg_two_mode(s).value == 0.0 && nfg::nfg_numeric(s).value == 0.0;
  }
  for (int i = 0; i < 20; ++i) {
    const Matrix g = nfg::direct_sum(t::random_physical_cm(rng, 2), t::random_physical_cm(rng, 1));
    products_zero &= nfg::nfg_numeric(GaussianState(g, 2, 1)).value == 0.0;
  }
  int checked = 0, nonpositive = 0;
  double smallest = 1.0;
  auto probe = [&](const GaussianState& s) {
    const auto p = nfg::standard_form(s).params;
    if (std::max(std::abs(p.c), std::abs(p.d)) < 1e-6) return;
    ++checked;
    const double v = nfg::nfg_two_mode(s).value;
    smallest = std::min(smallest, v);
    if (!(v > 0.0)) ++nonpositive;
  };
  for (int i = 0; i < 200; ++i) probe(t::random_state(rng, 1, 1));
  // Barely correlated states near the threshold, at large local noise.
  for (double a : {1.001, 3.0, 100.0, 1e4}) {
    for (double c : {1e-6, 2e-6, 1e-5}) {
      for (double dfrac : {0.0, -1.0, 1.0, 0.5}) {
        nfg::StandardFormParams p{a, a, c, dfrac * c};
        probe(GaussianState(p.covariance(), 1, 1));
      }
    }
  }
  return {products_zero && nonpositive == 0,
          fmt("products_exact_zero=%s correlated_checked=%d nonpositive=%d min_value=%.3e",
              products_zero ? "yes" : "no", checked, nonpositive, smallest)};
}

GaussianState from_description(const nfg::oracle::CmDescription& d) {
  const auto n = static_cast<Eigen::Index>(2 * d.modes);
  const Matrix cm = nfg::from_row_major(d.cm, n, n);
  Vector mean = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n && i < static_cast<Eigen::Index>(d.mean.size()); ++i) mean(i) = d.mean[i];
  return GaussianState(nfg::CovarianceMatrix(cm), nfg::Displacement(mean), d.modes, 0);
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cases = nfg::oracle::oracle_cases({"thermal", "coherent", "squeezed", "tmsv"});
  double worst_rel = 0.0, worst_deficit = 0.0;
  for (const auto& c : cases) {
    const double cm = nfg::overlap(from_description(c.rho), from_description(c.sigma)).value;
    worst_rel = std::max(worst_rel, std::abs(cm - c.fock_overlap) / std::abs(cm));
    worst_deficit = std::max(worst_deficit, c.trace_deficit);
  }
  const double secs = seconds_since(t0);
  const bool ok = !cases.empty() && worst_rel < 1e-6 && worst_deficit < 1e-10 && secs < 5.0;
  return {ok, fmt("cases=%zu max_rel=%.3e max_trace_deficit=%.3e t=%.2fs", cases.size(), worst_rel, worst_deficit,
                  secs)};
}

Outcome figure_dominance() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kSlack = -1e-12;
  int grid_violations = 0;
  std::size_t grid_points = 0;
  for (int fig = 1; fig <= 4; ++fig) {
    for (const auto& row : nfg::sweep(nfg::figure_grid(fig))) {
      ++grid_points;
      if (!(row.nfg_minus_dg >= kSlack) || !(row.nfg_minus_q >= kSlack)) ++grid_violations;
    }
  }
  auto rng = t::make_rng(10);
  std::uniform_real_distribution<double> log_n(std::log(1e-6), std::log(1e13));
  std::uniform_real_distribution<double> mu(0.0, 1.0);
  int sample_violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto row = nfg::sweep_point({std::exp(log_n(rng)), mu(rng)});
    if (!(row.nfg_minus_dg >= kSlack) || !(row.nfg_minus_q >= kSlack)) ++sample_violations;
  }
  const double secs = seconds_since(t0);
  return {grid_violations == 0 && sample_violations == 0 && secs < 30.0,
          fmt("grid_points=%zu grid_violations=%d samples=100000 sample_violations=%d t=%.2fs", grid_points,
              grid_violations, sample_violations, secs)};
}

Outcome upper_bound() {
  auto rng = t::make_rng(11);
  int above = 0, not_below_one = 0;
  double max_bound = 0.0;
  for (int i = 0; i < 500; ++i) {
    const GaussianState s = t::random_state(rng, 1, 1);
    const double bound = nfg::nfg_upper_bound(s);
    if (nfg::nfg_two_mode(s).value > bound + 1e-10) ++above;
    if (!(bound < 1.0)) ++not_below_one;
    max_bound = std::max(max_bound, bound);
  }
  return {above == 0 && not_below_one == 0,
          fmt("exceeding=%d bound_not_below_one=%d max_bound=%.6f", above, not_below_one, max_bound)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"point values at (49, 0.9)", point_values},
    {"large n_bar values at (10000, 0.9)", large_n_bar_values},
    {"limit law", limit_law},
    {"two-mode squeezed vacuum family", tmsv_family},
    {"numeric supremum vs closed form", numeric_vs_closed},
    {"local unitary invariance", invariance},
    {"monotonicity under channels on B", monotonicity},
    {"zero iff product", zero_iff_product},
    {"Fock oracle equivalence", oracle_equivalence},
    {"dominance over dg and q", figure_dominance},
    {"upper bound", upper_bound},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", kCriteria.size());
    return 2;
  }
  std::printf("seed %llu\n", static_cast<unsigned long long>(t::seed_from_env()));
  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = kCriteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, kCriteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return std::min(failed, 100);
}
