#include "fock_oracle.hpp"

#include "nfg/overlap.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <span>

namespace nfg::oracle {
namespace {

GaussianState to_state(const CmDescription& d) {
  const auto dim = static_cast<Eigen::Index>(2 * d.modes);
  return GaussianState(CovarianceMatrix(from_row_major(std::span(d.cm), dim, dim)),
                       Displacement(Eigen::Map<const Vector>(d.mean.data(), dim)), d.modes, 0);
}

TEST(FockOracle, ThermalStates) {
  const auto vac = thermal_dm(0, 10);
  EXPECT_NEAR(vac.entries().coeff(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(vac.purity(), 1.0, 1e-15);

  const auto t = thermal_dm(1, 60);
  EXPECT_NEAR(t.purity(), 1.0 / 3.0, 1e-10);
  EXPECT_LT(t.trace_deficit(), 1e-10);
  EXPECT_GE(t.trace_deficit(), 0.0);
  EXPECT_NEAR(overlap_fock(t, t), 1.0 / 3.0, 1e-10);
}

TEST(FockOracle, CoherentAndSqueezed) {
  const auto vac = thermal_dm(0, 40);
  EXPECT_NEAR(overlap_fock(coherent_dm({1.0, 0.0}, 40), vac), std::exp(-1.0), 1e-12);
  EXPECT_NEAR(overlap_fock(coherent_dm({0.0, 0.0}, 40), vac), 1.0, 1e-15);
  EXPECT_NEAR(overlap_fock(squeezed_vacuum_dm(0.0, 40), vac), 1.0, 1e-15);
  const auto c = coherent_dm({0.6, -0.8}, 40);
  EXPECT_NEAR(overlap_fock(c, c), 1.0, 1e-12);
}

TEST(FockOracle, TwoModeSqueezed) {
  const double r = 0.5;
  const int cutoff = adaptive_cutoff([&](int n) { return two_mode_squeezed_dm(r, n); });
  const auto rho = two_mode_squeezed_dm(r, cutoff);
  const auto vac2 = tensor(thermal_dm(0, cutoff), thermal_dm(0, cutoff));
  EXPECT_NEAR(overlap_fock(rho, vac2), 1.0 / std::pow(std::cosh(r), 2), 1e-12);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-9);
  // Reduced state is thermal with n̄ = sinh² r.
  const double n_bar = std::pow(std::sinh(r), 2);
  for (int k = 0; k < 10; ++k) {
    const double p = rho.entries().coeff(k * cutoff + k, k * cutoff + k).real();
    EXPECT_NEAR(p, std::pow(n_bar, k) / std::pow(1 + n_bar, k + 1), 1e-12);
  }
}

TEST(FockOracle, MatricesAreHermitianAndPositive) {
  for (const auto& dm : {thermal_dm(2, 40), coherent_dm({1.2, 0.4}, 40), squeezed_vacuum_dm(0.6, 60)}) {
    EXPECT_LT(dm.hermiticity_error(), 1e-12);
    EXPECT_GT(dm.min_eigenvalue(), -1e-10);
  }
  const auto t2 = two_mode_squeezed_dm(0.3, 30);
  EXPECT_LT(t2.hermiticity_error(), 1e-12);
  EXPECT_GT(t2.min_eigenvalue(), -1e-10);
}

TEST(FockOracle, AdaptiveCutoffAndFailures) {
  const int n = adaptive_cutoff([](int c) { return thermal_dm(1, c); });
  EXPECT_LT(thermal_dm(1, n).trace_deficit(), 1e-10);
  CutoffPolicy tight;
  tight.ceiling = 20;
  EXPECT_THROW(adaptive_cutoff([](int c) { return thermal_dm(50, c); }, tight), std::runtime_error);
  EXPECT_THROW(overlap_fock(thermal_dm(1, 10), thermal_dm(1, 20)), std::runtime_error);
  EXPECT_THROW(oracle_cases({"banana"}), std::invalid_argument);
}

TEST(FockOracleProperty, AgreesWithCovarianceOverlap) {
  const auto cases = oracle_cases({"thermal", "coherent", "squeezed", "tmsv"});
  ASSERT_GT(cases.size(), 20u);
  for (const auto& c : cases) {
    ASSERT_EQ(c.rho.modes, c.sigma.modes);
    const double cm = overlap(to_state(c.rho), to_state(c.sigma)).value;
    EXPECT_LT(std::abs(cm - c.fock_overlap) / cm, 1e-6) << c.family << " " << c.label;
    EXPECT_LT(c.trace_deficit, 1e-10) << c.label;
  }
}

}  // namespace
}  // namespace nfg::oracle
