#include "nfg/correlation.hpp"
#include "nfg/families.hpp"
#include "nfg/overlap.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nfg {
namespace {

// Reference values below were computed with 50-digit arithmetic from the
// textbook expressions (no cancellation-avoiding rearrangement).

TEST(Ssts, Construction) {
  const auto vac = ssts({0, 0.7});
  EXPECT_EQ(vac.cm().matrix(), Matrix::Identity(4, 4));
  EXPECT_EQ(vac.mean().vector(), Vector::Zero(4));

  const auto p = ssts_params({1, 1});
  EXPECT_DOUBLE_EQ(p.a, 3);
  EXPECT_DOUBLE_EQ(p.b, 3);
  EXPECT_NEAR(p.c, 2 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.d, -2 * std::sqrt(2.0), 1e-15);
  const auto r = validate_cm(ssts({1, 1}).cm().matrix());
  EXPECT_TRUE(r.physical);
  for (double nu : r.symplectic_eigenvalues) EXPECT_NEAR(nu, 1.0, 1e-12);

  EXPECT_EQ(blocks(ssts({1, 0})).c, Matrix::Zero(2, 2));
}

TEST(Ssts, RejectsOutOfRange) {
  EXPECT_THROW(ssts({-1, 0.5}), Error);
  EXPECT_THROW(ssts({1, 1.5}), Error);
  EXPECT_THROW(ssts({1, -0.1}), Error);
  EXPECT_THROW(ssts({std::nan(""), 0.5}), Error);
}

TEST(Tmsv, Construction) {
  EXPECT_EQ(tmsv(0).cm().matrix(), Matrix::Identity(4, 4));
  const auto r = validate_cm(tmsv(0.5).cm().matrix());
  EXPECT_NEAR(r.symplectic_eigenvalues[0], 1, 1e-12);
  EXPECT_NEAR(r.symplectic_eigenvalues[1], 1, 1e-12);
  EXPECT_NEAR(purity(tmsv(0.5)), 1, 1e-12);
  for (double x : {0.1, 0.5, 1.3}) {
    const double s = std::sinh(x);
    EXPECT_LT(max_abs(tmsv(x).cm().matrix() - ssts({s * s, 1}).cm().matrix()), 1e-12);
  }
  EXPECT_THROW(tmsv(-0.1), Error);
}

TEST(NfgSsts, PointValues) {
  EXPECT_NEAR(nfg_ssts({49, 0.9}), 0.8979552469, 1e-9);
  EXPECT_NEAR(nfg_ssts({10000, 0.9}), 0.898029798, 1e-8);
  for (double n : {0.0, 1.0, 1e6}) EXPECT_EQ(nfg_ssts({n, 0}), 0.0);
}

TEST(NfgSsts, PureCaseIdentity) {
  for (double n : {0.1, 1.0, 7.5, 49.0, 1e3}) {
    const double t = 1 + 2 * n + 2 * n * n;
    EXPECT_NEAR(nfg_ssts({n, 1}) / (1 - 1 / (t * t)), 1.0, 1e-12) << n;
  }
}

TEST(NfgSsts, MatchesGeneralTwoModePath) {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const SstsParams p{50.0 * i / 19.0, j / 19.0};
      EXPECT_NEAR(nfg_ssts(p), nfg_two_mode(ssts(p)).value, 1e-10) << p.n_bar << " " << p.mu;
    }
  }
}

TEST(DgSsts, PointValues) {
  EXPECT_NEAR(dg_ssts({49, 0.9}), 0.00035587931, 1e-12);
  EXPECT_NEAR(dg_ssts({10000, 0.9}), 8.72439e-9, 1e-13);
  EXPECT_NEAR(dg_ssts({100000, 0.9}), 8.7251771e-11, 1e-16);
  EXPECT_LT(dg_ssts({1e13, 0.9}), 1e-24);
  EXPECT_EQ(dg_ssts({3, 0}), 0.0);
}

TEST(QSsts, PointValues) {
  EXPECT_NEAR(q_ssts({49, 0.9}), 0.04086739, 1e-8);
  EXPECT_NEAR(q_ssts({10000, 0.9}), 2.1309e-4, 1e-8);
  EXPECT_NEAR(q_ssts({100000, 0.9}), 2.1315e-5, 1e-9);
  for (double n : {0.5, 3.0, 40.0}) EXPECT_NEAR(q_ssts({n, 1}), 1 - 1 / (1 + 2 * n), 1e-15);
}

TEST(Limit, Values) {
  EXPECT_NEAR(nfg_ssts_limit(0.1), 0.0100249994, 1e-10);
  EXPECT_NEAR(nfg_ssts_limit(0.5), 0.2653061224, 1e-10);
  EXPECT_NEAR(nfg_ssts_limit(0.9), 0.8980298002, 1e-10);
  EXPECT_LT(nfg_ssts_limit(1e-8), 1e-15);
  EXPECT_THROW(nfg_ssts_limit(0.0), Error);
  EXPECT_THROW(nfg_ssts_limit(1.0), Error);
}

TEST(Limit, LargeMeanPhotonNumber) {
  for (double mu : {0.1, 0.5, 0.9}) {
    EXPECT_LT(std::abs(nfg_ssts({1e8, mu}) - nfg_ssts_limit(mu)), 1e-6);
    const double far = nfg_ssts({1e13, mu});
    EXPECT_TRUE(std::isfinite(far));
    EXPECT_LT(std::abs(far - nfg_ssts_limit(mu)), 1e-9);
    EXPECT_TRUE(std::isfinite(dg_ssts({1e13, mu})));
    EXPECT_TRUE(std::isfinite(q_ssts({1e13, mu})));
  }
}

TEST(Sweep, SinglePoint) {
  const auto rows = sweep({49, 49, 1, 0.9, 0.9, 1});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].nfg, 0.897955, 1e-6);
  EXPECT_NEAR(rows[0].dg, 0.000356, 1e-6);
  EXPECT_NEAR(rows[0].q, 0.040867, 1e-6);
  EXPECT_EQ(rows[0].nfg_minus_dg, rows[0].nfg - rows[0].dg);
  EXPECT_EQ(rows[0].nfg_minus_q, rows[0].nfg - rows[0].q);
}

TEST(Sweep, OrderingIsNbarOuterMuInner) {
  const auto rows = sweep({0, 2, 3, 0, 1, 2});
  ASSERT_EQ(rows.size(), 6u);
  const double expected[6][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (int i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(rows[i].n_bar, expected[i][0]);
    EXPECT_DOUBLE_EQ(rows[i].mu, expected[i][1]);
  }
}

TEST(Sweep, FigureGridsDominance) {
  for (int fig = 1; fig <= 4; ++fig) {
    const auto g = figure_grid(fig);
    const auto rows = sweep(g);
    EXPECT_EQ(rows.size(), 51u * 51u);
    for (const auto& r : rows) {
      EXPECT_GE(r.nfg_minus_dg, -1e-12);
      EXPECT_GE(r.nfg_minus_q, -1e-12);
      EXPECT_EQ(r.nfg_minus_dg, r.nfg - r.dg);
    }
  }
  EXPECT_DOUBLE_EQ(figure_grid(1).n_bar_max, 50);
  EXPECT_DOUBLE_EQ(figure_grid(2).n_bar_min, 100000);
  EXPECT_DOUBLE_EQ(figure_grid(2).n_bar_max, 100500);
  EXPECT_THROW(figure_grid(5), Error);
}

TEST(Sweep, LargeGridIsDeterministic) {
  const SweepGrid g{0, 100, 101, 0, 1, 101};
  const auto a = sweep(g);
  const auto b = sweep(g);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].nfg, b[i].nfg);
    EXPECT_EQ(a[i].dg, b[i].dg);
    EXPECT_EQ(a[i].n_bar, b[i].n_bar);
  }
}

TEST(Sweep, RejectsDegenerateGrids) {
  EXPECT_THROW(sweep({0, 1, 0, 0, 1, 5}), Error);
  EXPECT_THROW(sweep({2, 1, 5, 0, 1, 5}), Error);
  EXPECT_THROW(sweep({0, 1, 5, 0, 2, 5}), Error);
}

}  // namespace
}  // namespace nfg
