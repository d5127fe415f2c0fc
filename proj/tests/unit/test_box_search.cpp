#include "box_search.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nfg::detail {
namespace {

TEST(BoxSearch, InteriorMaximumOneDimension) {
  const auto r = maximize_in_box([](const std::vector<double>& x) { return -std::pow(x[0] - 0.3, 2); }, 1, 0.0, 1.0,
                                 {});
  EXPECT_NEAR(r.x[0], 0.3, 1e-7);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
  EXPECT_TRUE(r.converged);
}

TEST(BoxSearch, BoundaryMaximumIsExact) {
  const auto r = maximize_in_box([](const std::vector<double>& x) { return x[0] + 2 * x[1]; }, 2, 0.0, 1.5, {});
  EXPECT_EQ(r.x[0], 1.5);
  EXPECT_EQ(r.x[1], 1.5);
  EXPECT_EQ(r.value, 4.5);
}

TEST(BoxSearch, MultimodalPicksGlobal) {
  // Two bumps; the taller one is narrow and away from the coarse-grid best
  // of a single start.
  auto f = [](const std::vector<double>& x) {
    return std::exp(-50 * std::pow(x[0] - 0.2, 2)) + 1.2 * std::exp(-400 * std::pow(x[0] - 0.77, 2));
  };
  const auto r = maximize_in_box(f, 1, 0.0, 1.0, {});
  EXPECT_NEAR(r.x[0], 0.77, 1e-4);
}

TEST(BoxSearch, SampledGridForManyDimensions) {
  BoxSearchOptions opt;
  opt.grid_points = 33;
  opt.seed = 7;
  auto f = [](const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s -= (v - 0.4) * (v - 0.4);
    return s;
  };
  const auto r = maximize_in_box(f, 4, 0.0, 1.0, opt);
  for (double v : r.x) EXPECT_NEAR(v, 0.4, 1e-6);
  const auto again = maximize_in_box(f, 4, 0.0, 1.0, opt);
  EXPECT_EQ(r.x, again.x);
}

TEST(BoxSearch, ZeroDimensions) {
  const auto r = maximize_in_box([](const std::vector<double>&) { return 2.0; }, 0, 0.0, 1.0, {});
  EXPECT_TRUE(r.x.empty());
  EXPECT_EQ(r.value, 2.0);
}

}  // namespace
}  // namespace nfg::detail
