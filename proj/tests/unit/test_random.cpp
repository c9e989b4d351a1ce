#include <gtest/gtest.h>

#include <set>

#include "samo/random.hpp"

namespace samo {
namespace {

TEST(DeriveSeed, DeterministicAndSeparatedByPurpose) {
  EXPECT_EQ(derive_seed(1, "sampling", 3), derive_seed(1, "sampling", 3));
  EXPECT_NE(derive_seed(1, "sampling", 3), derive_seed(1, "training", 3));
  EXPECT_NE(derive_seed(1, "sampling", 3), derive_seed(1, "sampling", 4));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(5, i));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Uniform01, StaysInUnitInterval) {
  Rng rng(3);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(UniformIndex, CoversRangeWithoutBias) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[uniform_index(rng, 7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(StandardNormal, MomentsMatch) {
  Rng rng(11);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

}  // namespace
}  // namespace samo
