#include <gtest/gtest.h>

#include "jensen/abelian.hpp"

using namespace jensen;

TEST(AbelianTarget, RejectsBadFactors) {
  EXPECT_THROW(AbelianTarget({1}), std::invalid_argument);
  EXPECT_THROW(AbelianTarget({0}), std::invalid_argument);
  EXPECT_THROW(AbelianTarget({4, -2}), std::invalid_argument);
  EXPECT_NO_THROW(AbelianTarget(std::vector<std::int64_t>{}));
}

TEST(AbelianTarget, Basics) {
  const AbelianTarget h({2, 4});
  EXPECT_EQ(h.rank(), 2u);
  EXPECT_EQ(h.cardinality(), 8);
  EXPECT_EQ(h.spec(), "Z:2x4");
  EXPECT_EQ(AbelianTarget(std::vector<std::int64_t>{}).spec(), "Z:1");
  EXPECT_TRUE(AbelianTarget(std::vector<std::int64_t>{}).is_trivial());
  EXPECT_EQ(AbelianTarget(std::vector<std::int64_t>{}).cardinality(), 1);
}

TEST(AbelianTarget, Arithmetic) {
  const AbelianTarget h({2, 4});
  const AbElement a = h.reduce({1, 3});
  const AbElement b = h.reduce({1, 2});
  EXPECT_EQ(h.add(a, b), h.reduce({0, 1}));
  EXPECT_EQ(h.neg(a), h.reduce({1, 1}));
  EXPECT_EQ(h.scale(2, a), h.reduce({0, 2}));
  EXPECT_EQ(h.scale(-1, a), h.neg(a));
  EXPECT_TRUE(h.is_zero(h.add(a, h.neg(a))));
  EXPECT_EQ(h.reduce({-1, -5}), h.reduce({1, 3}));
  EXPECT_TRUE(h.belongs(a));
  EXPECT_FALSE(h.belongs(AbElement{{2, 0}}));
  EXPECT_FALSE(h.belongs(AbElement{{0}}));
  EXPECT_THROW(h.reduce({1}), std::invalid_argument);
}

TEST(AbelianTarget, TwoTorsion) {
  const AbelianTarget h({2, 4});
  const std::vector<AbElement> expected = {h.reduce({0, 0}), h.reduce({0, 2}), h.reduce({1, 0}), h.reduce({1, 2})};
  EXPECT_EQ(h.two_torsion(), expected);
  EXPECT_EQ(AbelianTarget({3}).two_torsion().size(), 1u);
  EXPECT_EQ(AbelianTarget({2, 2}).two_torsion().size(), 4u);
  EXPECT_EQ(AbelianTarget({6}).two_torsion(), (std::vector<AbElement>{AbElement{{0}}, AbElement{{3}}}));
}

TEST(AbelianTarget, EnumerationIsLexicographic) {
  const AbelianTarget h({2, 3});
  const auto all = h.enumerate();
  ASSERT_EQ(all.size(), 6u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(all.front(), h.zero());
  EXPECT_EQ(all.back(), h.reduce({1, 2}));
  EXPECT_THROW(AbelianTarget({1000, 1000, 1000}).enumerate(1000), CapExceeded);
}

TEST(AbelianTarget, Format) {
  EXPECT_EQ(AbelianTarget({4}).format(AbElement{{3}}), "3");
  EXPECT_EQ(AbelianTarget({2, 2}).format(AbElement{{1, 0}}), "(1,0)");
}

TEST(HomCount, GcdFormula) {
  EXPECT_EQ(hom_count_from_factors({2}, AbelianTarget({4})), 2);
  EXPECT_EQ(hom_count_from_factors({2, 2}, AbelianTarget({2})), 4);
  EXPECT_EQ(hom_count_from_factors({2}, AbelianTarget({3})), 1);
  EXPECT_EQ(hom_count_from_factors({2, 12}, AbelianTarget({4, 6})), 2 * 2 * 4 * 6);
  EXPECT_EQ(hom_count_from_factors({}, AbelianTarget({5})), 1);
}
