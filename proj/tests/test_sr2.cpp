#include <gtest/gtest.h>

#include "jensen/sr2.hpp"
#include "jensen/spec_parser.hpp"

using namespace jensen;

namespace {

Element named(const FiniteGroup& g, std::string_view name) {
  const auto e = g.find(name);
  EXPECT_TRUE(e.has_value()) << name;
  return e.value_or(kIdentity);
}

void expect_witnesses_valid(const FiniteGroup& g, const Sr2Report& report) {
  for (const PairResult& p : report.pairs) {
    ASSERT_EQ(g.multiply(p.a, p.b), p.product);
    if (p.witness) ASSERT_EQ(g.multiply(*p.witness, *p.witness), p.product);
  }
}

}  // namespace

TEST(Sr2, SymmetricGroupsHold) {
  for (unsigned n = 2; n <= 6; ++n) {
    const FiniteGroup g = build_symmetric(n);
    const InvolutionSet t = transpositions(g);
    EXPECT_EQ(t.size(), n * (n - 1) / 2);
    const Sr2Report report = check_sr2(g, t);
    EXPECT_TRUE(report.verdict) << n;
    EXPECT_TRUE(report.generates);
    EXPECT_EQ(report.pairs.size(), t.size() * (t.size() + 1) / 2);
    expect_witnesses_valid(g, report);
  }
}

TEST(Sr2, ClosedFormWitnesses) {
  const FiniteGroup s4 = build_symmetric(4);
  EXPECT_EQ(s4.name(sn_witness(s4, named(s4, "(1 2)"), named(s4, "(2 3)"))), "(1 3 2)");
  EXPECT_EQ(s4.name(sn_witness(s4, named(s4, "(1 2)"), named(s4, "(3 4)"))), "(1 3 2 4)");
  EXPECT_EQ(sn_witness(s4, named(s4, "(1 2)"), named(s4, "(1 2)")), kIdentity);
  EXPECT_THROW(sn_witness(s4, named(s4, "(1 2 3)"), named(s4, "(1 2)")), GroupError);
}

TEST(Sr2, ClosedFormWitnessesExhaustive) {
  for (unsigned n = 2; n <= 6; ++n) {
    const FiniteGroup g = build_symmetric(n);
    const InvolutionSet t = transpositions(g);
    for (Element a : t.members())
      for (Element b : t.members()) {
        const Element w = sn_witness(g, a, b);
        ASSERT_EQ(g.multiply(w, w), g.multiply(a, b)) << g.name(a) << " " << g.name(b);
      }
  }
}

TEST(Sr2, DihedralDichotomy) {
  for (unsigned m = 1; m <= 21; m += 2) {
    const FiniteGroup g = build_dihedral(m);
    const Sr2Report r = check_sr2(g, reflections(g));
    EXPECT_TRUE(r.verdict) << m;
    expect_witnesses_valid(g, r);
  }
  for (unsigned m = 2; m <= 20; m += 2) {
    const FiniteGroup g = build_dihedral(m);
    const Sr2Report r = check_sr2(g, reflections(g));
    EXPECT_FALSE(r.verdict) << m;
    EXPECT_TRUE(r.generates);
    EXPECT_FALSE(r.failures().empty());
  }
}

TEST(Sr2, DihedralFourFailingPair) {
  const FiniteGroup d4 = build_dihedral(4);
  const Sr2Report r = check_sr2(d4, reflections(d4));
  const PairResult first = r.failures().front();
  EXPECT_EQ(d4.name(first.a), "s");
  EXPECT_EQ(d4.name(first.b), "s·r");
  EXPECT_EQ(d4.name(first.product), "r");
  EXPECT_EQ(squares(d4), (ElementSet{named(d4, "e"), named(d4, "r^2")}));
}

TEST(Sr2, OddDihedralWitness) {
  for (unsigned m = 1; m <= 15; m += 2) {
    const FiniteGroup g = build_dihedral(m);
    for (long k = -3; k < static_cast<long>(2 * m); ++k) {
      const Element t = dihedral_odd_witness(m, k);
      const std::uint32_t target = static_cast<std::uint32_t>(((k % static_cast<long>(m)) + m) % m);
      ASSERT_EQ(g.multiply(t, t), Element{target}) << m << " " << k;
    }
  }
  EXPECT_THROW(dihedral_odd_witness(4, 1), GroupError);
}

TEST(Sr2, SquareRoots) {
  const FiniteGroup d4 = build_dihedral(4);
  EXPECT_FALSE(find_square_root(d4, named(d4, "r")).has_value());
  EXPECT_EQ(find_square_root(d4, named(d4, "r^2")), named(d4, "r"));
  EXPECT_EQ(find_square_root(d4, kIdentity), kIdentity);
}

TEST(Sr2, InvolutionSetChoices) {
  const FiniteGroup s4 = build_symmetric(4);
  const Sr2Report partial = check_sr2(s4, InvolutionSet(s4, {named(s4, "(1 2)"), named(s4, "(3 4)")}));
  EXPECT_FALSE(partial.generates);
  EXPECT_FALSE(partial.verdict);
  EXPECT_THROW(check_sr2(s4, InvolutionSet()), GroupError);
  EXPECT_EQ(default_involutions(s4).size(), 6u);
  EXPECT_EQ(default_involutions(build_dihedral(6)).size(), 6u);
  EXPECT_EQ(default_involutions(build_cyclic(4)).size(), 1u);
  EXPECT_THROW(transpositions(build_dihedral(3)), GroupError);
  EXPECT_THROW(reflections(build_symmetric(3)), GroupError);
  // D_1 is C_2 generated by its single reflection.
  const FiniteGroup d1 = build_dihedral(1);
  EXPECT_TRUE(check_sr2(d1, reflections(d1)).verdict);
}

// Mixed products (a,e)(e,b) of involutions land on reflection pairs that are
// not squares, so no involution set of D_3 x D_3 satisfies the criterion.
TEST(Sr2, ProductOfOddDihedralFails) {
  const FiniteGroup g = parse_group_spec("prod(D:3,D:3)");
  const Sr2Report all = check_sr2(g, involutions(g));
  EXPECT_TRUE(all.generates);
  EXPECT_FALSE(all.verdict);
  expect_witnesses_valid(g, all);
  const ElementSet sq = squares(g);
  for (const PairResult& p : all.failures()) EXPECT_FALSE(std::binary_search(sq.begin(), sq.end(), p.product));
}

TEST(Sr2, ProductOfOddDihedralFailsForEveryGeneratingSubset) {
  const FiniteGroup g = parse_group_spec("prod(D:3,D:3)");
  const ElementSet all = involutions(g).members();
  ASSERT_EQ(all.size(), 15u);
  std::size_t generating = 0;
  for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
    ElementSet pick;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1u) pick.push_back(all[i]);
    if (subgroup_closure(g, pick).size() != g.size()) continue;
    ++generating;
    const Sr2Report r = check_sr2(g, InvolutionSet(g, pick));
    ASSERT_FALSE(r.verdict) << "mask " << mask;
  }
  EXPECT_GT(generating, 0u);
}
