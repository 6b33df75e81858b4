#include <gtest/gtest.h>

#include <random>

#include "jensen/int_linalg.hpp"
#include "oracle.hpp"

using namespace jensen;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a.at(r, c) = dist(rng);
  return a;
}

std::vector<std::vector<std::int64_t>> to_small(const IntMatrix& a) {
  std::vector<std::vector<std::int64_t>> out(a.rows(), std::vector<std::int64_t>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = a.at(r, c).get_si();
  return out;
}

void expect_snf_invariants(const IntMatrix& a, const SnfDecomposition& snf) {
  ASSERT_EQ(snf.U * a * snf.V, snf.S);
  ASSERT_TRUE(snf.S.is_diagonal());
  const std::int64_t du = oracle::det(to_small(snf.U));
  const std::int64_t dv = oracle::det(to_small(snf.V));
  ASSERT_TRUE(du == 1 || du == -1) << du;
  ASSERT_TRUE(dv == 1 || dv == -1) << dv;
  const auto diag = snf.diagonal();
  ASSERT_EQ(diag.size(), snf.rank);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    ASSERT_GT(diag[i], 0);
    if (i) ASSERT_EQ(diag[i] % diag[i - 1], 0);
  }
  for (std::size_t i = snf.rank; i < std::min(a.rows(), a.cols()); ++i) ASSERT_EQ(snf.S.at(i, i), 0);
}

}  // namespace

TEST(Smith, KnownExample) {
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SnfDecomposition snf = smith_normal_form(a);
  expect_snf_invariants(a, snf);
  EXPECT_EQ(snf.diagonal(), (std::vector<BigInt>{2, 6, 12}));
}

TEST(Smith, EdgeShapes) {
  const IntMatrix zero(3, 2);
  const SnfDecomposition z = smith_normal_form(zero);
  EXPECT_EQ(z.rank, 0u);
  expect_snf_invariants(zero, z);

  const IntMatrix empty(0, 3);
  const SnfDecomposition e = smith_normal_form(empty);
  EXPECT_EQ(e.rank, 0u);
  EXPECT_EQ(e.V, IntMatrix::identity(3));

  const IntMatrix row{{0, 6, -4}};
  const SnfDecomposition r = smith_normal_form(row);
  expect_snf_invariants(row, r);
  EXPECT_EQ(r.diagonal(), std::vector<BigInt>{2});
}

TEST(Smith, RandomInvariants) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, rows, cols, -4, 4);
    SCOPED_TRACE(trial);
    expect_snf_invariants(a, smith_normal_form(a));
  }
}

TEST(Smith, DeterminantMatchesDiagonal) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, n, n, -9, 9);
    const SnfDecomposition snf = smith_normal_form(a);
    BigInt prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= snf.S.at(i, i);
    const BigInt det = determinant(a);
    EXPECT_EQ(det, oracle::det(to_small(a)));
    EXPECT_EQ(abs(det), abs(prod));
  }
}

// Entries whose products overflow 64 bits force the arbitrary-precision path.
TEST(Smith, LargeEntries) {
  IntMatrix a(2, 2);
  a.at(0, 0) = BigInt("123456789012345678901");
  a.at(0, 1) = BigInt("98765432109876543210");
  a.at(1, 0) = BigInt("3");
  a.at(1, 1) = BigInt("5");
  const SnfDecomposition snf = smith_normal_form(a);
  EXPECT_EQ(snf.U * a * snf.V, snf.S);
  EXPECT_EQ(snf.S.at(0, 0), 1);
  EXPECT_EQ(abs(snf.S.at(1, 1)), abs(determinant(a)));
}

TEST(Smith, SizeCap) {
  EXPECT_THROW(smith_normal_form(IntMatrix(4000, 3)), SizeCapExceeded);
}

TEST(LatticeForm, AgreesWithFullSmith) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, rows, cols, -5, 5);
    const LatticeSmithForm form = lattice_smith_form(a);
    EXPECT_EQ(form.diagonal, smith_normal_form(a).diagonal()) << trial;
    EXPECT_EQ(oracle::det(to_small(form.V)) * oracle::det(to_small(form.V)), 1);
  }
}

TEST(LatticeForm, SparseMatchesDense) {
  SparseIntMatrix s;
  s.cols = 4;
  s.rows = {{{0, 2}, {3, -2}}, {{1, 4}}, {{0, 2}, {1, 2}, {3, -2}}, {}};
  EXPECT_EQ(lattice_smith_form(s).diagonal, lattice_smith_form(s.to_dense()).diagonal);
  EXPECT_EQ(s.to_dense().at(0, 3), -2);
}

TEST(KernelMod, MatchesExhaustiveEnumeration) {
  std::mt19937 rng(3141);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 6);
    const IntMatrix a = random_matrix(rng, rows, cols, -4, 4);
    const ModKernel k = kernel_mod(a, d);
    const auto expected = oracle::kernel(to_small(a), cols, d);
    auto got = k.members();
    std::sort(got.begin(), got.end());
    SCOPED_TRACE(trial);
    ASSERT_EQ(k.cardinality, static_cast<unsigned long>(expected.size()));
    ASSERT_EQ(got, expected);
    for (std::size_t i = 0; i < k.basis.size(); ++i) {
      ASSERT_TRUE(in_kernel_mod(a, k.basis[i], d));
      ASSERT_GT(k.orders[i], 1);
      ASSERT_EQ(d % k.orders[i], 0);
    }
  }
}

TEST(KernelMod, EdgeCases) {
  const IntMatrix a{{2, 0}, {0, 3}};
  EXPECT_EQ(kernel_mod(a, 6).cardinality, 6);
  EXPECT_EQ(kernel_mod(a, 1).cardinality, 1);
  EXPECT_EQ(kernel_mod(IntMatrix(0, 2), 4).cardinality, 16);
  EXPECT_THROW(kernel_mod(a, 0), std::invalid_argument);
  EXPECT_FALSE(in_kernel_mod(a, {1, 0}, 4));
  EXPECT_TRUE(in_kernel_mod(a, {2, 0}, 4));
}

TEST(KernelMod, MembersAreUnique) {
  const IntMatrix a{{1, 1, 0}, {0, 2, 2}};
  const ModKernel k = kernel_mod(a, 4);
  auto members = k.members();
  const std::size_t n = members.size();
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  EXPECT_EQ(members.size(), n);
  EXPECT_EQ(k.cardinality, static_cast<unsigned long>(n));
  EXPECT_THROW(kernel_mod(IntMatrix(0, 8), 16).members(1000), CapExceeded);
}
