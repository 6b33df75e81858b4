#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jensen/abelian.hpp"

namespace jensen {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const;

  bool is_diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

/// Row-sparse integer matrix with small coefficients; the natural carrier of
/// a linearised functional-equation system.
struct SparseIntMatrix {
  using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;  // (column, coefficient), sorted

  std::size_t cols = 0;
  std::vector<Row> rows;

  IntMatrix to_dense() const;
};

/// U * A * V = S with U, V unimodular and S diagonal, s1 | s2 | ... | s_rank, s_i > 0.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<BigInt> diagonal() const;
};

/// Smith form of the row lattice of A: the invariant factors and a
/// unimodular V such that the lattice of A * V is spanned by s_i * e_i.
/// Enough for kernels modulo d; the left transform is not materialised.
struct LatticeSmithForm {
  std::size_t cols = 0;
  std::vector<BigInt> diagonal;  // length = rank, all positive, divisibility chain
  IntMatrix V;                   // cols x cols

  std::size_t rank() const { return diagonal.size(); }
};

/// Solutions of A v = 0 (mod d) as a direct sum of cyclic generators.
struct ModKernel {
  std::int64_t modulus = 1;
  std::size_t cols = 0;
  std::vector<std::vector<std::int64_t>> basis;  // each vector reduced mod d
  std::vector<std::int64_t> orders;              // additive order of each basis vector
  BigInt cardinality = 1;

  /// Every member exactly once, lexicographic in basis coordinates.
  std::vector<std::vector<std::int64_t>> members(std::uint64_t cap = kDefaultEnumerationCap) const;
};

class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxSnfEntries = 10'000'000;

/// Full Smith normal form with both transforms. Pivots are chosen by minimal
/// absolute value, ties broken by lowest row then lowest column. Throws
/// SizeCapExceeded when rows*cols, rows^2 or cols^2 exceeds 10^7.
SnfDecomposition smith_normal_form(const IntMatrix& a);

LatticeSmithForm lattice_smith_form(const IntMatrix& a);
LatticeSmithForm lattice_smith_form(const SparseIntMatrix& a);

ModKernel kernel_from_smith(const LatticeSmithForm& form, std::int64_t d);
ModKernel kernel_mod(const IntMatrix& a, std::int64_t d);
ModKernel kernel_mod(const SparseIntMatrix& a, std::int64_t d);

/// True when A v = 0 (mod d).
bool in_kernel_mod(const IntMatrix& a, const std::vector<std::int64_t>& v, std::int64_t d);

/// Exact determinant by fraction-free elimination.
BigInt determinant(const IntMatrix& a);

}  // namespace jensen
