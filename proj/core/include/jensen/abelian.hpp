#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace jensen {

using BigInt = mpz_class;

/// Default cap on explicit enumeration (2^20).
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of a finite abelian group: one reduced residue per cyclic factor.
struct AbElement {
  std::vector<std::int64_t> residues;

  auto operator<=>(const AbElement&) const = default;
};

/// H = Z/d1 + ... + Z/dk. Factors need not form a divisibility chain.
class AbelianTarget {
 public:
  AbelianTarget() = default;
  /// Throws std::invalid_argument unless every factor is >= 2.
  explicit AbelianTarget(std::vector<std::int64_t> factors);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  BigInt cardinality() const;
  bool is_trivial() const { return factors_.empty(); }

  /// "Z:1" for the trivial group, otherwise "Z:2x4" style.
  std::string spec() const;

  AbElement zero() const;
  AbElement add(const AbElement& a, const AbElement& b) const;
  AbElement neg(const AbElement& a) const;
  AbElement scale(std::int64_t k, const AbElement& a) const;
  bool is_zero(const AbElement& a) const;
  /// Reduces arbitrary integers into range.
  AbElement reduce(std::vector<std::int64_t> residues) const;
  bool belongs(const AbElement& a) const;

  /// All h with 2h = 0, lexicographic.
  std::vector<AbElement> two_torsion() const;

  /// All elements in lexicographic residue order; throws CapExceeded above `cap`.
  std::vector<AbElement> enumerate(std::uint64_t cap = kDefaultEnumerationCap) const;

  /// Renders "(1,2)" style tuples; a rank-1 element renders as its residue.
  std::string format(const AbElement& a) const;

  bool operator==(const AbelianTarget&) const = default;

 private:
  std::vector<std::int64_t> factors_;
};

/// |Hom(Z/m1 + ... + Z/mr, H)| = prod over i, j of gcd(m_i, d_j).
BigInt hom_count_from_factors(const std::vector<std::int64_t>& source_factors,
                              const AbelianTarget& target);

}  // namespace jensen
