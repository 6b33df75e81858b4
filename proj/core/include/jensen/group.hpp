#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jensen {

/// Index of an element inside a FiniteGroup. The identity is always index 0.
struct Element {
  std::uint32_t index = 0;

  constexpr auto operator<=>(const Element&) const = default;
};

constexpr Element kIdentity{0};

using ElementSet = std::vector<Element>;  // kept sorted by index

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest group materialised as a Cayley table (S_7).
inline constexpr std::size_t kMaxTableOrder = 5040;
// Cap for generic tables and direct products.
inline constexpr std::size_t kMaxGenericOrder = 4096;

enum class GroupFamily { kGeneric, kSymmetric, kDihedral, kCyclic, kProduct };

/// A finite group stored as a validated Cayley table with display names.
///
/// Values are immutable after construction. Construction validates the
/// Latin-square property, the identity law at index 0, two-sided inverses, and
/// associativity (exhaustive up to 64 elements, a seeded spot check of
/// 10 * size triples above that).
class FiniteGroup {
 public:
  /// Builds a group from an explicit table; `table[i][j]` is the index of g_i * g_j.
  static FiniteGroup from_table(const std::vector<std::vector<std::uint32_t>>& table,
                                std::vector<std::string> names);

  std::size_t size() const { return order_; }

  Element multiply(Element a, Element b) const {
    return Element{table_[static_cast<std::size_t>(a.index) * order_ + b.index]};
  }
  Element inverse(Element a) const { return inverse_[a.index]; }
  std::uint32_t element_order(Element a) const { return element_order_[a.index]; }

  const std::string& name(Element a) const { return names_[a.index]; }
  std::span<const std::string> names() const { return names_; }

  /// Exact display-name lookup, falling back to a normalised comparison that
  /// ignores whitespace and accepts `*` or `.` in place of `·`.
  std::optional<Element> find(std::string_view name) const;

  /// All elements in index order.
  ElementSet elements() const;

  bool contains(Element a) const { return a.index < order_; }

  GroupFamily family() const { return family_; }
  /// Family parameter: n for S_n and C_n, m for D_m, 0 otherwise.
  unsigned family_parameter() const { return family_parameter_; }
  /// Canonical spec string, e.g. "S:3", "D:4", "prod(C:2,C:2)".
  const std::string& spec() const { return spec_; }

  /// Generating set preferred by homomorphism enumeration: adjacent
  /// transpositions for S_n, {r, s} for D_m, {1} for C_n, embedded factor
  /// generators for products, a greedy minimal set otherwise.
  const ElementSet& generators() const { return generators_; }

  /// One-line image list (0-based) of an S_n element; empty for other families.
  std::span<const std::uint8_t> permutation(Element a) const;

  bool is_abelian() const;

 private:
  friend FiniteGroup build_symmetric(unsigned n);
  friend FiniteGroup build_dihedral(unsigned m);
  friend FiniteGroup build_cyclic(unsigned n);
  friend FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

  FiniteGroup() = default;

  static FiniteGroup make(std::size_t order, std::vector<std::uint16_t> table,
                          std::vector<std::string> names, GroupFamily family,
                          unsigned parameter, std::string spec);
  void validate() const;
  void derive_tables();

  std::size_t order_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<std::string> names_;
  std::vector<Element> inverse_;
  std::vector<std::uint32_t> element_order_;
  GroupFamily family_ = GroupFamily::kGeneric;
  unsigned family_parameter_ = 0;
  std::string spec_;
  ElementSet generators_;
  std::vector<std::uint8_t> permutations_;  // order_ * degree, S_n only
};

/// Symmetric group on {1..n}, 1 <= n <= 7. Elements are in lexicographic
/// one-line order and composition is right to left: (s * t)(i) = s(t(i)),
/// so "(1 2)" * "(2 3)" = "(1 2 3)". Names use cycle notation, "()" for e.
FiniteGroup build_symmetric(unsigned n);

/// Dihedral group D_m of order 2m, 1 <= m <= 64, ordered e, r, ..., r^(m-1),
/// s, s·r, ..., s·r^(m-1).
FiniteGroup build_dihedral(unsigned m);

/// Cyclic group Z/n, 1 <= n <= 128, element k named "k".
FiniteGroup build_cyclic(unsigned n);

/// Componentwise product; identity (e,e), names "(a,b)", |G1|*|G2| <= 4096.
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

/// Set of involutions: non-identity elements squaring to the identity.
class InvolutionSet {
 public:
  InvolutionSet() = default;
  /// Throws GroupError if a member is the identity or does not square to e.
  InvolutionSet(const FiniteGroup& group, ElementSet members);

  const ElementSet& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Element a) const;

 private:
  ElementSet members_;
};

InvolutionSet involutions(const FiniteGroup& group);
ElementSet squares(const FiniteGroup& group);
ElementSet subgroup_closure(const FiniteGroup& group, std::span<const Element> seed);
ElementSet commutator_subgroup(const FiniteGroup& group);

/// G/[G,G] in invariant-factor form together with the projection onto
/// residue vectors.
struct Abelianization {
  std::vector<std::int64_t> invariant_factors;  // d1 | d2 | ..., each >= 2
  // projection[g] = residues of the image of g, one per invariant factor
  std::vector<std::vector<std::int64_t>> projection;
};

Abelianization abelianization(const FiniteGroup& group);

/// Decomposes an abelian group given by its table into invariant factors by
/// repeatedly splitting off a cyclic subgroup of maximal order.
Abelianization decompose_abelian(const std::vector<std::vector<std::uint32_t>>& table);

}  // namespace jensen
