#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jensen/abelian.hpp"
#include "jensen/group.hpp"
#include "jensen/int_linalg.hpp"

namespace jensen {

/// J1: f(xy) + f(xy^-1) = 2f(x);  J2: f(xy) + f(x^-1 y) = 2f(y);  J12: both.
enum class EquationKind { kJ1, kJ2, kJ12 };

std::string_view to_string(EquationKind kind);
std::optional<EquationKind> parse_equation_kind(std::string_view text);

/// A map f: G -> H stored by value per group element. Holds non-owning
/// pointers to its group and target, which must outlive it.
struct GroupMap {
  const FiniteGroup* group = nullptr;
  const AbelianTarget* target = nullptr;
  std::vector<AbElement> values;

  const AbElement& operator()(Element g) const { return values[g.index]; }
  bool normalized() const;

  // Maps are compared by values only.
  bool operator==(const GroupMap& rhs) const { return values == rhs.values; }
  auto operator<=>(const GroupMap& rhs) const { return values <=> rhs.values; }
};

GroupMap zero_map(const FiniteGroup& group, const AbelianTarget& target);
/// Validates length, membership in H and f(e) = 0.
GroupMap make_map(const FiniteGroup& group, const AbelianTarget& target, std::vector<AbElement> values);

/// Linearised system: one column per non-identity element (column g-1 for
/// element g), one row per ordered pair (x, y) in lexicographic order with
/// coefficients accumulated, identity terms dropped, duplicate rows removed.
/// J12 stacks the J1 rows followed by the J2 rows.
SparseIntMatrix build_sparse_system(const FiniteGroup& group, EquationKind kind);
IntMatrix build_system(const FiniteGroup& group, EquationKind kind);

/// Normalised solutions of a system over H, one kernel per cyclic factor.
class SolutionSpace {
 public:
  SolutionSpace(const FiniteGroup& group, const AbelianTarget& target, EquationKind kind,
                std::vector<ModKernel> per_factor);

  const FiniteGroup& group() const { return *group_; }
  const AbelianTarget& target() const { return *target_; }
  EquationKind kind() const { return kind_; }
  const std::vector<ModKernel>& per_factor() const { return per_factor_; }
  const BigInt& cardinality() const { return cardinality_; }

  /// Kernel generators embedded as maps (supported on one factor each).
  std::vector<GroupMap> generators() const;
  /// Lexicographic over per-factor kernel coordinates, factor 0 outermost.
  std::vector<GroupMap> enumerate(std::uint64_t cap = kDefaultEnumerationCap) const;
  bool contains(const GroupMap& f) const;

 private:
  const FiniteGroup* group_;
  const AbelianTarget* target_;
  EquationKind kind_;
  std::vector<ModKernel> per_factor_;
  BigInt cardinality_;
};

SolutionSpace solve(const FiniteGroup& group, const AbelianTarget& target, EquationKind kind);

/// Independent oracle: tests every normalised map by direct substitution.
/// Throws CapExceeded when |H|^(|G|-1) > cap.
std::vector<GroupMap> brute_force_solutions(const FiniteGroup& group, const AbelianTarget& target,
                                            EquationKind kind,
                                            std::uint64_t cap = kDefaultEnumerationCap);
BigInt brute_force_search_space(const FiniteGroup& group, const AbelianTarget& target);

bool is_solution(const GroupMap& f, EquationKind kind);
bool is_homomorphism(const GroupMap& f);

/// Hom(G, H) by assigning values to `group.generators()` and propagating along
/// the Cayley graph, rejecting inconsistent assignments. Sorted.
std::vector<GroupMap> hom_space_by_generators(const FiniteGroup& group, const AbelianTarget& target,
                                              std::uint64_t cap = kDefaultEnumerationCap);
/// Hom(G, H) as pull-backs of Hom(G_ab, H) through the abelianization. Sorted.
std::vector<GroupMap> hom_space_by_abelianization(const FiniteGroup& group, const AbelianTarget& target,
                                                  std::uint64_t cap = kDefaultEnumerationCap);
/// Runs both methods and throws std::logic_error if they disagree.
std::vector<GroupMap> hom_space(const FiniteGroup& group, const AbelianTarget& target,
                                std::uint64_t cap = kDefaultEnumerationCap);

/// One side of a solution-space comparison. `contains` must define a
/// subgroup of Map(G, H) whenever `generators` is not the full member list.
struct MapSet {
  std::string label;
  BigInt cardinality;
  std::vector<GroupMap> generators;
  std::function<bool(const GroupMap&)> contains;
  std::function<std::vector<GroupMap>(std::uint64_t)> members;
};

MapSet as_map_set(const SolutionSpace& space);
MapSet as_map_set(std::string label, std::vector<GroupMap> members,
                  std::function<bool(const GroupMap&)> contains);
/// Hom(G, H) as an explicit set with is_homomorphism as its membership test.
MapSet hom_map_set(std::vector<GroupMap> homs);

struct SpaceComparison {
  bool equal = false;
  BigInt left_cardinality;
  BigInt right_cardinality;
  std::optional<GroupMap> certificate;  // member of one side failing the other's condition
  std::string detail;
};

/// Equal iff the cardinalities agree and every generator of `a` satisfies
/// `b`'s membership test. Throws CapExceeded if neither side is enumerable.
SpaceComparison spaces_equal(const MapSet& a, const MapSet& b, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace jensen
