#pragma once

#include <optional>
#include <vector>

#include "jensen/group.hpp"

namespace jensen {

/// Witness search for one unordered pair {a, b} of involutions (a <= b by index).
struct PairResult {
  Element a;
  Element b;
  Element product;                // a * b
  std::optional<Element> witness;  // lowest-index t with t * t = a * b
};

/// Outcome of the square-root criterion: I generates G, and every product of
/// two members of I is a square.
struct Sr2Report {
  bool generates = false;
  std::vector<PairResult> pairs;
  bool verdict = false;

  std::vector<PairResult> failures() const;
};

/// Throws GroupError when `involutions` is empty or (by construction of
/// InvolutionSet) malformed.
Sr2Report check_sr2(const FiniteGroup& group, const InvolutionSet& involutions);

/// First t in index order with t * t = g.
std::optional<Element> find_square_root(const FiniteGroup& group, Element g);

/// Family default: transpositions for S_n, reflections for D_m, all
/// involutions otherwise.
InvolutionSet default_involutions(const FiniteGroup& group);
InvolutionSet transpositions(const FiniteGroup& symmetric);
InvolutionSet reflections(const FiniteGroup& dihedral);

/// Closed-form square root of tau1 * tau2 in S_n: e for equal transpositions,
/// (a c b) for (a b)(b c), and (a c b d) for disjoint (a b)(c d).
/// Throws GroupError if `symmetric` is not S_n or an input is not a transposition.
Element sn_witness(const FiniteGroup& symmetric, Element tau1, Element tau2);

/// Index of r^(k*u mod m) in D_m with u = (m + 1) / 2, whose square is r^k.
/// Throws GroupError for even m.
Element dihedral_odd_witness(unsigned m, long k);

}  // namespace jensen
