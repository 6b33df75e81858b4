#include "jensen/sr2.hpp"

#include <algorithm>
#include <array>

namespace jensen {

namespace {

// Lexicographic rank of a 0-based permutation; equals its index in S_n.
std::uint32_t rank_of(const std::vector<std::uint8_t>& p) {
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < p.size(); ++j) smaller += p[j] < p[i] ? 1U : 0U;
    std::uint32_t f = 1;
    for (std::size_t k = 2; k < p.size() - i; ++k) f *= static_cast<std::uint32_t>(k);
    rank += smaller * f;
  }
  return rank;
}

// The two moved points of a transposition, ascending.
std::array<std::uint8_t, 2> moved_pair(const FiniteGroup& sn, Element tau) {
  const auto p = sn.permutation(tau);
  std::vector<std::uint8_t> moved;
  for (std::uint8_t i = 0; i < p.size(); ++i)
    if (p[i] != i) moved.push_back(i);
  if (moved.size() != 2) throw GroupError("'" + sn.name(tau) + "' is not a transposition");
  return {moved[0], moved[1]};
}

// Element of S_n mapping cycle[0] -> cycle[1] -> ... -> cycle[0].
Element cycle_element(const FiniteGroup& sn, std::initializer_list<std::uint8_t> cycle) {
  std::vector<std::uint8_t> p(sn.family_parameter());
  for (std::uint8_t i = 0; i < p.size(); ++i) p[i] = i;
  const std::vector<std::uint8_t> c(cycle);
  for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return Element{rank_of(p)};
}

}  // namespace

std::vector<PairResult> Sr2Report::failures() const {
  std::vector<PairResult> out;
  for (const PairResult& p : pairs)
    if (!p.witness) out.push_back(p);
  return out;
}

std::optional<Element> find_square_root(const FiniteGroup& group, Element g) {
  for (Element t : group.elements())
    if (group.multiply(t, t) == g) return t;
  return std::nullopt;
}

Sr2Report check_sr2(const FiniteGroup& group, const InvolutionSet& involutions) {
  if (involutions.empty()) throw GroupError("SR2 check needs a non-empty involution set");
  Sr2Report report;
  report.generates = subgroup_closure(group, involutions.members()).size() == group.size();

  // Lowest-index square root per element, same answer as find_square_root.
  std::vector<std::optional<Element>> root(group.size());
  for (Element t : group.elements()) {
    auto& slot = root[group.multiply(t, t).index];
    if (!slot) slot = t;
  }
  const ElementSet& m = involutions.members();
  bool all_pairs = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i; j < m.size(); ++j) {
      const Element product = group.multiply(m[i], m[j]);
      report.pairs.push_back(PairResult{m[i], m[j], product, root[product.index]});
      all_pairs = all_pairs && root[product.index].has_value();
    }
  }
  report.verdict = report.generates && all_pairs;
  return report;
}

InvolutionSet transpositions(const FiniteGroup& symmetric) {
  if (symmetric.family() != GroupFamily::kSymmetric) throw GroupError("transpositions need S_n");
  ElementSet out;
  for (Element a : symmetric.elements()) {
    const auto p = symmetric.permutation(a);
    std::size_t moved = 0;
    for (std::uint8_t i = 0; i < p.size(); ++i) moved += p[i] != i ? 1 : 0;
    if (moved == 2) out.push_back(a);
  }
  return InvolutionSet(symmetric, std::move(out));
}

InvolutionSet reflections(const FiniteGroup& dihedral) {
  if (dihedral.family() != GroupFamily::kDihedral) throw GroupError("reflections need D_m");
  const std::uint32_t m = dihedral.family_parameter();
  ElementSet out;
  for (std::uint32_t k = 0; k < m; ++k) out.push_back(Element{m + k});
  return InvolutionSet(dihedral, std::move(out));
}

InvolutionSet default_involutions(const FiniteGroup& group) {
  switch (group.family()) {
    case GroupFamily::kSymmetric:
      return transpositions(group);
    case GroupFamily::kDihedral:
      return reflections(group);
    default:
      return involutions(group);
  }
}

Element sn_witness(const FiniteGroup& symmetric, Element tau1, Element tau2) {
  if (symmetric.family() != GroupFamily::kSymmetric) throw GroupError("sn_witness needs S_n");
  const auto p = moved_pair(symmetric, tau1);
  const auto q = moved_pair(symmetric, tau2);
  if (p == q) return kIdentity;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (p[i] != q[j]) continue;
      // (a b)(b c) = (a b c); t = (a c b)
      const std::uint8_t b = p[i], a = p[1 - i], c = q[1 - j];
      return cycle_element(symmetric, {a, c, b});
    }
  }
  // (a b)(c d); t = (a c b d)
  return cycle_element(symmetric, {p[0], q[0], p[1], q[1]});
}

Element dihedral_odd_witness(unsigned m, long k) {
  if (m == 0 || m % 2 == 0) throw GroupError("dihedral_odd_witness needs odd m, got " + std::to_string(m));
  const long mm = static_cast<long>(m);
  const long u = (mm + 1) / 2;
  const long reduced = ((k % mm) + mm) % mm;
  return Element{static_cast<std::uint32_t>((reduced * u) % mm)};
}

}  // namespace jensen
