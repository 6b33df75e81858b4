#include "jensen/solver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace jensen {

namespace {

// a + b - 2c == 0 in H
bool jensen_holds(const AbelianTarget& h, const AbElement& a, const AbElement& b, const AbElement& c) {
  const auto& d = h.factors();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if ((a.residues[i] + b.residues[i] - 2 * c.residues[i]) % d[i] != 0) return false;
  }
  return true;
}

// The Jensen identities evaluated on a flat residue array (stride = rank).
bool flat_solution(const FiniteGroup& g, const std::vector<std::int64_t>& factors,
                   const std::vector<std::int64_t>& flat, EquationKind kind) {
  const std::size_t k = factors.size();
  const std::size_t n = g.size();
  auto holds = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    for (std::size_t i = 0; i < k; ++i) {
      if ((flat[a * k + i] + flat[b * k + i] - 2 * flat[c * k + i]) % factors[i] != 0) return false;
    }
    return true;
  };
  const bool j1 = kind != EquationKind::kJ2;
  const bool j2 = kind != EquationKind::kJ1;
  for (std::uint32_t x = 0; x < n; ++x) {
    const Element ex{x};
    for (std::uint32_t y = 0; y < n; ++y) {
      const Element ey{y};
      const std::uint32_t xy = g.multiply(ex, ey).index;
      if (j1 && !holds(xy, g.multiply(ex, g.inverse(ey)).index, x)) return false;
      if (j2 && !holds(xy, g.multiply(g.inverse(ex), ey).index, y)) return false;
    }
  }
  return true;
}

void append_rows(const FiniteGroup& g, bool second_kind, std::set<SparseIntMatrix::Row>& seen,
                 SparseIntMatrix& out) {
  const std::size_t n = g.size();
  std::map<std::uint32_t, std::int64_t> acc;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      const Element ex{x}, ey{y};
      acc.clear();
      const Element xy = g.multiply(ex, ey);
      const Element other = second_kind ? g.multiply(g.inverse(ex), ey) : g.multiply(ex, g.inverse(ey));
      const Element doubled = second_kind ? ey : ex;
      if (xy != kIdentity) acc[xy.index - 1] += 1;
      if (other != kIdentity) acc[other.index - 1] += 1;
      if (doubled != kIdentity) acc[doubled.index - 1] -= 2;
      SparseIntMatrix::Row row;
      for (const auto& [col, coef] : acc)
        if (coef != 0) row.emplace_back(col, coef);
      if (seen.insert(row).second) out.rows.push_back(std::move(row));
    }
  }
}

void require_system_cap(const FiniteGroup& g) {
  if (g.size() > kMaxGenericOrder) {
    throw SizeCapExceeded("equation systems require |G| <= " + std::to_string(kMaxGenericOrder));
  }
}

BigInt power(const BigInt& base, std::size_t exp) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_enumerable(const BigInt& count, std::uint64_t cap, const std::string& what) {
  if (count > BigInt(static_cast<unsigned long>(cap))) {
    throw CapExceeded(what + " of size " + count.get_str() + " exceeds enumeration cap " + std::to_string(cap));
  }
}

}  // namespace

std::string_view to_string(EquationKind kind) {
  switch (kind) {
    case EquationKind::kJ1:
      return "J1";
    case EquationKind::kJ2:
      return "J2";
    case EquationKind::kJ12:
      return "J12";
  }
  return "?";
}

std::optional<EquationKind> parse_equation_kind(std::string_view text) {
  if (text == "J1") return EquationKind::kJ1;
  if (text == "J2") return EquationKind::kJ2;
  if (text == "J12") return EquationKind::kJ12;
  return std::nullopt;
}

bool GroupMap::normalized() const { return !values.empty() && target->is_zero(values[0]); }

GroupMap zero_map(const FiniteGroup& group, const AbelianTarget& target) {
  return GroupMap{&group, &target, std::vector<AbElement>(group.size(), target.zero())};
}

GroupMap make_map(const FiniteGroup& group, const AbelianTarget& target, std::vector<AbElement> values) {
  if (values.size() != group.size()) throw std::invalid_argument("map needs one value per group element");
  for (const AbElement& v : values) {
    if (!target.belongs(v)) throw std::invalid_argument("map value " + target.format(v) + " not in " + target.spec());
  }
  if (!target.is_zero(values[0])) throw std::invalid_argument("map is not normalised: f(e) != 0");
  return GroupMap{&group, &target, std::move(values)};
}

SparseIntMatrix build_sparse_system(const FiniteGroup& group, EquationKind kind) {
  require_system_cap(group);
  SparseIntMatrix out;
  out.cols = group.size() - 1;
  std::set<SparseIntMatrix::Row> seen;
  if (kind != EquationKind::kJ2) append_rows(group, false, seen, out);
  if (kind != EquationKind::kJ1) append_rows(group, true, seen, out);
  return out;
}

IntMatrix build_system(const FiniteGroup& group, EquationKind kind) {
  return build_sparse_system(group, kind).to_dense();
}

SolutionSpace::SolutionSpace(const FiniteGroup& group, const AbelianTarget& target, EquationKind kind,
                             std::vector<ModKernel> per_factor)
    : group_(&group), target_(&target), kind_(kind), per_factor_(std::move(per_factor)), cardinality_(1) {
  if (per_factor_.size() != target.rank()) throw std::invalid_argument("one kernel per cyclic factor required");
  for (const ModKernel& k : per_factor_) cardinality_ *= k.cardinality;
}

std::vector<GroupMap> SolutionSpace::generators() const {
  std::vector<GroupMap> out;
  for (std::size_t f = 0; f < per_factor_.size(); ++f) {
    for (const auto& vec : per_factor_[f].basis) {
      GroupMap m = zero_map(*group_, *target_);
      for (std::size_t g = 1; g < group_->size(); ++g) m.values[g].residues[f] = vec[g - 1];
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<GroupMap> SolutionSpace::enumerate(std::uint64_t cap) const {
  require_enumerable(cardinality_, cap, "solution space");
  std::vector<std::vector<std::vector<std::int64_t>>> members;
  for (const ModKernel& k : per_factor_) members.push_back(k.members(cap));
  std::vector<GroupMap> out;
  std::vector<std::size_t> idx(members.size(), 0);
  for (;;) {
    GroupMap m = zero_map(*group_, *target_);
    for (std::size_t f = 0; f < members.size(); ++f) {
      const auto& vec = members[f][idx[f]];
      for (std::size_t g = 1; g < group_->size(); ++g) m.values[g].residues[f] = vec[g - 1];
    }
    out.push_back(std::move(m));
    std::size_t f = members.size();
    for (;;) {
      if (f == 0) return out;
      --f;
      if (++idx[f] < members[f].size()) break;
      idx[f] = 0;
    }
  }
}

bool SolutionSpace::contains(const GroupMap& f) const { return f.normalized() && is_solution(f, kind_); }

SolutionSpace solve(const FiniteGroup& group, const AbelianTarget& target, EquationKind kind) {
  const SparseIntMatrix system = build_sparse_system(group, kind);
  const LatticeSmithForm form = lattice_smith_form(system);
  std::vector<ModKernel> kernels;
  for (std::int64_t d : target.factors()) kernels.push_back(kernel_from_smith(form, d));
  return SolutionSpace(group, target, kind, std::move(kernels));
}

BigInt brute_force_search_space(const FiniteGroup& group, const AbelianTarget& target) {
  return power(target.cardinality(), group.size() - 1);
}

std::vector<GroupMap> brute_force_solutions(const FiniteGroup& group, const AbelianTarget& target,
                                            EquationKind kind, std::uint64_t cap) {
  require_enumerable(brute_force_search_space(group, target), cap, "brute-force search space");
  const std::vector<AbElement> elems = target.enumerate(cap);
  const std::size_t n = group.size(), k = target.rank();
  std::vector<std::size_t> choice(n, 0);  // choice[0] stays at zero
  std::vector<std::int64_t> flat(n * k, 0);
  std::vector<GroupMap> out;
  for (;;) {
    if (flat_solution(group, target.factors(), flat, kind)) {
      GroupMap m = zero_map(group, target);
      for (std::size_t g = 1; g < n; ++g) m.values[g] = elems[choice[g]];
      out.push_back(std::move(m));
    }
    // odometer over elements 1..n-1, last element fastest
    std::size_t g = n;
    for (;;) {
      if (g <= 1) {
        std::sort(out.begin(), out.end());
        return out;
      }
      --g;
      if (++choice[g] < elems.size()) {
        for (std::size_t i = 0; i < k; ++i) flat[g * k + i] = elems[choice[g]].residues[i];
        break;
      }
      choice[g] = 0;
      for (std::size_t i = 0; i < k; ++i) flat[g * k + i] = 0;
    }
  }
}

bool is_solution(const GroupMap& f, EquationKind kind) {
  const FiniteGroup& g = *f.group;
  const AbelianTarget& h = *f.target;
  const bool j1 = kind != EquationKind::kJ2;
  const bool j2 = kind != EquationKind::kJ1;
  for (Element x : g.elements()) {
    for (Element y : g.elements()) {
      const Element xy = g.multiply(x, y);
      if (j1 && !jensen_holds(h, f(xy), f(g.multiply(x, g.inverse(y))), f(x))) return false;
      if (j2 && !jensen_holds(h, f(xy), f(g.multiply(g.inverse(x), y)), f(y))) return false;
    }
  }
  return true;
}

bool is_homomorphism(const GroupMap& f) {
  const FiniteGroup& g = *f.group;
  const AbelianTarget& h = *f.target;
  for (Element x : g.elements())
    for (Element y : g.elements())
      if (f(g.multiply(x, y)) != h.add(f(x), f(y))) return false;
  return true;
}

std::vector<GroupMap> hom_space_by_generators(const FiniteGroup& group, const AbelianTarget& target,
                                              std::uint64_t cap) {
  const ElementSet& gens = group.generators();
  require_enumerable(power(target.cardinality(), gens.size()), cap, "generator assignment space");
  const std::vector<AbElement> elems = target.enumerate(cap);
  std::vector<std::size_t> choice(gens.size(), 0);
  std::vector<GroupMap> out;
  const std::size_t n = group.size();
  for (;;) {
    std::vector<std::optional<AbElement>> value(n);
    value[0] = target.zero();
    std::deque<Element> queue{kIdentity};
    bool consistent = true;
    while (!queue.empty() && consistent) {
      const Element x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Element y = group.multiply(x, gens[i]);
        AbElement v = target.add(*value[x.index], elems[choice[i]]);
        if (!value[y.index]) {
          value[y.index] = std::move(v);
          queue.push_back(y);
        } else if (*value[y.index] != v) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent) {
      GroupMap m = zero_map(group, target);
      for (std::size_t g = 0; g < n; ++g) m.values[g] = *value[g];
      out.push_back(std::move(m));
    }
    std::size_t i = gens.size();
    for (;;) {
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
      --i;
      if (++choice[i] < elems.size()) break;
      choice[i] = 0;
    }
  }
}

std::vector<GroupMap> hom_space_by_abelianization(const FiniteGroup& group, const AbelianTarget& target,
                                                  std::uint64_t cap) {
  const Abelianization ab = abelianization(group);
  require_enumerable(hom_count_from_factors(ab.invariant_factors, target), cap, "Hom(G_ab, H)");
  const std::vector<AbElement> elems = target.enumerate(cap);
  // Admissible images of each cyclic generator: m_i * h = 0.
  std::vector<std::vector<AbElement>> images;
  for (std::int64_t m : ab.invariant_factors) {
    std::vector<AbElement> ok;
    for (const AbElement& h : elems)
      if (target.is_zero(target.scale(m, h))) ok.push_back(h);
    images.push_back(std::move(ok));
  }
  std::vector<std::size_t> choice(images.size(), 0);
  std::vector<GroupMap> out;
  for (;;) {
    GroupMap m = zero_map(group, target);
    for (std::size_t g = 0; g < group.size(); ++g) {
      AbElement v = target.zero();
      for (std::size_t i = 0; i < images.size(); ++i)
        v = target.add(v, target.scale(ab.projection[g][i], images[i][choice[i]]));
      m.values[g] = std::move(v);
    }
    out.push_back(std::move(m));
    std::size_t i = images.size();
    for (;;) {
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
      --i;
      if (++choice[i] < images[i].size()) break;
      choice[i] = 0;
    }
  }
}

std::vector<GroupMap> hom_space(const FiniteGroup& group, const AbelianTarget& target, std::uint64_t cap) {
  std::vector<GroupMap> by_generators = hom_space_by_generators(group, target, cap);
  const std::vector<GroupMap> by_abelianization = hom_space_by_abelianization(group, target, cap);
  if (by_generators != by_abelianization) {
    throw std::logic_error("homomorphism enumeration methods disagree on " + group.spec() + " -> " +
                           target.spec());
  }
  return by_generators;
}

MapSet as_map_set(const SolutionSpace& space) {
  MapSet s;
  s.label = std::string(to_string(space.kind()));
  s.cardinality = space.cardinality();
  s.generators = space.generators();
  s.contains = [&space](const GroupMap& f) { return space.contains(f); };
  s.members = [&space](std::uint64_t cap) { return space.enumerate(cap); };
  return s;
}

MapSet as_map_set(std::string label, std::vector<GroupMap> members, std::function<bool(const GroupMap&)> contains) {
  std::sort(members.begin(), members.end());
  MapSet s;
  s.label = std::move(label);
  s.cardinality = static_cast<unsigned long>(members.size());
  s.generators = members;
  s.contains = std::move(contains);
  s.members = [list = std::move(members)](std::uint64_t) { return list; };
  return s;
}

MapSet hom_map_set(std::vector<GroupMap> homs) {
  return as_map_set("Hom", std::move(homs), [](const GroupMap& f) { return f.normalized() && is_homomorphism(f); });
}

SpaceComparison spaces_equal(const MapSet& a, const MapSet& b, std::uint64_t cap) {
  SpaceComparison out;
  out.left_cardinality = a.cardinality;
  out.right_cardinality = b.cardinality;
  const BigInt big_cap = static_cast<unsigned long>(cap);
  if (a.cardinality > big_cap && b.cardinality > big_cap) {
    throw CapExceeded("spaces_equal: both sides exceed the enumeration cap");
  }
  if (a.cardinality != b.cardinality) {
    // Some generator of the larger side must escape the smaller one.
    const MapSet& big = a.cardinality > b.cardinality ? a : b;
    const MapSet& small = a.cardinality > b.cardinality ? b : a;
    std::vector<GroupMap> candidates = big.cardinality <= big_cap ? big.members(cap) : big.generators;
    for (GroupMap& f : candidates) {
      if (!small.contains(f)) {
        out.certificate = std::move(f);
        break;
      }
    }
    out.detail = "|" + a.label + "| = " + a.cardinality.get_str() + " != |" + b.label +
                 "| = " + b.cardinality.get_str();
    return out;
  }
  for (const GroupMap& f : a.generators) {
    if (!b.contains(f)) {
      out.certificate = f;
      out.detail = "a generator of " + a.label + " is not in " + b.label;
      return out;
    }
  }
  out.equal = true;
  out.detail = a.label + " = " + b.label + " (" + a.cardinality.get_str() + " maps)";
  return out;
}

}  // namespace jensen
