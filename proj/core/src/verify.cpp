#include "jensen/verify.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "jensen/spec_parser.hpp"

namespace jensen {

using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Linear relations sum_i coef_i * f(g_i) = 0. Every identity checked on a map
// is one of these, so failures and rechecks share one definition.

struct Term {
  std::int64_t coef = 0;
  Element at;
};

struct Relation {
  std::array<Term, 4> terms{};
  std::size_t size = 0;

  Relation& add(std::int64_t coef, Element at) {
    terms[size++] = Term{coef, at};
    return *this;
  }
};

using Builder = Relation (*)(const FiniteGroup&, std::span<const Element>, std::int64_t);

struct RelationSpec {
  const char* id;
  std::vector<const char*> vars;
  Builder build;
};

Element mul(const FiniteGroup& g, Element a, Element b) { return g.multiply(a, b); }
Element mul(const FiniteGroup& g, Element a, Element b, Element c) { return g.multiply(g.multiply(a, b), c); }

const std::vector<RelationSpec>& relation_table() {
  static const std::vector<RelationSpec> table = {
      // f(x^-1) + f(x) = 0
      {"inverse", {"x"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, g.inverse(v[0])).add(1, v[0]);
       }},
      // f(x^2) - 2 f(x) = 0
      {"square", {"x"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, mul(g, v[0], v[0])).add(-2, v[0]);
       }},
      // f(xyz) = 2 f(x) - f(x z^-1 y^-1)
      {"switch_xyz", {"x", "y", "z"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}
             .add(1, mul(g, v[0], v[1], v[2]))
             .add(-2, v[0])
             .add(1, mul(g, v[0], g.inverse(v[2]), g.inverse(v[1])));
       }},
      // f(xzy) = 2 f(x) - f(x y^-1 z^-1)
      {"switch_xzy", {"x", "y", "z"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}
             .add(1, mul(g, v[0], v[2], v[1]))
             .add(-2, v[0])
             .add(1, mul(g, v[0], g.inverse(v[1]), g.inverse(v[2])));
       }},
      // f(xyz) - f(xzy) = f(x y^-1 z^-1) - f(x z^-1 y^-1)
      {"pair_difference", {"x", "y", "z"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         const Element yi = g.inverse(v[1]), zi = g.inverse(v[2]);
         return Relation{}
             .add(1, mul(g, v[0], v[1], v[2]))
             .add(-1, mul(g, v[0], v[2], v[1]))
             .add(-1, mul(g, v[0], yi, zi))
             .add(1, mul(g, v[0], zi, yi));
       }},
      {"involution_torsion", {"a"},
       [](const FiniteGroup&, std::span<const Element> v, std::int64_t) { return Relation{}.add(2, v[0]); }},
      {"pair_torsion", {"a", "b"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(2, mul(g, v[0], v[1]));
       }},
      // f(ab) = 2 f(t) for t^2 = ab
      {"root_square", {"a", "b", "t"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, mul(g, v[0], v[1])).add(-2, v[2]);
       }},
      {"root_torsion", {"t"},
       [](const FiniteGroup&, std::span<const Element> v, std::int64_t) { return Relation{}.add(4, v[0]); }},
      {"word_torsion", {"g"},
       [](const FiniteGroup&, std::span<const Element> v, std::int64_t) { return Relation{}.add(2, v[0]); }},
      // f(xyz) = f(xzy)
      {"reorder", {"x", "y", "z"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, mul(g, v[0], v[1], v[2])).add(-1, mul(g, v[0], v[2], v[1]));
       }},
      {"homomorphism", {"x", "y"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, mul(g, v[0], v[1])).add(-1, v[0]).add(-1, v[1]);
       }},
      {"J1", {"x", "y"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, mul(g, v[0], v[1])).add(1, mul(g, v[0], g.inverse(v[1]))).add(-2, v[0]);
       }},
      {"J2", {"x", "y"},
       [](const FiniteGroup& g, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, mul(g, v[0], v[1])).add(1, mul(g, g.inverse(v[0]), v[1])).add(-2, v[1]);
       }},
      // f(a) = f(b) for involutions a, b
      {"common_involution_value", {"a", "b"},
       [](const FiniteGroup&, std::span<const Element> v, std::int64_t) {
         return Relation{}.add(1, v[0]).add(-1, v[1]);
       }},
      // f(g) = parity * f(i)
      {"parity", {"g", "i"},
       [](const FiniteGroup&, std::span<const Element> v, std::int64_t parity) {
         Relation r;
         r.add(1, v[0]);
         if (parity != 0) r.add(-parity, v[1]);
         return r;
       }},
  };
  return table;
}

const RelationSpec& relation(std::string_view id) {
  for (const RelationSpec& s : relation_table())
    if (s.id == id) return s;
  throw std::logic_error("unknown relation " + std::string(id));
}

// Residues of a map laid out contiguously, stride = rank of H.
class FlatMap {
 public:
  FlatMap(const AbelianTarget& target, std::vector<std::int64_t> data)
      : factors_(target.factors()), data_(std::move(data)) {}

  static FlatMap of(const GroupMap& f) {
    std::vector<std::int64_t> data;
    data.reserve(f.values.size() * f.target->rank());
    for (const AbElement& v : f.values) data.insert(data.end(), v.residues.begin(), v.residues.end());
    return FlatMap(*f.target, std::move(data));
  }

  bool vanishes(const Relation& r) const {
    const std::size_t k = factors_.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t acc = 0;
      for (std::size_t t = 0; t < r.size; ++t) acc += r.terms[t].coef * data_[r.terms[t].at.index * k + i];
      if (acc % factors_[i] != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::int64_t> factors_;
  std::vector<std::int64_t> data_;
};

ordered_json map_json(const GroupMap& f) {
  ordered_json out = ordered_json::array();
  for (const AbElement& v : f.values) out.push_back(v.residues);
  return out;
}

ordered_json map_table_json(const GroupMap& f) {
  ordered_json out = ordered_json::object();
  for (Element g : f.group->elements()) out[f.group->name(g)] = f.target->format(f(g));
  return out;
}

GroupMap map_from_json(const ordered_json& j, const FiniteGroup& g, const AbelianTarget& h) {
  if (!j.is_array() || j.size() != g.size()) throw std::invalid_argument("counterexample map has wrong length");
  GroupMap f = zero_map(g, h);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.values[i] = h.reduce(j[i].get<std::vector<std::int64_t>>());
  }
  return f;
}

ordered_json relation_json(std::string_view id, const FiniteGroup& g, std::span<const Element> elems,
                           std::int64_t param) {
  const RelationSpec& spec = relation(id);
  ordered_json cx;
  cx["identity"] = std::string(id);
  ordered_json names = ordered_json::object();
  ordered_json indices = ordered_json::array();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    names[spec.vars[i]] = g.name(elems[i]);
    indices.push_back(elems[i].index);
  }
  cx["elements"] = names;
  cx["indices"] = indices;
  if (param != 0) cx["param"] = param;
  return cx;
}

// Stops at the first violated relation and keeps it as the counterexample.
class MapChecker {
 public:
  explicit MapChecker(const GroupMap& f) : f_(f), flat_(FlatMap::of(f)) {}

  bool ok() const { return !counterexample_; }

  bool test(std::string_view id, std::initializer_list<Element> elems, std::int64_t param = 0) {
    if (counterexample_) return false;
    const std::vector<Element> v(elems);
    if (flat_.vanishes(relation(id).build(*f_.group, v, param))) return true;
    ordered_json cx = relation_json(id, *f_.group, v, param);
    cx["map"] = map_json(f_);
    counterexample_ = std::move(cx);
    return false;
  }

  std::optional<ordered_json> take() { return std::move(counterexample_); }

 private:
  const GroupMap& f_;
  FlatMap flat_;
  std::optional<ordered_json> counterexample_;
};

std::vector<GroupMap> sorted_members(const SolutionSpace& space, std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<GroupMap> out = space.enumerate(cap);
  std::sort(out.begin(), out.end());
  return out;
}

Instance instance_of(const FiniteGroup& g, const AbelianTarget& h) { return Instance{g.spec(), h.spec(), {}}; }

CheckResult finish(std::string id, Instance inst, MapChecker& checker, std::string pass_detail) {
  CheckResult r;
  r.check_id = std::move(id);
  r.instance = std::move(inst);
  if (checker.ok()) {
    r.status = CheckStatus::kPass;
    r.detail = std::move(pass_detail);
  } else {
    r.status = CheckStatus::kFail;
    r.counterexample = checker.take();
    r.detail = "violated " + (*r.counterexample)["identity"].get<std::string>();
  }
  return r;
}

CheckResult skipped(std::string id, Instance inst, std::string why) {
  CheckResult r;
  r.check_id = std::move(id);
  r.instance = std::move(inst);
  r.status = CheckStatus::kSkip;
  r.detail = std::move(why);
  return r;
}

CheckResult failed(std::string id, Instance inst, ordered_json cx, std::string why) {
  CheckResult r;
  r.check_id = std::move(id);
  r.instance = std::move(inst);
  r.status = CheckStatus::kFail;
  r.counterexample = std::move(cx);
  r.detail = std::move(why);
  return r;
}

CheckResult passed(std::string id, Instance inst, std::string why) {
  CheckResult r;
  r.check_id = std::move(id);
  r.instance = std::move(inst);
  r.status = CheckStatus::kPass;
  r.detail = std::move(why);
  return r;
}

// First (x, y) violating `condition` (J1, J2, J12 or homomorphism) for f.
std::optional<ordered_json> violation_of(const GroupMap& f, std::string_view condition) {
  MapChecker checker(f);
  const FiniteGroup& g = *f.group;
  for (Element x : g.elements()) {
    for (Element y : g.elements()) {
      if (condition == "homomorphism") checker.test("homomorphism", {x, y});
      if (condition == "J1" || condition == "J12") checker.test("J1", {x, y});
      if (condition == "J2" || condition == "J12") checker.test("J2", {x, y});
      if (!checker.ok()) return checker.take();
    }
  }
  return std::nullopt;
}

std::string kind_condition(EquationKind k) { return std::string(to_string(k)); }

// Evidence for a failed space comparison: the certificate's violated relation
// when it has one, a recomputable cardinality claim otherwise.
ordered_json comparison_counterexample(const SpaceComparison& cmp, const std::string& left,
                                       const std::string& right) {
  if (cmp.certificate) {
    for (const std::string& cond : {left, right}) {
      if (auto cx = violation_of(*cmp.certificate, cond == "Hom" ? "homomorphism" : cond)) return *cx;
    }
  }
  ordered_json cx;
  cx["identity"] = "cardinality";
  cx["left"] = left;
  cx["right"] = right;
  cx["left_cardinality"] = cmp.left_cardinality.get_str();
  cx["right_cardinality"] = cmp.right_cardinality.get_str();
  return cx;
}

BigInt side_cardinality(const std::string& side, const FiniteGroup& g, const AbelianTarget& h) {
  if (side == "Hom") return hom_count_from_factors(abelianization(g).invariant_factors, h);
  if (auto kind = parse_equation_kind(side)) return solve(g, h, *kind).cardinality();
  return BigInt(side);
}

ElementSet closure_of(const FiniteGroup& g, const InvolutionSet& inv) { return subgroup_closure(g, inv.members()); }

bool generated_by_involutions(const FiniteGroup& g) {
  const InvolutionSet all = involutions(g);
  return closure_of(g, all).size() == g.size();
}

ordered_json names_of(const FiniteGroup& g, const ElementSet& s) {
  ordered_json out = ordered_json::array();
  for (Element e : s) out.push_back(g.name(e));
  return out;
}

// Minimal involution-word lengths by BFS over the Cayley graph of I.
std::vector<int> word_lengths(const FiniteGroup& g, const InvolutionSet& inv) {
  std::vector<int> len(g.size(), -1);
  std::deque<Element> queue{kIdentity};
  len[0] = 0;
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (Element i : inv.members()) {
      const Element y = g.multiply(x, i);
      if (len[y.index] < 0) {
        len[y.index] = len[x.index] + 1;
        queue.push_back(y);
      }
    }
  }
  return len;
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkip:
      return "skip";
  }
  return "?";
}

CheckResult check_basic_identities(const GroupMap& f) {
  MapChecker checker(f);
  for (Element x : f.group->elements()) {
    checker.test("inverse", {x});
    checker.test("square", {x});
    if (!checker.ok()) break;
  }
  return finish("basic_identities", instance_of(*f.group, *f.target), checker,
                "f(x^-1) = -f(x) and f(x^2) = 2f(x) for all x");
}

CheckResult check_switching(const GroupMap& f) {
  MapChecker checker(f);
  const ElementSet all = f.group->elements();
  for (Element x : all) {
    for (Element y : all) {
      for (Element z : all) {
        checker.test("switch_xyz", {x, y, z});
        checker.test("switch_xzy", {x, y, z});
        checker.test("pair_difference", {x, y, z});
      }
      if (!checker.ok()) break;
    }
    if (!checker.ok()) break;
  }
  return finish("switching", instance_of(*f.group, *f.target), checker,
                "switching formulas hold on all " + std::to_string(all.size() * all.size() * all.size()) +
                    " triples");
}

CheckResult check_two_involution_torsion(const GroupMap& f, const InvolutionSet& involutions) {
  const FiniteGroup& g = *f.group;
  MapChecker checker(f);
  std::size_t rooted = 0;
  for (Element a : involutions.members()) {
    checker.test("involution_torsion", {a});
    for (Element b : involutions.members()) {
      checker.test("pair_torsion", {a, b});
      if (auto t = find_square_root(g, g.multiply(a, b))) {
        ++rooted;
        checker.test("root_square", {a, b, *t});
        checker.test("root_torsion", {*t});
      }
    }
    if (!checker.ok()) break;
  }
  return finish("two_involution_torsion", instance_of(g, *f.target), checker,
                "2f(a) = 2f(ab) = 0 on " + std::to_string(involutions.size()) + " involutions, " +
                    std::to_string(rooted) + " ordered pairs with square roots");
}

CheckResult check_word_torsion(const GroupMap& f, const InvolutionSet& involutions) {
  const FiniteGroup& g = *f.group;
  if (closure_of(g, involutions).size() != g.size()) {
    return skipped("word_torsion", instance_of(g, *f.target), "involutions do not generate G");
  }
  MapChecker checker(f);
  for (Element x : g.elements())
    if (!checker.test("word_torsion", {x})) break;
  return finish("word_torsion", instance_of(g, *f.target), checker, "2f(g) = 0 for all g");
}

CheckResult check_reordering(const GroupMap& f) {
  const FiniteGroup& g = *f.group;
  if (!generated_by_involutions(g)) {
    return skipped("reordering", instance_of(g, *f.target), "G is not generated by involutions");
  }
  MapChecker checker(f);
  const ElementSet all = g.elements();
  for (Element x : all) {
    for (Element y : all) {
      for (Element z : all) checker.test("reorder", {x, y, z});
      if (!checker.ok()) break;
    }
    if (!checker.ok()) break;
  }
  return finish("reordering", instance_of(g, *f.target), checker, "f(xyz) = f(xzy) on all triples");
}

CheckResult check_main_theorem(const FiniteGroup& group, const AbelianTarget& target,
                               const InvolutionSet& involutions, std::uint64_t cap) {
  Instance inst = instance_of(group, target);
  inst.parameters["involutions"] = involutions.size();
  const Sr2Report sr2 = check_sr2(group, involutions);
  if (!sr2.verdict) return skipped("main_theorem", inst, "SR2 does not hold for the given involutions");
  try {
    const SolutionSpace s1 = solve(group, target, EquationKind::kJ1);
    const SolutionSpace s12 = solve(group, target, EquationKind::kJ12);
    const std::vector<GroupMap> homs = hom_space(group, target, cap);
    const MapSet hom_set = hom_map_set(homs);

    const SpaceComparison a = spaces_equal(as_map_set(s1), as_map_set(s12), cap);
    if (!a.equal) return failed("main_theorem", inst, comparison_counterexample(a, "J1", "J12"), a.detail);
    const SpaceComparison b = spaces_equal(as_map_set(s1), hom_set, cap);
    if (!b.equal) return failed("main_theorem", inst, comparison_counterexample(b, "J1", "Hom"), b.detail);

    const BigInt formula = hom_count_from_factors(abelianization(group).invariant_factors, target);
    if (s1.cardinality() != formula) {
      ordered_json cx;
      cx["identity"] = "cardinality";
      cx["left"] = "J1";
      cx["right"] = formula.get_str();
      cx["left_cardinality"] = s1.cardinality().get_str();
      cx["right_cardinality"] = formula.get_str();
      return failed("main_theorem", inst, cx, "|S1| differs from the abelianization count");
    }
    std::vector<GroupMap> members = sorted_members(s1, cap);
    for (const GroupMap& f : members) {
      if (auto cx = violation_of(f, "homomorphism")) return failed("main_theorem", inst, *cx, "S1 member not additive");
      if (auto cx = violation_of(f, "J2")) return failed("main_theorem", inst, *cx, "S1 member violates J2");
    }
    if (members != homs) {
      ordered_json cx;
      cx["identity"] = "cardinality";
      cx["left"] = "J1";
      cx["right"] = "Hom";
      cx["left_cardinality"] = std::to_string(members.size());
      cx["right_cardinality"] = std::to_string(homs.size());
      return failed("main_theorem", inst, cx, "enumerated S1 differs from Hom");
    }
    inst.parameters["cardinality"] = s1.cardinality().get_str();
    return passed("main_theorem", inst, "S1 = S12 = Hom with " + s1.cardinality().get_str() + " maps");
  } catch (const CapExceeded& e) {
    return skipped("main_theorem", inst, e.what());
  }
}

std::optional<std::vector<int>> involution_word_parity(const FiniteGroup& group, const InvolutionSet& involutions) {
  const std::vector<int> len = word_lengths(group, involutions);
  std::vector<int> parity(group.size());
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (len[g] < 0) throw GroupError("involutions do not generate G");
    parity[g] = len[g] % 2;
  }
  // Consistent across all words iff every edge g -> g*i flips parity.
  for (Element g : group.elements())
    for (Element i : involutions.members())
      if (parity[group.multiply(g, i).index] == parity[g.index]) return std::nullopt;
  return parity;
}

CheckResult check_parity_form(const FiniteGroup& group, const AbelianTarget& target,
                              const InvolutionSet& involutions, std::uint64_t cap) {
  Instance inst = instance_of(group, target);
  if (!check_sr2(group, involutions).verdict) {
    return skipped("parity_form", inst, "SR2 does not hold for the given involutions");
  }
  const std::optional<std::vector<int>> parity = involution_word_parity(group, involutions);
  inst.parameters["parity_well_defined"] = parity.has_value();
  try {
    const SolutionSpace s1 = solve(group, target, EquationKind::kJ1);
    std::vector<GroupMap> members = sorted_members(s1, cap);
    const Element i0 = involutions.members().front();
    for (const GroupMap& f : members) {
      MapChecker checker(f);
      checker.test("involution_torsion", {i0});
      for (Element i : involutions.members()) checker.test("common_involution_value", {i0, i});
      if (parity) {
        for (Element g : group.elements()) checker.test("parity", {g, i0}, (*parity)[g.index]);
      } else {
        // No consistent parity: the only admissible u is 0.
        for (Element g : group.elements()) checker.test("parity", {g, i0}, 0);
      }
      if (!checker.ok()) return failed("parity_form", inst, *checker.take(), "solution not in parity form");
    }
    std::vector<GroupMap> expected;
    if (parity) {
      for (const AbElement& u : target.two_torsion()) {
        GroupMap m = zero_map(group, target);
        for (Element g : group.elements()) m.values[g.index] = (*parity)[g.index] ? u : target.zero();
        expected.push_back(std::move(m));
      }
    } else {
      expected.push_back(zero_map(group, target));
    }
    std::sort(expected.begin(), expected.end());
    for (const GroupMap& m : expected) {
      if (!std::binary_search(members.begin(), members.end(), m)) {
        auto cx = violation_of(m, "J1");
        if (!cx) {
          cx = ordered_json{{"identity", "cardinality"}, {"left", "J1"}, {"right", std::to_string(expected.size())},
                            {"left_cardinality", s1.cardinality().get_str()},
                            {"right_cardinality", std::to_string(expected.size())}};
        }
        return failed("parity_form", inst, *cx, "parity map missing from S1");
      }
    }
    inst.parameters["two_torsion"] = target.two_torsion().size();
    return passed("parity_form", inst,
                  std::to_string(members.size()) + " solutions, all of the form parity * u with u in H[2]");
  } catch (const CapExceeded& e) {
    return skipped("parity_form", inst, e.what());
  }
}

GroupMap construct_counterexample(const FiniteGroup& dihedral, const AbelianTarget& target, const AbElement& u,
                                  const AbElement& c) {
  if (dihedral.family() != GroupFamily::kDihedral) throw std::invalid_argument("counterexample needs D_m");
  const unsigned m = dihedral.family_parameter();
  if (m % 2 != 0) throw std::invalid_argument("counterexample needs even m, got " + std::to_string(m));
  for (const AbElement* v : {&u, &c}) {
    if (!target.belongs(*v)) throw std::invalid_argument(target.format(*v) + " is not an element of " + target.spec());
    if (!target.is_zero(target.scale(2, *v))) {
      throw std::invalid_argument(target.format(*v) + " is not 2-torsion in " + target.spec());
    }
  }
  GroupMap f = zero_map(dihedral, target);
  for (unsigned k = 0; k < m; ++k) {
    f.values[k] = k % 2 ? u : target.zero();
    f.values[m + k] = c;
  }
  return f;
}

std::vector<CheckResult> check_dihedral_dichotomy(const std::vector<unsigned>& m_range, const AbelianTarget& target,
                                                  std::uint64_t cap) {
  std::vector<CheckResult> out;
  for (unsigned m : m_range) {
    const FiniteGroup g = build_dihedral(m);
    const InvolutionSet refl = reflections(g);
    Instance inst = instance_of(g, target);
    inst.parameters["m"] = m;
    const Sr2Report report = check_sr2(g, refl);
    inst.parameters["sr2"] = report.verdict;
    auto verdict_cx = [&](bool expected) {
      return ordered_json{{"identity", "sr2_verdict"}, {"expected", expected}, {"involutions", names_of(g, refl.members())}};
    };
    if (m % 2 == 1) {
      if (!report.verdict) {
        out.push_back(failed("dihedral_dichotomy", inst, verdict_cx(true), "SR2 fails for odd m"));
        continue;
      }
      CheckResult main = check_main_theorem(g, target, refl, cap);
      if (!main.passed()) {
        main.check_id = "dihedral_dichotomy";
        main.instance = inst;
        out.push_back(std::move(main));
        continue;
      }
      out.push_back(passed("dihedral_dichotomy", inst, "odd m: SR2 holds and S1 = Hom"));
      continue;
    }
    if (report.verdict) {
      out.push_back(failed("dihedral_dichotomy", inst, verdict_cx(false), "SR2 holds for even m"));
      continue;
    }
    const PairResult fail = report.failures().front();
    const ElementSet sq = squares(g);
    inst.parameters["failing_pair"] = {g.name(fail.a), g.name(fail.b)};
    inst.parameters["product"] = g.name(fail.product);
    const bool rotation = fail.product.index < m;
    if (!rotation || std::binary_search(sq.begin(), sq.end(), fail.product)) {
      out.push_back(failed("dihedral_dichotomy", inst, verdict_cx(false),
                           "failing product is not a non-square rotation"));
      continue;
    }
    try {
      const SolutionSpace s1 = solve(g, target, EquationKind::kJ1);
      const MapSet homs = hom_map_set(hom_space(g, target, cap));
      inst.parameters["s1"] = s1.cardinality().get_str();
      inst.parameters["hom"] = homs.cardinality.get_str();
      const std::vector<AbElement> torsion = target.two_torsion();
      if (torsion.size() == 1) {
        const SpaceComparison cmp = spaces_equal(as_map_set(s1), homs, cap);
        if (!cmp.equal) {
          out.push_back(failed("dihedral_dichotomy", inst, comparison_counterexample(cmp, "J1", "Hom"), cmp.detail));
        } else {
          out.push_back(passed("dihedral_dichotomy", inst, "even m: SR2 fails; H[2] = 0 so S1 = Hom"));
        }
        continue;
      }
      const GroupMap cx_map = construct_counterexample(g, target, torsion[1], target.zero());
      if (auto cx = violation_of(cx_map, "J1")) {
        out.push_back(failed("dihedral_dichotomy", inst, *cx, "counterexample map does not solve J1"));
        continue;
      }
      if (is_homomorphism(cx_map)) {
        out.push_back(failed("dihedral_dichotomy", inst,
                             ordered_json{{"identity", "non_homomorphism"}, {"map", map_json(cx_map)}},
                             "counterexample map is additive"));
        continue;
      }
      const SpaceComparison cmp = spaces_equal(as_map_set(s1), homs, cap);
      if (cmp.equal || s1.cardinality() <= homs.cardinality) {
        ordered_json cx{{"identity", "cardinality"},
                        {"left", "J1"},
                        {"right", "Hom"},
                        {"left_cardinality", s1.cardinality().get_str()},
                        {"right_cardinality", homs.cardinality.get_str()},
                        {"strict", true}};
        out.push_back(failed("dihedral_dichotomy", inst, cx, "S1 is not strictly larger than Hom"));
        continue;
      }
      inst.parameters["certificate"] = map_table_json(cx_map);
      out.push_back(passed("dihedral_dichotomy", inst,
                           "even m: SR2 fails at (" + g.name(fail.a) + ", " + g.name(fail.b) + "); |S1| = " +
                               s1.cardinality().get_str() + " > |Hom| = " + homs.cardinality.get_str()));
    } catch (const CapExceeded& e) {
      out.push_back(skipped("dihedral_dichotomy", inst, e.what()));
    }
  }
  return out;
}

SuiteConfig default_suite_config() {
  SuiteConfig config;
  const std::vector<std::string> targets = {"Z:2", "Z:4", "Z:2x2", "Z:3"};
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : targets) config.instances.push_back({"S:" + std::to_string(n), t});
  for (int m = 1; m <= 12; ++m)
    for (const auto& t : targets) config.instances.push_back({"D:" + std::to_string(m), t});
  config.instances.push_back({"prod(D:3,D:3)", "Z:2"});
  return config;
}

SuiteConfig parse_suite_config(const nlohmann::json& config) {
  SuiteConfig out;
  if (config.contains("max_enum")) out.cap = config.at("max_enum").get<std::uint64_t>();
  if (config.contains("instances")) {
    for (const auto& item : config.at("instances")) {
      out.instances.push_back({item.at("group").get<std::string>(), item.at("target").get<std::string>()});
    }
  }
  return out;
}

namespace {

void run_instance(const FiniteGroup& g, const AbelianTarget& h, std::uint64_t cap, std::vector<CheckResult>& out) {
  const Instance inst = instance_of(g, h);
  const InvolutionSet inv = default_involutions(g);

  // Oracle equivalence for each equation.
  {
    const BigInt space = brute_force_search_space(g, h);
    if (space > BigInt(static_cast<unsigned long>(cap))) {
      out.push_back(skipped("oracle_equivalence", inst, "brute-force space " + space.get_str() + " exceeds cap"));
    } else {
      std::optional<CheckResult> bad;
      for (EquationKind kind : {EquationKind::kJ1, EquationKind::kJ2, EquationKind::kJ12}) {
        const auto brute = brute_force_solutions(g, h, kind, cap);
        const auto solved = sorted_members(solve(g, h, kind), cap);
        if (brute == solved) continue;
        std::vector<GroupMap> diff;
        std::set_symmetric_difference(brute.begin(), brute.end(), solved.begin(), solved.end(),
                                      std::back_inserter(diff));
        ordered_json cx{{"identity", "system_consistency"}, {"kind", kind_condition(kind)}};
        if (!diff.empty()) cx["map"] = map_json(diff.front());
        bad = failed("oracle_equivalence", inst, cx, "solver and brute force disagree on " + kind_condition(kind));
        break;
      }
      out.push_back(bad ? *bad : passed("oracle_equivalence", inst, "SNF solver matches brute force on J1, J2, J12"));
    }
  }

  std::vector<GroupMap> s1_members;
  try {
    const SolutionSpace s1 = solve(g, h, EquationKind::kJ1);
    const SolutionSpace s2 = solve(g, h, EquationKind::kJ2);
    const SolutionSpace s12 = solve(g, h, EquationKind::kJ12);
    s1_members = sorted_members(s1, cap);
    const auto s2_members = sorted_members(s2, cap);
    const auto s12_members = sorted_members(s12, cap);
    std::vector<GroupMap> both;
    std::set_intersection(s1_members.begin(), s1_members.end(), s2_members.begin(), s2_members.end(),
                          std::back_inserter(both));
    if (both != s12_members) {
      std::vector<GroupMap> diff;
      std::set_symmetric_difference(both.begin(), both.end(), s12_members.begin(), s12_members.end(),
                                    std::back_inserter(diff));
      out.push_back(failed("intersection", inst,
                           ordered_json{{"identity", "intersection_membership"}, {"map", map_json(diff.front())}},
                           "S12 differs from S1 and S2 intersected"));
    } else {
      out.push_back(passed("intersection", inst, "S12 = S1 n S2 (" + std::to_string(both.size()) + " maps)"));
    }
  } catch (const CapExceeded& e) {
    out.push_back(skipped("intersection", inst, e.what()));
  }

  // Homomorphisms: two methods, formula count, membership in S1 and S2.
  try {
    const auto by_gens = hom_space_by_generators(g, h, cap);
    const auto by_ab = hom_space_by_abelianization(g, h, cap);
    const BigInt formula = hom_count_from_factors(abelianization(g).invariant_factors, h);
    if (by_gens != by_ab) {
      std::vector<GroupMap> diff;
      std::set_symmetric_difference(by_gens.begin(), by_gens.end(), by_ab.begin(), by_ab.end(),
                                    std::back_inserter(diff));
      out.push_back(failed("hom_methods_agree", inst,
                           ordered_json{{"identity", "hom_method_membership"}, {"map", map_json(diff.front())}},
                           "generator propagation and abelianization pull-back disagree"));
    } else if (BigInt(static_cast<unsigned long>(by_gens.size())) != formula) {
      out.push_back(failed("hom_methods_agree", inst,
                           ordered_json{{"identity", "cardinality"},
                                        {"left", "Hom"},
                                        {"right", formula.get_str()},
                                        {"left_cardinality", std::to_string(by_gens.size())},
                                        {"right_cardinality", formula.get_str()}},
                           "Hom count differs from the gcd formula"));
    } else {
      out.push_back(passed("hom_methods_agree", inst, std::to_string(by_gens.size()) + " homomorphisms"));
    }
    std::optional<ordered_json> cx;
    for (const GroupMap& f : by_gens) {
      if ((cx = violation_of(f, "J12"))) break;
    }
    out.push_back(cx ? failed("hom_subset", inst, *cx, "a homomorphism violates J1 or J2")
                     : passed("hom_subset", inst, "Hom is contained in S1 and S2"));
  } catch (const CapExceeded& e) {
    out.push_back(skipped("hom_methods_agree", inst, e.what()));
  }

  // Un-normalised shifts f + c stay in S1.
  {
    std::optional<ordered_json> cx;
    const auto consts = h.enumerate(cap);
    for (const GroupMap& f : s1_members) {
      for (const AbElement& c : consts) {
        GroupMap shifted = f;
        for (AbElement& v : shifted.values) v = h.add(v, c);
        if ((cx = violation_of(shifted, "J1"))) break;
      }
      if (cx) break;
    }
    out.push_back(cx ? failed("shift_closure", inst, *cx, "a shifted solution violates J1")
                     : passed("shift_closure", inst, "f + c solves J1 for every solution f and constant c"));
  }

  // Identity suite on every J1 solution.
  auto over_solutions = [&](const std::string& id, auto&& check) {
    if (s1_members.empty()) {
      out.push_back(skipped(id, inst, "S1 not enumerable"));
      return;
    }
    for (const GroupMap& f : s1_members) {
      CheckResult r = check(f);
      if (!r.passed()) {
        out.push_back(std::move(r));
        return;
      }
    }
    out.push_back(passed(id, inst, "holds for all " + std::to_string(s1_members.size()) + " solutions"));
  };
  over_solutions("basic_identities", [](const GroupMap& f) { return check_basic_identities(f); });
  over_solutions("switching", [](const GroupMap& f) { return check_switching(f); });
  if (!inv.empty()) {
    over_solutions("two_involution_torsion", [&](const GroupMap& f) { return check_two_involution_torsion(f, inv); });
    over_solutions("word_torsion", [&](const GroupMap& f) { return check_word_torsion(f, inv); });
  }
  over_solutions("reordering", [](const GroupMap& f) { return check_reordering(f); });

  if (!inv.empty()) {
    out.push_back(check_main_theorem(g, h, inv, cap));
    out.push_back(check_parity_form(g, h, inv, cap));
  } else {
    out.push_back(skipped("main_theorem", inst, "G has no involutions"));
    out.push_back(skipped("parity_form", inst, "G has no involutions"));
  }
  if (g.family() == GroupFamily::kDihedral) {
    for (CheckResult& r : check_dihedral_dichotomy({g.family_parameter()}, h, cap)) out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<CheckResult> run_suite(const SuiteConfig& config) {
  std::vector<CheckResult> out;
  for (const SuiteInstance& item : config.instances) {
    const FiniteGroup g = parse_group_spec(item.group_spec);
    const AbelianTarget h = parse_target_spec(item.target_spec);
    run_instance(g, h, config.cap, out);
  }
  return out;
}

bool recheck_counterexample(const ordered_json& cx, const FiniteGroup& group, const AbelianTarget& target) {
  const std::string id = cx.at("identity").get<std::string>();
  if (id == "cardinality") {
    const BigInt left = side_cardinality(cx.at("left").get<std::string>(), group, target);
    const BigInt right = side_cardinality(cx.at("right").get<std::string>(), group, target);
    if (cx.value("strict", false)) return left <= right;
    return left != right;
  }
  if (id == "sr2_verdict") {
    ElementSet members;
    for (const auto& name : cx.at("involutions")) {
      const auto e = group.find(name.get<std::string>());
      if (!e) return false;
      members.push_back(*e);
    }
    return check_sr2(group, InvolutionSet(group, members)).verdict != cx.at("expected").get<bool>();
  }
  if (id == "non_homomorphism") return is_homomorphism(map_from_json(cx.at("map"), group, target));
  if (id == "system_consistency") {
    const EquationKind kind = *parse_equation_kind(cx.at("kind").get<std::string>());
    if (!cx.contains("map")) {
      return brute_force_solutions(group, target, kind) != sorted_members(solve(group, target, kind));
    }
    const GroupMap f = map_from_json(cx.at("map"), group, target);
    const auto solved = sorted_members(solve(group, target, kind));
    const bool in_solver = std::binary_search(solved.begin(), solved.end(), f);
    return in_solver != is_solution(f, kind);
  }
  if (id == "intersection_membership") {
    const GroupMap f = map_from_json(cx.at("map"), group, target);
    auto in = [&](EquationKind k) {
      const auto s = sorted_members(solve(group, target, k));
      return std::binary_search(s.begin(), s.end(), f);
    };
    return in(EquationKind::kJ12) != (in(EquationKind::kJ1) && in(EquationKind::kJ2));
  }
  if (id == "hom_method_membership") {
    const GroupMap f = map_from_json(cx.at("map"), group, target);
    const auto a = hom_space_by_generators(group, target);
    const auto b = hom_space_by_abelianization(group, target);
    return std::binary_search(a.begin(), a.end(), f) != std::binary_search(b.begin(), b.end(), f);
  }
  // Linear relations on an explicit map.
  const RelationSpec& spec = relation(id);
  const auto indices = cx.at("indices").get<std::vector<std::uint32_t>>();
  if (indices.size() != spec.vars.size()) return false;
  std::vector<Element> elems;
  for (std::uint32_t i : indices) {
    if (i >= group.size()) return false;
    elems.push_back(Element{i});
  }
  const GroupMap f = map_from_json(cx.at("map"), group, target);
  const std::int64_t param = cx.value("param", std::int64_t{0});
  return !FlatMap::of(f).vanishes(spec.build(group, elems, param));
}

ordered_json to_json(const CheckResult& r) {
  ordered_json j;
  j["check_id"] = r.check_id;
  j["instance"] = {{"group", r.instance.group_spec}, {"target", r.instance.target_spec},
                   {"parameters", r.instance.parameters}};
  j["status"] = std::string(to_string(r.status));
  j["detail"] = r.detail;
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

ordered_json to_json(const std::vector<CheckResult>& results) {
  ordered_json out = ordered_json::array();
  for (const CheckResult& r : results) out.push_back(to_json(r));
  return out;
}

}  // namespace jensen
