// Acceptance suite: one line per criterion, exact comparisons only.
// Exit status is nonzero iff any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jensen/solver.hpp"
#include "jensen/spec_parser.hpp"
#include "jensen/sr2.hpp"
#include "jensen/verify.hpp"
#include "oracle.hpp"

using namespace jensen;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

class Criterion {
 public:
  bool require(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      first_failure_ = what;
    }
    return cond;
  }
  Verdict done(const std::string& summary) const { return {ok_, ok_ ? summary : first_failure_}; }

 private:
  bool ok_ = true;
  std::string first_failure_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Element named(const FiniteGroup& g, std::string_view name) {
  const auto e = g.find(name);
  if (!e) throw std::runtime_error("no element " + std::string(name) + " in " + g.spec());
  return *e;
}

std::vector<GroupMap> sorted(std::vector<GroupMap> v) {
  std::sort(v.begin(), v.end());
  return v;
}

oracle::Concrete oracle_of(const FiniteGroup& g) {
  const int p = static_cast<int>(g.family_parameter());
  if (g.family() == GroupFamily::kSymmetric) return oracle::symmetric(p);
  if (g.family() == GroupFamily::kDihedral) return oracle::dihedral(p);
  return oracle::cyclic(p);
}

const std::vector<std::string> kTargets = {"Z:2", "Z:4", "Z:2x2", "Z:3"};

// Instances of the main-theorem grid.
std::vector<std::string> main_groups() { return {"S:2", "S:3", "S:4", "D:1", "D:3", "D:5", "D:7"}; }

Verdict sr2_symmetric() {
  Criterion c;
  double t6 = 0;
  std::size_t pairs = 0;
  for (unsigned n = 2; n <= 6; ++n) {
    const FiniteGroup g = build_symmetric(n);
    const auto t0 = std::chrono::steady_clock::now();
    const Sr2Report r = check_sr2(g, transpositions(g));
    if (n == 6) t6 = seconds_since(t0);
    c.require(r.verdict, "S_" + std::to_string(n) + " verdict false");
    for (const PairResult& p : r.pairs) {
      c.require(p.witness.has_value() && g.multiply(*p.witness, *p.witness) == g.multiply(p.a, p.b),
                "bad witness in S_" + std::to_string(n));
    }
    if (n == 6) pairs = r.pairs.size();
  }
  c.require(t6 < 10.0, "S_6 took " + std::to_string(t6) + " s");
  std::ostringstream s;
  s << "S_2..S_6 hold, witnesses re-verified; S_6: " << pairs << " unordered pairs in " << t6 << " s";
  return c.done(s.str());
}

Verdict sn_witnesses() {
  Criterion c;
  const FiniteGroup s4 = build_symmetric(4);
  const Element a = named(s4, "(1 2)"), b = named(s4, "(2 3)"), d = named(s4, "(3 4)");
  c.require(s4.name(s4.multiply(a, b)) == "(1 2 3)", "(1 2)(2 3) != (1 2 3)");
  c.require(s4.name(sn_witness(s4, a, b)) == "(1 3 2)", "witness of (1 2),(2 3) is not (1 3 2)");
  c.require(s4.name(sn_witness(s4, a, d)) == "(1 3 2 4)", "witness of (1 2),(3 4) is not (1 3 2 4)");
  c.require(sn_witness(s4, a, a) == kIdentity, "witness of equal transpositions is not e");
  std::size_t checked = 0;
  for (unsigned n = 2; n <= 6; ++n) {
    const FiniteGroup g = build_symmetric(n);
    const InvolutionSet t = transpositions(g);
    for (Element x : t.members())
      for (Element y : t.members()) {
        const Element w = sn_witness(g, x, y);
        c.require(g.multiply(w, w) == g.multiply(x, y), "witness square mismatch in S_" + std::to_string(n));
        // Case shape: e for equal, a 3-cycle for overlapping, a 4-cycle for disjoint.
        const auto px = g.permutation(x), py = g.permutation(y);
        int shared = 0;
        for (std::size_t i = 0; i < px.size(); ++i) shared += (px[i] != i && py[i] != i);
        const std::uint32_t expected_order = x == y ? 1 : (shared == 1 ? 3 : 4);
        c.require(g.element_order(w) == expected_order, "witness of wrong cycle type in S_" + std::to_string(n));
        ++checked;
      }
  }
  return c.done("three closed-form cases reproduced; " + std::to_string(checked) + " ordered pairs checked, n <= 6");
}

Verdict dihedral_dichotomy() {
  Criterion c;
  for (unsigned m = 1; m <= 21; m += 2) {
    const FiniteGroup g = build_dihedral(m);
    c.require(check_sr2(g, reflections(g)).verdict, "D_" + std::to_string(m) + " verdict false");
  }
  for (unsigned m = 2; m <= 20; m += 2) {
    const FiniteGroup g = build_dihedral(m);
    c.require(!check_sr2(g, reflections(g)).verdict, "D_" + std::to_string(m) + " verdict true");
  }
  const FiniteGroup d4 = build_dihedral(4);
  const Sr2Report r = check_sr2(d4, reflections(d4));
  const auto failures = r.failures();
  c.require(!failures.empty(), "D_4 has no failing pair");
  if (!failures.empty()) {
    const PairResult& p = failures.front();
    c.require(d4.name(p.a) == "s" && d4.name(p.b) == "s·r", "D_4 failing pair is not (s, s·r)");
    c.require(d4.name(p.product) == "r", "D_4 failing product is not r");
    const ElementSet sq = squares(d4);
    c.require(sq == ElementSet{named(d4, "e"), named(d4, "r^2")}, "squares of D_4 are not {e, r^2}");
    c.require(!std::binary_search(sq.begin(), sq.end(), p.product), "r is a square");
  }
  return c.done("odd m in [1,21] hold, even m in [2,20] fail; D_4 fails at (s, s·r) with product r, squares {e, r^2}");
}

Verdict main_theorem() {
  Criterion c;
  std::size_t instances = 0;
  for (const std::string& spec : main_groups()) {
    const FiniteGroup g = parse_group_spec(spec);
    const InvolutionSet inv = default_involutions(g);
    for (const std::string& t : kTargets) {
      const AbelianTarget h = parse_target_spec(t);
      const std::string tag = spec + " " + t;
      const CheckResult r = check_main_theorem(g, h, inv);
      c.require(r.passed(), tag + ": " + r.detail);
      const auto s1 = sorted(solve(g, h, EquationKind::kJ1).enumerate());
      const auto s12 = sorted(solve(g, h, EquationKind::kJ12).enumerate());
      const auto homs = hom_space(g, h);
      c.require(s1 == s12, tag + ": S1 != S12");
      c.require(s1 == homs, tag + ": S1 != Hom");
      const auto oracle_homs = oracle::backtrack_solutions(oracle_of(g), h.factors(), oracle::Eq::Hom);
      c.require(homs.size() == oracle_homs.size(), tag + ": |Hom| differs from oracle");
      for (const GroupMap& f : s1) c.require(is_homomorphism(f), tag + ": non-additive member of S1");
      ++instances;
    }
  }
  return c.done("|S1| = |S12| = |Hom| with set equality on " + std::to_string(instances) + " instances");
}

Verdict exact_cardinalities() {
  Criterion c;
  struct Expect {
    const char* group;
    const char* target;
    oracle::Eq eq;
    unsigned long value;
  };
  const std::vector<Expect> cases = {{"S:3", "Z:2", oracle::Eq::J1, 2},
                                     {"S:4", "Z:4", oracle::Eq::J1, 2},
                                     {"D:4", "Z:2", oracle::Eq::J1, 8},
                                     {"D:4", "Z:2", oracle::Eq::Hom, 4}};
  std::ostringstream s;
  for (const Expect& e : cases) {
    const FiniteGroup g = parse_group_spec(e.group);
    const AbelianTarget h = parse_target_spec(e.target);
    const std::string tag = std::string(e.group) + " " + e.target;
    const std::size_t oracle_count = oracle::backtrack_solutions(oracle_of(g), h.factors(), e.eq).size();
    BigInt library;
    if (e.eq == oracle::Eq::Hom) {
      library = static_cast<unsigned long>(hom_space(g, h).size());
    } else {
      const SolutionSpace space = solve(g, h, EquationKind::kJ1);
      library = space.cardinality();
      if (brute_force_search_space(g, h) <= kDefaultEnumerationCap) {
        c.require(brute_force_solutions(g, h, EquationKind::kJ1) == sorted(space.enumerate()),
                  tag + ": brute force disagrees with solver");
        c.require(oracle::count(oracle_of(g), h.factors(), e.eq) == oracle_count, tag + ": oracles disagree");
      }
    }
    c.require(oracle_count == e.value, tag + ": oracle gives " + std::to_string(oracle_count));
    c.require(library == e.value, tag + ": library gives " + library.get_str());
    s << (e.eq == oracle::Eq::Hom ? "|Hom(" : "|S1(") << e.group << "," << e.target << ")|=" << e.value << " ";
  }
  std::string out = s.str();
  out.pop_back();
  return c.done(out);
}

Verdict counterexample() {
  Criterion c;
  std::size_t maps = 0;
  for (long k : {2L, 3L}) {
    const FiniteGroup g = build_dihedral(static_cast<unsigned>(2 * k));
    const oracle::Concrete o = oracle::dihedral(static_cast<int>(2 * k));
    const auto relabel = oracle::relabel(g);
    for (const char* t : {"Z:2", "Z:2x2"}) {
      const AbelianTarget h = parse_target_spec(t);
      for (const AbElement& u : h.two_torsion())
        for (const AbElement& cc : h.two_torsion()) {
          const GroupMap f = construct_counterexample(g, h, u, cc);
          const std::string tag = "k=" + std::to_string(k) + " " + t + " u=" + h.format(u) + " c=" + h.format(cc);
          c.require(is_solution(f, EquationKind::kJ1), tag + ": not a J1 solution");
          c.require(is_homomorphism(f) == h.is_zero(u), tag + ": additivity does not match u = 0");
          oracle::Map flat(static_cast<std::size_t>(o.n) * h.rank());
          for (Element e : g.elements())
            for (std::size_t i = 0; i < h.rank(); ++i)
              flat[static_cast<std::size_t>(relabel[e.index]) * h.rank() + i] = f(e).residues[i];
          c.require(oracle::satisfies(o, h.factors(), flat, oracle::Eq::J1), tag + ": oracle rejects J1");
          c.require(oracle::satisfies(o, h.factors(), flat, oracle::Eq::Hom) == h.is_zero(u),
                    tag + ": oracle additivity mismatch");
          ++maps;
        }
    }
  }
  return c.done(std::to_string(maps) + " maps on D_4, D_6 solve J1; additive exactly when u = 0");
}

Verdict identity_suite() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::string>> instances;
  for (const std::string& g : main_groups())
    for (const std::string& t : kTargets) instances.emplace_back(g, t);
  for (auto extra : {std::pair<std::string, std::string>{"D:4", "Z:2"}, {"D:4", "Z:3"}, {"S:4", "Z:4"}})
    instances.push_back(extra);
  std::size_t maps = 0;
  for (const auto& [spec, t] : instances) {
    const FiniteGroup g = parse_group_spec(spec);
    const AbelianTarget h = parse_target_spec(t);
    const InvolutionSet inv = default_involutions(g);
    for (const GroupMap& f : solve(g, h, EquationKind::kJ1).enumerate()) {
      const std::string tag = spec + " " + t;
      for (const CheckResult& r : {check_basic_identities(f), check_switching(f), check_two_involution_torsion(f, inv),
                                   check_word_torsion(f, inv), check_reordering(f)}) {
        c.require(r.passed(), tag + " " + r.check_id + ": " + r.detail);
      }
      ++maps;
    }
  }
  const double secs = seconds_since(t0);
  c.require(secs < 30.0, "identity suite took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << "all five identity checks pass on " << maps << " solutions over " << instances.size() << " instances in "
    << secs << " s";
  return c.done(s.str());
}

Verdict parity_form() {
  Criterion c;
  std::size_t instances = 0;
  for (const std::string& spec : main_groups()) {
    const FiniteGroup g = parse_group_spec(spec);
    const InvolutionSet inv = default_involutions(g);
    c.require(involution_word_parity(g, inv).has_value(), spec + ": word parity inconsistent");
    for (const std::string& t : kTargets) {
      const AbelianTarget h = parse_target_spec(t);
      const CheckResult r = check_parity_form(g, h, inv);
      c.require(r.passed(), spec + " " + t + ": " + r.detail);
      const BigInt card = solve(g, h, EquationKind::kJ1).cardinality();
      c.require(card == static_cast<unsigned long>(h.two_torsion().size()), spec + " " + t + ": |S1| != |H[2]|");
      ++instances;
    }
  }
  return c.done("S1 = {parity * u : u in H[2]} on " + std::to_string(instances) + " instances; BFS parities consistent");
}

Verdict oracle_equivalence() {
  Criterion c;
  std::size_t compared = 0, beyond = 0;
  for (const SuiteInstance& inst : default_suite_config().instances) {
    const FiniteGroup g = parse_group_spec(inst.group_spec);
    const AbelianTarget h = parse_target_spec(inst.target_spec);
    if (brute_force_search_space(g, h) > BigInt(1UL << 20)) {
      ++beyond;
      continue;
    }
    for (EquationKind kind : {EquationKind::kJ1, EquationKind::kJ2, EquationKind::kJ12}) {
      c.require(brute_force_solutions(g, h, kind) == sorted(solve(g, h, kind).enumerate()),
                inst.group_spec + " " + inst.target_spec + " " + std::string(to_string(kind)) + ": sets differ");
    }
    ++compared;
  }
  c.require(compared > 0, "no instance within the search-space bound");
  return c.done("solver = brute force for J1, J2, J12 on " + std::to_string(compared) + " grid instances (" +
                std::to_string(beyond) + " beyond 2^20 not enumerated)");
}

Verdict linear_algebra() {
  Criterion c;
  std::mt19937 rng(0xacce97);
  std::uniform_int_distribution<long> entry(-4, 4);
  auto small = [](const IntMatrix& m) {
    std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t col = 0; col < m.cols(); ++col) out[r][col] = m.at(r, col).get_si();
    return out;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t col = 0; col < cols; ++col) a.at(r, col) = entry(rng);
    const SnfDecomposition snf = smith_normal_form(a);
    const std::string tag = "matrix " + std::to_string(trial);
    c.require(snf.U * a * snf.V == snf.S, tag + ": U A V != S");
    c.require(snf.S.is_diagonal(), tag + ": S not diagonal");
    const std::int64_t du = oracle::det(small(snf.U)), dv = oracle::det(small(snf.V));
    c.require((du == 1 || du == -1) && (dv == 1 || dv == -1), tag + ": transform not unimodular");
    const auto diag = snf.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      c.require(diag[i] > 0, tag + ": non-positive invariant factor");
      if (i) c.require(diag[i] % diag[i - 1] == 0, tag + ": divisibility chain broken");
    }
  }
  int kernels = 0;
  for (std::int64_t d = 1; d <= 6; ++d) {
    for (std::size_t cols = 1; cols <= 4; ++cols) {
      for (int trial = 0; trial < 10; ++trial) {
        const std::size_t rows = 1 + rng() % 4;
        IntMatrix a(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t col = 0; col < cols; ++col) a.at(r, col) = entry(rng);
        const ModKernel k = kernel_mod(a, d);
        auto got = k.members();
        std::sort(got.begin(), got.end());
        const auto expected = oracle::kernel(small(a), cols, d);
        c.require(got == expected && k.cardinality == static_cast<unsigned long>(expected.size()),
                  "kernel mismatch d=" + std::to_string(d) + " cols=" + std::to_string(cols));
        ++kernels;
      }
    }
  }
  return c.done("200 random SNFs satisfy U A V = S, unimodularity, divisibility; " + std::to_string(kernels) +
                " kernels mod d <= 6 match exhaustive enumeration");
}

Verdict null_mechanism() {
  Criterion c;
  const FiniteGroup d4 = build_dihedral(4);
  const AbelianTarget z3({3});
  const SolutionSpace s1 = solve(d4, z3, EquationKind::kJ1);
  const auto members = s1.enumerate();
  const GroupMap zero = zero_map(d4, z3);
  c.require(s1.cardinality() == 1, "|S1(D_4, Z/3)| = " + s1.cardinality().get_str());
  c.require(members.size() == 1 && members.front() == zero, "S1 is not {0}");
  const auto homs = hom_space(d4, z3);
  c.require(homs.size() == 1 && homs.front() == zero, "Hom is not {0}");
  const auto o = oracle::backtrack_solutions(oracle::dihedral(4), {3}, oracle::Eq::J1);
  c.require(o.size() == 1, "oracle finds " + std::to_string(o.size()) + " solutions");
  c.require(oracle::count(oracle::dihedral(4), {3}, oracle::Eq::J1) == 1, "exhaustive oracle disagrees");
  return c.done("S1(D_4, Z/3) = Hom(D_4, Z/3) = {0}");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"sr2-symmetric", sr2_symmetric},
      {"sn-witnesses", sn_witnesses},
      {"dihedral-dichotomy", dihedral_dichotomy},
      {"main-theorem", main_theorem},
      {"exact-cardinalities", exact_cardinalities},
      {"counterexample", counterexample},
      {"identity-suite", identity_suite},
      {"parity-normal-form", parity_form},
      {"oracle-equivalence", oracle_equivalence},
      {"linear-algebra", linear_algebra},
      {"null-mechanism", null_mechanism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.ok ? 0 : 1;
    std::printf("%s %2zu %-20s %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
