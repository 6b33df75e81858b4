#include "jensen/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

namespace jensen {

namespace {

constexpr std::size_t kExhaustiveAssociativityLimit = 64;

std::string normalize_name(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char ch = name[i];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '*' || ch == '.') continue;
    // U+00B7 MIDDLE DOT
    if (static_cast<unsigned char>(ch) == 0xC2 && i + 1 < name.size() &&
        static_cast<unsigned char>(name[i + 1]) == 0xB7) {
      ++i;
      continue;
    }
    out.push_back(ch);
  }
  return out;
}

std::string cycle_name(std::span<const std::uint8_t> perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == start) {
      seen[start] = true;
      continue;
    }
    out += '(';
    std::size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = true;
      if (!first) out += ' ';
      out += std::to_string(cur + 1);
      first = false;
      cur = perm[cur];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Lexicographic rank of a permutation of 0..n-1.
std::uint32_t permutation_rank(std::span<const std::uint8_t> perm,
                               std::span<const std::uint32_t> factorials) {
  const std::size_t n = perm.size();
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += perm[j] < perm[i] ? 1U : 0U;
    rank += smaller * factorials[n - 1 - i];
  }
  return rank;
}

ElementSet greedy_generators(const FiniteGroup& g) {
  ElementSet gens;
  std::vector<bool> covered(g.size(), false);
  covered[0] = true;
  for (std::uint32_t i = 1; i < g.size(); ++i) {
    if (covered[i]) continue;
    gens.push_back(Element{i});
    for (Element e : subgroup_closure(g, gens)) covered[e.index] = true;
  }
  return gens;
}

using Table = std::vector<std::vector<std::uint32_t>>;

struct Decomposition {
  std::vector<std::int64_t> factors;
  std::vector<std::vector<std::int64_t>> projection;
  std::vector<std::uint32_t> generators;
};

Decomposition decompose(const Table& add) {
  const std::size_t n = add.size();
  Decomposition out;
  if (n == 1) {
    out.projection.assign(1, {});
    return out;
  }
  std::vector<std::uint32_t> neg(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (add[a][b] == 0) {
        neg[a] = b;
        break;
      }
    }
  }
  auto multiple = [&](std::uint32_t a, std::int64_t k) {
    std::uint32_t acc = 0;
    for (std::int64_t i = 0; i < k; ++i) acc = add[acc][a];
    return acc;
  };
  auto order_of = [&](std::uint32_t a) {
    std::int64_t k = 1;
    for (std::uint32_t acc = a; acc != 0; acc = add[acc][a]) ++k;
    return k;
  };

  std::uint32_t x = 0;
  std::int64_t m = 1;
  for (std::uint32_t a = 1; a < n; ++a) {
    const std::int64_t k = order_of(a);
    if (k > m) {
      m = k;
      x = a;
    }
  }

  std::vector<std::int64_t> log_x(n, -1);
  {
    std::uint32_t acc = 0;
    for (std::int64_t k = 0; k < m; ++k) {
      log_x[acc] = k;
      acc = add[acc][x];
    }
  }

  // Cosets of <x>.
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t g = 0; g < n; ++g) {
    if (label[g] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(g);
    std::uint32_t acc = g;
    for (std::int64_t k = 0; k < m; ++k) {
      label[acc] = id;
      acc = add[acc][x];
    }
  }
  Table quotient(reps.size(), std::vector<std::uint32_t>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) quotient[i][j] = label[add[reps[i]][reps[j]]];
  }
  const Decomposition sub = decompose(quotient);

  // Lift each quotient generator to an element of the same order.
  std::vector<std::uint32_t> lifts;
  for (std::size_t j = 0; j < sub.factors.size(); ++j) {
    const std::int64_t f = sub.factors[j];
    const std::uint32_t lifted = reps[sub.generators[j]];
    const std::int64_t a = log_x[multiple(lifted, f)];
    if (a < 0 || a % f != 0) throw std::logic_error("abelian decomposition: lift outside <x>");
    lifts.push_back(add[lifted][neg[multiple(x, a / f)]]);
  }

  out.factors = sub.factors;
  out.factors.push_back(m);
  out.generators = lifts;
  out.generators.push_back(x);
  out.projection.resize(n);
  for (std::uint32_t g = 0; g < n; ++g) {
    std::vector<std::int64_t> coords = sub.projection[label[g]];
    std::uint32_t w = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) w = add[w][multiple(lifts[j], coords[j])];
    const std::int64_t k = log_x[add[g][neg[w]]];
    if (k < 0) throw std::logic_error("abelian decomposition: residual outside <x>");
    coords.push_back(k);
    out.projection[g] = std::move(coords);
  }
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::make(std::size_t order, std::vector<std::uint16_t> table,
                              std::vector<std::string> names, GroupFamily family,
                              unsigned parameter, std::string spec) {
  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(table);
  g.names_ = std::move(names);
  g.family_ = family;
  g.family_parameter_ = parameter;
  g.spec_ = std::move(spec);
  g.validate();
  g.derive_tables();
  return g;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<std::uint32_t>>& table,
                                    std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw GroupError("Cayley table must be non-empty");
  if (n > kMaxGenericOrder) {
    throw GroupError("Cayley table of order " + std::to_string(n) + " exceeds cap " +
                     std::to_string(kMaxGenericOrder));
  }
  std::vector<std::uint16_t> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw GroupError("Cayley table must be square");
    for (std::uint32_t v : row) {
      if (v >= n) throw GroupError("Cayley table entry " + std::to_string(v) + " out of range");
      flat.push_back(static_cast<std::uint16_t>(v));
    }
  }
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  }
  if (names.size() != n) throw GroupError("name list length does not match table order");
  FiniteGroup g = make(n, std::move(flat), std::move(names), GroupFamily::kGeneric, 0,
                       "table:" + std::to_string(n));
  g.generators_ = greedy_generators(g);
  return g;
}

void FiniteGroup::validate() const {
  const std::size_t n = order_;
  if (table_.size() != n * n || names_.size() != n) throw GroupError("inconsistent table dimensions");
  auto at = [&](std::size_t i, std::size_t j) { return static_cast<std::size_t>(table_[i * n + j]); };

  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t round = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++round;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t v = at(i, j);
      if (v >= n || stamp[v] == round) {
        throw GroupError("row " + std::to_string(i) + " is not a permutation");
      }
      stamp[v] = round;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    ++round;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = at(i, j);
      if (stamp[v] == round) throw GroupError("column " + std::to_string(j) + " is not a permutation");
      stamp[v] = round;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (at(0, i) != i || at(i, 0) != i) throw GroupError("index 0 is not the identity");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    while (at(i, j) != 0) ++j;  // unique by the Latin property
    if (at(j, i) != 0) {
      throw GroupError("element " + std::to_string(i) + " has no two-sided inverse");
    }
  }
  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (at(at(a, b), c) != at(a, at(b, c))) {
      throw GroupError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                       "," + std::to_string(c) + ")");
    }
  };
  if (n <= kExhaustiveAssociativityLimit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed5eedULL + n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < 10 * n; ++t) check(pick(rng), pick(rng), pick(rng));
  }
}

void FiniteGroup::derive_tables() {
  inverse_.resize(order_);
  element_order_.resize(order_);
  for (std::uint32_t i = 0; i < order_; ++i) {
    const Element a{i};
    for (std::uint32_t j = 0; j < order_; ++j) {
      if (multiply(a, Element{j}) == kIdentity) {
        inverse_[i] = Element{j};
        break;
      }
    }
    std::uint32_t k = 1;
    for (Element p = a; p != kIdentity; p = multiply(p, a)) ++k;
    element_order_[i] = k;
  }
}

std::optional<Element> FiniteGroup::find(std::string_view name) const {
  for (std::uint32_t i = 0; i < order_; ++i) {
    if (names_[i] == name) return Element{i};
  }
  const std::string wanted = normalize_name(name);
  for (std::uint32_t i = 0; i < order_; ++i) {
    if (normalize_name(names_[i]) == wanted) return Element{i};
  }
  return std::nullopt;
}

ElementSet FiniteGroup::elements() const {
  ElementSet out(order_);
  for (std::uint32_t i = 0; i < order_; ++i) out[i] = Element{i};
  return out;
}

std::span<const std::uint8_t> FiniteGroup::permutation(Element a) const {
  if (family_ != GroupFamily::kSymmetric) return {};
  const std::size_t degree = family_parameter_;
  return std::span<const std::uint8_t>(permutations_).subspan(a.index * degree, degree);
}

bool FiniteGroup::is_abelian() const {
  for (std::uint32_t i = 0; i < order_; ++i) {
    for (std::uint32_t j = i + 1; j < order_; ++j) {
      if (multiply(Element{i}, Element{j}) != multiply(Element{j}, Element{i})) return false;
    }
  }
  return true;
}

FiniteGroup build_symmetric(unsigned n) {
  if (n < 1 || n > 7) {
    throw GroupError("S_n requires 1 <= n <= 7 (Cayley-table cap), got " + std::to_string(n));
  }
  std::vector<std::uint32_t> factorials(n + 1, 1);
  for (unsigned i = 1; i <= n; ++i) factorials[i] = factorials[i - 1] * i;
  const std::size_t order = factorials[n];

  std::vector<std::uint8_t> perms;
  perms.reserve(order * n);
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do {
    perms.insert(perms.end(), p.begin(), p.end());
  } while (std::next_permutation(p.begin(), p.end()));

  auto perm_at = [&](std::size_t i) { return std::span<const std::uint8_t>(perms).subspan(i * n, n); };
  std::vector<std::uint16_t> table(order * order);
  std::vector<std::uint8_t> composed(n);
  for (std::size_t a = 0; a < order; ++a) {
    const auto pa = perm_at(a);
    for (std::size_t b = 0; b < order; ++b) {
      const auto pb = perm_at(b);
      // right to left: apply b first, then a
      for (unsigned i = 0; i < n; ++i) composed[i] = pa[pb[i]];
      table[a * order + b] = static_cast<std::uint16_t>(permutation_rank(composed, factorials));
    }
  }
  std::vector<std::string> names;
  names.reserve(order);
  for (std::size_t i = 0; i < order; ++i) names.push_back(cycle_name(perm_at(i)));

  FiniteGroup g = FiniteGroup::make(order, std::move(table), std::move(names),
                                    GroupFamily::kSymmetric, n, "S:" + std::to_string(n));
  g.permutations_ = std::move(perms);
  for (unsigned i = 0; i + 1 < n; ++i) {
    std::vector<std::uint8_t> t(n);
    std::iota(t.begin(), t.end(), std::uint8_t{0});
    std::swap(t[i], t[i + 1]);
    g.generators_.push_back(Element{permutation_rank(t, factorials)});
  }
  std::sort(g.generators_.begin(), g.generators_.end());
  return g;
}

FiniteGroup build_dihedral(unsigned m) {
  if (m < 1 || m > 64) throw GroupError("D_m requires 1 <= m <= 64, got " + std::to_string(m));
  const std::size_t order = 2 * static_cast<std::size_t>(m);
  // index k <-> r^k, index m + k <-> s·r^k
  std::vector<std::uint16_t> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t fa = a / m, ka = a % m;
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t fb = b / m, kb = b % m;
      std::size_t flip, k;
      if (fb == 0) {
        flip = fa;
        k = (ka + kb) % m;
      } else {
        // r^ka s = s r^(-ka)
        flip = fa ^ 1U;
        k = (kb + m - ka) % m;
      }
      table[a * order + b] = static_cast<std::uint16_t>(flip * m + k);
    }
  }
  std::vector<std::string> names;
  for (unsigned k = 0; k < m; ++k) names.push_back(k == 0 ? "e" : k == 1 ? "r" : "r^" + std::to_string(k));
  for (unsigned k = 0; k < m; ++k) {
    names.push_back(k == 0 ? "s" : k == 1 ? "s·r" : "s·r^" + std::to_string(k));
  }
  FiniteGroup g = FiniteGroup::make(order, std::move(table), std::move(names),
                                    GroupFamily::kDihedral, m, "D:" + std::to_string(m));
  if (m > 1) g.generators_.push_back(Element{1});
  g.generators_.push_back(Element{m});
  return g;
}

FiniteGroup build_cyclic(unsigned n) {
  if (n < 1 || n > 128) throw GroupError("C_n requires 1 <= n <= 128, got " + std::to_string(n));
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) table[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
  std::vector<std::string> names;
  for (unsigned k = 0; k < n; ++k) names.push_back(std::to_string(k));
  FiniteGroup g = FiniteGroup::make(n, std::move(table), std::move(names), GroupFamily::kCyclic, n,
                                    "C:" + std::to_string(n));
  if (n > 1) g.generators_.push_back(Element{1});
  return g;
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  const std::size_t n1 = g1.size(), n2 = g2.size();
  if (n1 * n2 > kMaxGenericOrder) {
    throw GroupError("direct product of order " + std::to_string(n1 * n2) + " exceeds cap " +
                     std::to_string(kMaxGenericOrder));
  }
  const std::size_t order = n1 * n2;
  std::vector<std::uint16_t> table(order * order);
  for (std::uint32_t a = 0; a < order; ++a) {
    for (std::uint32_t b = 0; b < order; ++b) {
      const Element x = g1.multiply(Element{static_cast<std::uint32_t>(a / n2)},
                                    Element{static_cast<std::uint32_t>(b / n2)});
      const Element y = g2.multiply(Element{static_cast<std::uint32_t>(a % n2)},
                                    Element{static_cast<std::uint32_t>(b % n2)});
      table[a * order + b] = static_cast<std::uint16_t>(x.index * n2 + y.index);
    }
  }
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      names.push_back("(" + g1.names()[a] + "," + g2.names()[b] + ")");
  FiniteGroup g = FiniteGroup::make(order, std::move(table), std::move(names), GroupFamily::kProduct,
                                    0, "prod(" + g1.spec() + "," + g2.spec() + ")");
  for (Element x : g1.generators()) g.generators_.push_back(Element{static_cast<std::uint32_t>(x.index * n2)});
  for (Element y : g2.generators()) g.generators_.push_back(y);
  std::sort(g.generators_.begin(), g.generators_.end());
  return g;
}

InvolutionSet::InvolutionSet(const FiniteGroup& group, ElementSet members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Element a : members) {
    if (!group.contains(a)) throw GroupError("element index " + std::to_string(a.index) + " out of range");
    if (a == kIdentity || group.multiply(a, a) != kIdentity) {
      throw GroupError("'" + group.name(a) + "' is not an involution");
    }
  }
  members_ = std::move(members);
}

bool InvolutionSet::contains(Element a) const {
  return std::binary_search(members_.begin(), members_.end(), a);
}

InvolutionSet involutions(const FiniteGroup& group) {
  ElementSet out;
  for (Element a : group.elements()) {
    if (group.element_order(a) == 2) out.push_back(a);
  }
  return InvolutionSet(group, std::move(out));
}

ElementSet squares(const FiniteGroup& group) {
  std::vector<bool> hit(group.size(), false);
  for (Element a : group.elements()) hit[group.multiply(a, a).index] = true;
  ElementSet out;
  for (std::uint32_t i = 0; i < group.size(); ++i)
    if (hit[i]) out.push_back(Element{i});
  return out;
}

ElementSet subgroup_closure(const FiniteGroup& group, std::span<const Element> seed) {
  std::vector<bool> in(group.size(), false);
  std::deque<Element> queue;
  in[0] = true;
  queue.push_back(kIdentity);
  ElementSet gens;
  for (Element s : seed) {
    if (!group.contains(s)) throw GroupError("seed element index out of range");
    gens.push_back(s);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (Element s : gens) {
      const Element y = group.multiply(x, s);
      if (!in[y.index]) {
        in[y.index] = true;
        queue.push_back(y);
      }
    }
  }
  ElementSet out;
  for (std::uint32_t i = 0; i < group.size(); ++i)
    if (in[i]) out.push_back(Element{i});
  return out;
}

ElementSet commutator_subgroup(const FiniteGroup& group) {
  std::vector<bool> hit(group.size(), false);
  for (Element x : group.elements()) {
    const Element xi = group.inverse(x);
    for (Element y : group.elements()) {
      const Element c = group.multiply(group.multiply(xi, group.inverse(y)), group.multiply(x, y));
      hit[c.index] = true;
    }
  }
  ElementSet commutators;
  for (std::uint32_t i = 0; i < group.size(); ++i)
    if (hit[i]) commutators.push_back(Element{i});
  return subgroup_closure(group, commutators);
}

Abelianization decompose_abelian(const std::vector<std::vector<std::uint32_t>>& table) {
  if (table.empty()) throw GroupError("abelian table must be non-empty");
  Decomposition d = decompose(table);
  return Abelianization{std::move(d.factors), std::move(d.projection)};
}

Abelianization abelianization(const FiniteGroup& group) {
  const ElementSet derived = commutator_subgroup(group);
  const std::size_t n = group.size();
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<Element> reps;
  for (Element g : group.elements()) {
    if (label[g.index] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(g);
    for (Element k : derived) label[group.multiply(g, k).index] = id;
  }
  Table quotient(reps.size(), std::vector<std::uint32_t>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      quotient[i][j] = label[group.multiply(reps[i], reps[j]).index];

  const Decomposition d = decompose(quotient);
  Abelianization out;
  out.invariant_factors = d.factors;
  out.projection.resize(n);
  for (std::size_t g = 0; g < n; ++g) out.projection[g] = d.projection[label[g]];
  return out;
}

}  // namespace jensen
