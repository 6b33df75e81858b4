#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "jensen/solver.hpp"
#include "jensen/spec_parser.hpp"
#include "jensen/sr2.hpp"
#include "jensen/verify.hpp"

namespace jensen::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxTables = 256;

const char* const kUsage =
    "usage:\n"
    "  jensen info --group <spec> [--json]\n"
    "  jensen sr2 --group <spec> [--involutions all|default|<names>] [--json]\n"
    "  jensen solve --group <spec> --target <spec> --eq J1|J2|J12 [--enumerate] [--json]\n"
    "  jensen hom --group <spec> --target <spec> [--json]\n"
    "  jensen verify --suite [--config <path>] [--json]\n"
    "  jensen verify --group <spec> --target <spec> [--json]\n"
    "  jensen counterexample --k <int> --target <spec> --u <residues> --c <residues> [--json]\n"
    "common: --out <path> writes the report to a file\n"
    "groups: S:<n> | D:<m> | C:<n> | prod(<spec>,<spec>); targets: Z:<d1>[x<d2>...]\n"
    "env: JENSEN_MAX_ENUM caps enumeration (default 1048576)\n";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> names_of(const FiniteGroup& g, const ElementSet& s) {
  std::vector<std::string> out;
  for (Element e : s) out.push_back(g.name(e));
  return out;
}

std::string target_of_factors(const std::vector<std::int64_t>& factors) {
  if (factors.empty()) return "Z:1";
  std::string out = "Z:";
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "x" : "") + std::to_string(factors[i]);
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Fixed-width table of maps, one row per map, one column per element.
std::string map_table(const FiniteGroup& g, const std::vector<GroupMap>& maps) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"#"};
  for (Element e : g.elements()) header.push_back(g.name(e));
  cells.push_back(header);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (Element e : g.elements()) row.push_back(maps[i].target->format(maps[i](e)));
    cells.push_back(std::move(row));
  }
  // Display width counts code points, so the middle dot is one column.
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w(header.size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], width(row[c]));
  std::string out;
  for (const auto& row : cells) {
    std::string line = " ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += ' ' + row[c] + std::string(w[c] - width(row[c]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

ordered_json map_json(const GroupMap& f) {
  ordered_json out = ordered_json::object();
  for (Element e : f.group->elements()) out[f.group->name(e)] = f.target->format(f(e));
  return out;
}

InvolutionSet involutions_from_option(const FiniteGroup& g, const std::string& choice) {
  if (choice == "default") return default_involutions(g);
  if (choice == "all") return involutions(g);
  ElementSet members;
  for (const std::string& name : split_element_list(choice)) {
    const auto e = g.find(name);
    if (!e) throw InputError("unknown element '" + name + "' in " + g.spec());
    members.push_back(*e);
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return InvolutionSet(g, std::move(members));
}

// --- verbs ------------------------------------------------------------------

Outcome run_info(const Command& cmd) {
  const FiniteGroup g = parse_group_spec(cmd.group_spec);
  const InvolutionSet inv = involutions(g);
  const ElementSet sq = squares(g);
  const ElementSet comm = commutator_subgroup(g);
  const Abelianization ab = abelianization(g);
  if (cmd.flag("json")) {
    ordered_json j;
    j["group"] = g.spec();
    j["order"] = g.size();
    j["abelian"] = g.is_abelian();
    j["generators"] = names_of(g, g.generators());
    j["involutions"] = names_of(g, inv.members());
    j["squares"] = names_of(g, sq);
    j["commutator_subgroup"] = names_of(g, comm);
    j["abelianization"] = ab.invariant_factors;
    ordered_json elems = ordered_json::array();
    for (Element e : g.elements()) {
      elems.push_back({{"index", e.index},
                       {"name", g.name(e)},
                       {"order", g.element_order(e)},
                       {"inverse", g.name(g.inverse(e))}});
    }
    j["elements"] = elems;
    return {0, dump(j), ""};
  }
  std::ostringstream out;
  out << "group: " << g.spec() << "\n"
      << "order: " << g.size() << "\n"
      << "abelian: " << (g.is_abelian() ? "yes" : "no") << "\n"
      << "generators: " << join(names_of(g, g.generators()), ", ") << "\n"
      << "involutions: " << inv.size() << "\n"
      << "squares: " << sq.size() << "\n"
      << "commutator subgroup order: " << comm.size() << "\n"
      << "abelianization: " << target_of_factors(ab.invariant_factors) << "\n";
  if (g.size() <= kMaxTables) {
    out << "elements:\n";
    for (Element e : g.elements()) {
      out << "  " << std::setw(4) << e.index << "  " << g.name(e) << "  order " << g.element_order(e)
          << "  inverse " << g.name(g.inverse(e)) << "\n";
    }
  }
  return {0, out.str(), ""};
}

Outcome run_sr2(const Command& cmd) {
  const FiniteGroup g = parse_group_spec(cmd.group_spec);
  const InvolutionSet inv = involutions_from_option(g, cmd.option("involutions").value_or("default"));
  if (inv.empty()) throw InputError(g.spec() + " has no involutions");
  const Sr2Report report = check_sr2(g, inv);
  if (cmd.flag("json")) {
    ordered_json j;
    j["group"] = g.spec();
    j["involutions"] = names_of(g, inv.members());
    j["generates"] = report.generates;
    j["verdict"] = report.verdict;
    ordered_json pairs = ordered_json::array();
    for (const PairResult& p : report.pairs) {
      pairs.push_back({{"a", g.name(p.a)},
                       {"b", g.name(p.b)},
                       {"product", g.name(p.product)},
                       {"witness", p.witness ? ordered_json(g.name(*p.witness)) : ordered_json(nullptr)}});
    }
    j["pairs"] = pairs;
    const auto failures = report.failures();
    j["failing_pair"] = failures.empty()
                            ? ordered_json(nullptr)
                            : ordered_json::array({g.name(failures.front().a), g.name(failures.front().b)});
    return {0, dump(j), ""};
  }
  std::ostringstream out;
  out << "group: " << g.spec() << "\n"
      << "involutions (" << inv.size() << "): " << join(names_of(g, inv.members()), ", ") << "\n"
      << "generates: " << (report.generates ? "yes" : "no") << "\n"
      << "pairs: " << report.pairs.size() << "\n";
  for (const PairResult& p : report.pairs) {
    out << "  " << g.name(p.a) << " * " << g.name(p.b) << " = " << g.name(p.product) << "  ";
    out << (p.witness ? "root " + g.name(*p.witness) : std::string("no square root")) << "\n";
  }
  const auto failures = report.failures();
  if (!failures.empty()) {
    out << "first failing pair: (" << g.name(failures.front().a) << ", " << g.name(failures.front().b) << ")\n";
  }
  out << "verdict: " << (report.verdict ? "true" : "false") << "\n";
  return {0, out.str(), ""};
}

Outcome run_solve(const Command& cmd, std::uint64_t cap) {
  const FiniteGroup g = parse_group_spec(cmd.group_spec);
  const AbelianTarget h = parse_target_spec(*cmd.target_spec);
  const std::string eq = cmd.option("eq").value_or("");
  const auto kind = parse_equation_kind(eq);
  if (!kind) throw InputError("unknown equation '" + eq + "' (expected J1, J2 or J12)");
  const SolutionSpace space = solve(g, h, *kind);
  const bool small = space.cardinality() <= BigInt(static_cast<unsigned long>(std::min<std::uint64_t>(kMaxTables, cap)));
  const bool tables = cmd.flag("enumerate") && small;
  std::vector<GroupMap> members;
  if (tables) members = space.enumerate(cap);

  if (cmd.flag("json")) {
    ordered_json j;
    j["group"] = g.spec();
    j["target"] = h.spec();
    j["equation"] = std::string(to_string(*kind));
    j["cardinality"] = space.cardinality().get_str();
    ordered_json factors = ordered_json::array();
    const std::vector<GroupMap> gens = space.generators();
    std::size_t next = 0;
    for (std::size_t f = 0; f < space.per_factor().size(); ++f) {
      const ModKernel& k = space.per_factor()[f];
      ordered_json gj = ordered_json::array();
      for (std::size_t b = 0; b < k.basis.size(); ++b) {
        gj.push_back({{"order", k.orders[b]}, {"map", map_json(gens[next++])}});
      }
      factors.push_back({{"modulus", k.modulus}, {"cardinality", k.cardinality.get_str()}, {"generators", gj}});
    }
    j["factors"] = factors;
    if (cmd.flag("enumerate")) {
      if (tables) {
        ordered_json sols = ordered_json::array();
        for (const GroupMap& m : members) sols.push_back(map_json(m));
        j["solutions"] = sols;
      } else {
        j["solutions"] = nullptr;
        j["solutions_omitted"] = "more than " + std::to_string(kMaxTables) + " solutions";
      }
    }
    return {0, dump(j), ""};
  }
  std::ostringstream out;
  out << "group: " << g.spec() << "\n"
      << "target: " << h.spec() << "\n"
      << "equation: " << to_string(*kind) << "\n"
      << "cardinality: " << space.cardinality().get_str() << "\n";
  for (const ModKernel& k : space.per_factor()) {
    out << "factor Z/" << k.modulus << ": " << k.cardinality.get_str() << " solutions, generator orders [";
    for (std::size_t b = 0; b < k.orders.size(); ++b) out << (b ? ", " : "") << k.orders[b];
    out << "]\n";
  }
  if (cmd.flag("enumerate")) {
    if (tables) {
      out << "solutions:\n" << map_table(g, members);
    } else {
      out << "solutions: omitted (more than " << kMaxTables << ")\n";
    }
  }
  return {0, out.str(), ""};
}

Outcome run_hom(const Command& cmd, std::uint64_t cap) {
  const FiniteGroup g = parse_group_spec(cmd.group_spec);
  const AbelianTarget h = parse_target_spec(*cmd.target_spec);
  const Abelianization ab = abelianization(g);
  const BigInt formula = hom_count_from_factors(ab.invariant_factors, h);
  const auto by_gens = hom_space_by_generators(g, h, cap);
  const auto by_ab = hom_space_by_abelianization(g, h, cap);
  const bool agree = by_gens == by_ab && BigInt(static_cast<unsigned long>(by_gens.size())) == formula;
  if (cmd.flag("json")) {
    ordered_json j;
    j["group"] = g.spec();
    j["target"] = h.spec();
    j["abelianization"] = ab.invariant_factors;
    j["cardinality"] = formula.get_str();
    j["by_generators"] = by_gens.size();
    j["by_abelianization"] = by_ab.size();
    j["agree"] = agree;
    if (by_gens.size() <= kMaxTables) {
      ordered_json homs = ordered_json::array();
      for (const GroupMap& m : by_gens) homs.push_back(map_json(m));
      j["homomorphisms"] = homs;
    }
    return {agree ? 0 : 1, dump(j), ""};
  }
  std::ostringstream out;
  out << "group: " << g.spec() << "\n"
      << "target: " << h.spec() << "\n"
      << "abelianization: " << target_of_factors(ab.invariant_factors) << "\n"
      << "|Hom| (gcd formula): " << formula.get_str() << "\n"
      << "|Hom| (generator propagation): " << by_gens.size() << "\n"
      << "|Hom| (abelianization pull-back): " << by_ab.size() << "\n"
      << "methods agree: " << (agree ? "yes" : "no") << "\n";
  if (by_gens.size() <= kMaxTables) out << "homomorphisms:\n" << map_table(g, by_gens);
  return {agree ? 0 : 1, out.str(), ""};
}

Outcome run_verify(const Command& cmd, std::uint64_t cap) {
  SuiteConfig config;
  if (cmd.flag("suite")) {
    config = default_suite_config();
    config.cap = cap;
    if (const auto path = cmd.option("config")) {
      std::ifstream in(*path);
      if (!in) throw InputError("cannot read config '" + *path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw InputError("config '" + *path + "' is not valid JSON: " + e.what());
      }
      SuiteConfig parsed = parse_suite_config(j);
      if (!j.contains("max_enum")) parsed.cap = cap;
      if (!j.contains("instances")) parsed.instances = config.instances;
      config = std::move(parsed);
    }
  } else {
    config.cap = cap;
    config.instances.push_back({cmd.group_spec, *cmd.target_spec});
  }
  const std::vector<CheckResult> results = run_suite(config);
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const CheckResult& r : results) {
    pass += r.passed();
    fail += r.failed();
    skip += r.skipped();
  }
  const int code = fail ? 1 : 0;
  if (cmd.flag("json")) return {code, dump(to_json(results)), ""};
  std::ostringstream out;
  for (const CheckResult& r : results) {
    out << std::left << std::setw(5) << to_string(r.status) << ' ' << std::setw(24) << r.check_id << ' '
        << std::setw(16) << r.instance.group_spec << ' ' << std::setw(6) << r.instance.target_spec << ' '
        << r.detail << "\n";
    if (r.counterexample) out << "      counterexample: " << r.counterexample->dump() << "\n";
  }
  out << results.size() << " checks: " << pass << " pass, " << fail << " fail, " << skip << " skip\n";
  return {code, out.str(), ""};
}

long parse_k(const std::string& text) {
  long k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc{} || ptr != text.data() + text.size() || k < 1 || k > 32) {
    throw InputError("--k must be an integer in [1, 32], got '" + text + "'");
  }
  return k;
}

Outcome run_counterexample(const Command& cmd) {
  const long k = parse_k(cmd.option("k").value_or(""));
  const FiniteGroup g = build_dihedral(static_cast<unsigned>(2 * k));
  const AbelianTarget h = parse_target_spec(*cmd.target_spec);
  const AbElement u = parse_residues(h, cmd.option("u").value_or(""));
  const AbElement c = parse_residues(h, cmd.option("c").value_or(""));
  const GroupMap f = construct_counterexample(g, h, u, c);
  const bool j1 = is_solution(f, EquationKind::kJ1);
  const bool hom = is_homomorphism(f);
  if (cmd.flag("json")) {
    ordered_json j;
    j["group"] = g.spec();
    j["target"] = h.spec();
    j["u"] = h.format(u);
    j["c"] = h.format(c);
    j["map"] = map_json(f);
    j["solves_J1"] = j1;
    j["homomorphism"] = hom;
    return {0, dump(j), ""};
  }
  std::ostringstream out;
  out << "group: " << g.spec() << "\n"
      << "target: " << h.spec() << "\n"
      << "u = " << h.format(u) << ", c = " << h.format(c) << "\n"
      << "map:\n"
      << map_table(g, {f}) << "solves J1: " << (j1 ? "yes" : "no") << "\n"
      << "homomorphism: " << (hom ? "yes" : "no") << "\n";
  return {0, out.str(), ""};
}

}  // namespace

std::optional<std::string> Command::option(const std::string& name) const {
  const auto it = options.find(name);
  if (it == options.end()) return std::nullopt;
  return it->second;
}

std::string usage() { return kUsage; }

Command parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Jensen equation solver and checker", "jensen"};
  app.set_help_flag();
  app.require_subcommand(1, 1);

  std::string group, target, involutions, eq, config, out, k, u, c;
  auto common = [&](CLI::App* sub) {
    sub->set_help_flag();
    sub->add_flag("--json");
    sub->add_option("--out", out);
  };
  CLI::App* info = app.add_subcommand("info");
  info->add_option("--group", group)->required();
  common(info);

  CLI::App* sr2 = app.add_subcommand("sr2");
  sr2->add_option("--group", group)->required();
  sr2->add_option("--involutions", involutions);
  common(sr2);

  CLI::App* solve_cmd = app.add_subcommand("solve");
  solve_cmd->add_option("--group", group)->required();
  solve_cmd->add_option("--target", target)->required();
  solve_cmd->add_option("--eq", eq)->required();
  solve_cmd->add_flag("--enumerate");
  common(solve_cmd);

  CLI::App* hom = app.add_subcommand("hom");
  hom->add_option("--group", group)->required();
  hom->add_option("--target", target)->required();
  common(hom);

  CLI::App* verify = app.add_subcommand("verify");
  verify->add_flag("--suite");
  verify->add_option("--config", config);
  verify->add_option("--group", group);
  verify->add_option("--target", target);
  common(verify);

  CLI::App* cx = app.add_subcommand("counterexample");
  cx->add_option("--k", k)->required();
  cx->add_option("--target", target)->required();
  cx->add_option("--u", u)->required();
  cx->add_option("--c", c)->required();
  common(cx);

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what(), kUsage);
  }

  Command cmd;
  CLI::App* chosen = app.get_subcommands().front();
  cmd.verb = chosen->get_name();
  cmd.group_spec = group;
  if (!target.empty()) cmd.target_spec = target;
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->count() == 0) continue;
    std::string name = opt->get_name(false, true);
    if (name.rfind("--", 0) == 0) name = name.substr(2);
    const auto results = opt->results();
    cmd.options[name] = opt->get_type_size() == 0 ? "" : (results.empty() ? "" : results.back());
  }
  if (cmd.verb == "verify") {
    const bool suite = cmd.flag("suite");
    if (suite && (cmd.flag("group") || cmd.flag("target"))) {
      throw UsageError("verify takes either --suite or --group/--target", kUsage);
    }
    if (!suite && (group.empty() || target.empty())) {
      throw UsageError("verify needs --suite, or both --group and --target", kUsage);
    }
    if (!suite && cmd.flag("config")) throw UsageError("--config requires --suite", kUsage);
  }
  return cmd;
}

Outcome execute(const Command& cmd, std::uint64_t cap) {
  try {
    if (cmd.verb == "info") return run_info(cmd);
    if (cmd.verb == "sr2") return run_sr2(cmd);
    if (cmd.verb == "solve") return run_solve(cmd, cap);
    if (cmd.verb == "hom") return run_hom(cmd, cap);
    if (cmd.verb == "verify") return run_verify(cmd, cap);
    if (cmd.verb == "counterexample") return run_counterexample(cmd);
    return {2, "", "unknown verb '" + cmd.verb + "'\n" + kUsage};
  } catch (const CapExceeded& e) {
    return {2, "", std::string("cap exceeded: ") + e.what() + " (raise JENSEN_MAX_ENUM)\n"};
  } catch (const SizeCapExceeded& e) {
    return {2, "", std::string("size cap exceeded: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {2, "", std::string("parse error: ") + e.what() + "\n"};
  } catch (const std::logic_error& e) {
    // GroupError, invalid_argument and friends.
    return {2, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {2, "", std::string("error: ") + e.what() + "\n"};
  }
}

std::uint64_t enumeration_cap_from_env() {
  const char* raw = std::getenv("JENSEN_MAX_ENUM");
  if (!raw || !*raw) return kDefaultEnumerationCap;
  const std::string text(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
    throw UsageError("JENSEN_MAX_ENUM must be a positive integer, got '" + text + "'", kUsage);
  }
  return v;
}

Outcome run(const std::vector<std::string>& args) {
  Command cmd;
  std::uint64_t cap = 0;
  try {
    cmd = parse_args(args);
    cap = enumeration_cap_from_env();
  } catch (const UsageError& e) {
    return {2, "", std::string("error: ") + e.what() + "\n" + e.usage()};
  }
  Outcome result = execute(cmd, cap);
  if (const auto path = cmd.option("out"); path && result.exit_code != 2) {
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    file << result.output;
    if (!file) return {2, "", "error: cannot write '" + *path + "'\n"};
    result.output.clear();
  }
  return result;
}

}  // namespace jensen::cli
