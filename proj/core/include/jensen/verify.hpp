#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jensen/solver.hpp"
#include "jensen/sr2.hpp"

namespace jensen {

enum class CheckStatus { kPass, kFail, kSkip };

std::string_view to_string(CheckStatus status);

struct Instance {
  std::string group_spec;
  std::string target_spec;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
};

/// Outcome of one machine check. A failed result always carries a
/// counterexample that `recheck_counterexample` confirms.
struct CheckResult {
  std::string check_id;
  Instance instance;
  CheckStatus status = CheckStatus::kPass;
  std::optional<nlohmann::ordered_json> counterexample;
  std::string detail;

  bool passed() const { return status == CheckStatus::kPass; }
  bool failed() const { return status == CheckStatus::kFail; }
  bool skipped() const { return status == CheckStatus::kSkip; }
};

// Identities valid for every J1 solution.
CheckResult check_basic_identities(const GroupMap& f);
CheckResult check_switching(const GroupMap& f);
CheckResult check_two_involution_torsion(const GroupMap& f, const InvolutionSet& involutions);
/// Skipped unless the involutions generate G.
CheckResult check_word_torsion(const GroupMap& f, const InvolutionSet& involutions);
/// Skipped unless G is generated by its involutions.
CheckResult check_reordering(const GroupMap& f);

/// S1 = S12 = Hom on groups satisfying SR2(I); skipped otherwise.
CheckResult check_main_theorem(const FiniteGroup& group, const AbelianTarget& target,
                               const InvolutionSet& involutions,
                               std::uint64_t cap = kDefaultEnumerationCap);
/// Every J1 solution is g -> parity(g) * u with u in H[2]; skipped without SR2(I).
CheckResult check_parity_form(const FiniteGroup& group, const AbelianTarget& target,
                              const InvolutionSet& involutions,
                              std::uint64_t cap = kDefaultEnumerationCap);

/// Parity of the involution-word length of each element, or nullopt when two
/// words of different parity reach the same element. Requires <I> = G.
std::optional<std::vector<int>> involution_word_parity(const FiniteGroup& group,
                                                       const InvolutionSet& involutions);

/// On D_m with m = 2k even: r^even -> 0, r^odd -> u, s·r^j -> c.
/// Throws std::invalid_argument for odd m, non-dihedral groups, or u, c
/// outside H[2].
GroupMap construct_counterexample(const FiniteGroup& dihedral, const AbelianTarget& target,
                                  const AbElement& u, const AbElement& c);

std::vector<CheckResult> check_dihedral_dichotomy(const std::vector<unsigned>& m_range,
                                                  const AbelianTarget& target,
                                                  std::uint64_t cap = kDefaultEnumerationCap);

struct SuiteInstance {
  std::string group_spec;
  std::string target_spec;
};

struct SuiteConfig {
  std::vector<SuiteInstance> instances;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// S_n for n in 2..5 and D_m for m in 1..12 against Z:2, Z:4, Z:2x2, Z:3,
/// plus prod(D:3,D:3) against Z:2.
SuiteConfig default_suite_config();
/// {"instances": [{"group": "S:3", "target": "Z:2"}, ...], "max_enum": 1048576}
SuiteConfig parse_suite_config(const nlohmann::json& config);

std::vector<CheckResult> run_suite(const SuiteConfig& config);

/// Re-evaluates a counterexample against the group and target it names.
/// Returns true when the recorded violation is real.
bool recheck_counterexample(const nlohmann::ordered_json& counterexample, const FiniteGroup& group,
                            const AbelianTarget& target);

nlohmann::ordered_json to_json(const CheckResult& result);
nlohmann::ordered_json to_json(const std::vector<CheckResult>& results);

}  // namespace jensen
