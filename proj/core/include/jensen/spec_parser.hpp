#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jensen/abelian.hpp"
#include "jensen/group.hpp"

namespace jensen {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Group specs:  S:<n> | D:<m> | C:<n> | prod(<spec>,<spec>)
// Target specs: Z:<d1>[x<d2>...]; Z:1 is the trivial group.
// Whitespace is ignored; errors name the offending token and its 0-based offset.
FiniteGroup parse_group_spec(std::string_view text);
AbelianTarget parse_target_spec(std::string_view text);

/// Splits a comma-separated element-name list at top-level commas only, so
/// "(1 2),(a,b)" yields "(1 2)" and "(a,b)". Entries are trimmed.
std::vector<std::string> split_element_list(std::string_view text);

/// Parses "1", "1,0" or "(1,0)" into an element of `target`, reducing residues.
AbElement parse_residues(const AbelianTarget& target, std::string_view text);

}  // namespace jensen
