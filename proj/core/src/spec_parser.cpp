#include "jensen/spec_parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace jensen {

namespace {

struct Token {
  enum class Kind { kWord, kInt, kPunct, kEnd } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
    } else if (std::isalpha(ch)) {
      const std::size_t start = i;
      while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Kind::kWord, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(ch)) {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Kind::kInt, std::string(s.substr(start, i - start)), start});
    } else if (ch == ':' || ch == '(' || ch == ')' || ch == ',') {
      out.push_back({Token::Kind::kPunct, std::string(1, static_cast<char>(ch)), i});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, static_cast<char>(ch)) + "' at position " +
                           std::to_string(i),
                       i);
    }
  }
  out.push_back({Token::Kind::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  FiniteGroup group() {
    FiniteGroup g = group_expr();
    expect_end();
    return g;
  }

  AbelianTarget target() {
    expect_word("Z");
    expect_punct(":");
    std::vector<std::int64_t> factors;
    const auto push = [&](unsigned long d, const Token& t) {
      if (d == 0) fail("cyclic factor must be >= 1", t);
      if (d > 1) factors.push_back(static_cast<std::int64_t>(d));
    };
    {
      const Token& t = peek();
      push(integer(), t);
    }
    while (peek().kind == Token::Kind::kWord && peek().text == "x") {
      ++at_;
      const Token& t = peek();
      push(integer(), t);
    }
    expect_end();
    return AbelianTarget(std::move(factors));
  }

 private:
  FiniteGroup group_expr() {
    const Token& head = peek();
    if (head.kind != Token::Kind::kWord) fail("expected group family", head);
    ++at_;
    if (head.text == "prod") {
      expect_punct("(");
      FiniteGroup left = group_expr();
      expect_punct(",");
      FiniteGroup right = group_expr();
      expect_punct(")");
      return direct_product(left, right);
    }
    if (head.text != "S" && head.text != "D" && head.text != "C") fail("unknown group family", head);
    expect_punct(":");
    const Token& num = peek();
    const unsigned long n = integer();
    if (n > 4096) fail("group parameter too large", num);
    const auto param = static_cast<unsigned>(n);
    if (head.text == "S") return build_symmetric(param);
    if (head.text == "D") return build_dihedral(param);
    return build_cyclic(param);
  }

  const Token& peek() const { return tokens_[at_]; }

  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    const std::string shown = t.kind == Token::Kind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ": got " + shown + " at position " + std::to_string(t.pos), t.pos);
  }

  void expect_punct(const char* p) {
    const Token& t = peek();
    if (t.kind != Token::Kind::kPunct || t.text != p) fail(std::string("expected '") + p + "'", t);
    ++at_;
  }

  void expect_word(const char* w) {
    const Token& t = peek();
    if (t.kind != Token::Kind::kWord || t.text != w) fail(std::string("expected '") + w + "'", t);
    ++at_;
  }

  void expect_end() {
    if (peek().kind != Token::Kind::kEnd) fail("trailing input", peek());
  }

  unsigned long integer() {
    const Token& t = peek();
    if (t.kind != Token::Kind::kInt) fail("expected integer", t);
    unsigned long v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || v > (1UL << 40)) fail("integer out of range", t);
    ++at_;
    return v;
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

FiniteGroup parse_group_spec(std::string_view text) { return Parser(text).group(); }

AbelianTarget parse_target_spec(std::string_view text) { return Parser(text).target(); }

std::vector<std::string> split_element_list(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      std::string item = trim(text.substr(start, i - start));
      if (item.empty()) throw ParseError("empty element name at position " + std::to_string(start), start);
      out.push_back(std::move(item));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')' at position " + std::to_string(i), i);
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in element list", text.size());
  return out;
}

AbElement parse_residues(const AbelianTarget& target, std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::int64_t> values;
  if (!trim(s).empty()) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i != s.size() && s[i] != ',') continue;
      const std::string item = trim(std::string_view(s).substr(start, i - start));
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
        throw ParseError("malformed residue '" + item + "' at position " + std::to_string(start), start);
      }
      values.push_back(v);
      start = i + 1;
    }
  }
  if (values.size() != target.rank()) {
    throw ParseError("expected " + std::to_string(target.rank()) + " residues for " + target.spec() + ", got " +
                         std::to_string(values.size()),
                     0);
  }
  return target.reduce(std::move(values));
}

}  // namespace jensen
