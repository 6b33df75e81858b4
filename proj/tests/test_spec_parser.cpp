#include <gtest/gtest.h>

#include "jensen/spec_parser.hpp"

using namespace jensen;

TEST(GroupSpec, Families) {
  EXPECT_EQ(parse_group_spec("S:4").size(), 24u);
  EXPECT_EQ(parse_group_spec("D:5").size(), 10u);
  EXPECT_EQ(parse_group_spec("C:7").size(), 7u);
  EXPECT_EQ(parse_group_spec("prod(D:3,D:3)").size(), 36u);
  EXPECT_EQ(parse_group_spec(" prod( C:2 , prod(C:2,C:3) ) ").size(), 12u);
  EXPECT_EQ(parse_group_spec("S : 3").spec(), "S:3");
}

TEST(GroupSpec, ErrorsNameTokenAndPosition) {
  auto error_of = [](std::string_view text) {
    try {
      parse_group_spec(text);
    } catch (const ParseError& e) {
      return std::make_pair(std::string(e.what()), e.position());
    }
    return std::make_pair(std::string(), std::size_t{0});
  };
  auto [msg, pos] = error_of("Q:3");
  EXPECT_NE(msg.find("'Q'"), std::string::npos) << msg;
  EXPECT_EQ(pos, 0u);
  std::tie(msg, pos) = error_of("prod(S:3;C:2)");
  EXPECT_EQ(pos, 8u) << msg;
  std::tie(msg, pos) = error_of("S:");
  EXPECT_NE(msg.find("end of input"), std::string::npos) << msg;
  std::tie(msg, pos) = error_of("S:3 x");
  EXPECT_NE(msg.find("'x'"), std::string::npos) << msg;
  EXPECT_EQ(pos, 4u);
  EXPECT_THROW(parse_group_spec(""), ParseError);
  EXPECT_THROW(parse_group_spec("S:9"), GroupError);
}

TEST(TargetSpec, Forms) {
  EXPECT_EQ(parse_target_spec("Z:2").factors(), std::vector<std::int64_t>{2});
  EXPECT_EQ(parse_target_spec("Z:2x4").factors(), (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(parse_target_spec("Z: 2 x 2").factors(), (std::vector<std::int64_t>{2, 2}));
  EXPECT_TRUE(parse_target_spec("Z:1").is_trivial());
  EXPECT_EQ(parse_target_spec("Z:1x3").factors(), std::vector<std::int64_t>{3});
  EXPECT_THROW(parse_target_spec("Z:0"), ParseError);
  EXPECT_THROW(parse_target_spec("Z:"), ParseError);
  EXPECT_THROW(parse_target_spec("Q:2"), ParseError);
  EXPECT_THROW(parse_target_spec("Z:2x"), ParseError);
}

TEST(ElementList, TopLevelCommas) {
  EXPECT_EQ(split_element_list("(1 2),(3 4)"), (std::vector<std::string>{"(1 2)", "(3 4)"}));
  EXPECT_EQ(split_element_list("(0,1), (1,0)"), (std::vector<std::string>{"(0,1)", "(1,0)"}));
  EXPECT_EQ(split_element_list("s, s·r"), (std::vector<std::string>{"s", "s·r"}));
  EXPECT_THROW(split_element_list("s,,r"), ParseError);
  EXPECT_THROW(split_element_list("(1 2"), ParseError);
}

TEST(Residues, Forms) {
  const AbelianTarget h({2, 4});
  EXPECT_EQ(parse_residues(h, "(1,3)"), h.reduce({1, 3}));
  EXPECT_EQ(parse_residues(h, "1,-1"), h.reduce({1, 3}));
  EXPECT_EQ(parse_residues(AbelianTarget({2}), "1"), AbElement{{1}});
  EXPECT_THROW(parse_residues(h, "1"), ParseError);
  EXPECT_THROW(parse_residues(h, "(1,x)"), ParseError);
}
