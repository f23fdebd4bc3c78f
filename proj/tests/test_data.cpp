#include <gtest/gtest.h>

#include "rocinf/data.hpp"

using namespace rocinf;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rocinf::Error thrown";
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST(Csv, ParsesHeaderQuotesAndCrlf) {
  const Table t = parse_csv("y,\"a\",b\r\n1,2.5,-3\r\n\r\n0,+4,1e-2\n");
  ASSERT_EQ(t.columns, (std::vector<std::string>{"y", "a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(t.rows[0][1], 2.5);
  EXPECT_DOUBLE_EQ(t.rows[1][1], 4.0);
  EXPECT_DOUBLE_EQ(t.rows[1][2], 0.01);
}

TEST(Csv, RejectsRaggedRowsAndJunk) {
  EXPECT_EQ(code_of([] { parse_csv("y,a\n1,2,3\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_csv("y,a\n1,abc\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_csv(""); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { read_csv("/nonexistent/file.csv"); }), ErrorCode::IoError);
}

TEST(DatasetTest, SplitsClassesInOrder) {
  const Table t = parse_csv("a,y,b\n1,1,2\n3,0,4\n5,1,6\n");
  const Dataset d = load_dataset(t, "y");
  EXPECT_EQ(d.n(), 3);
  EXPECT_EQ(d.k(), 2);
  EXPECT_EQ(d.names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.positives(), (std::vector<int>{0, 2}));
  EXPECT_EQ(d.negatives(), (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(d.x()(2, 1), 6.0);
  EXPECT_DOUBLE_EQ(d.design()(1, 0), 1.0);
  const Dataset s = d.select({1});
  EXPECT_EQ(s.names(), (std::vector<std::string>{"b"}));
  EXPECT_DOUBLE_EQ(s.x()(0, 0), 2.0);
}

TEST(DatasetTest, ValidationErrors) {
  EXPECT_EQ(code_of([] { load_dataset(parse_csv("a,b\n1,2\n3,4\n"), "y"); }),
            ErrorCode::MissingColumn);
  EXPECT_EQ(code_of([] { load_dataset(parse_csv("y,a\n2,1\n0,1\n"), "y"); }),
            ErrorCode::NonBinaryOutcome);
  EXPECT_EQ(code_of([] { load_dataset(parse_csv("y,a\n1,1\n1,2\n"), "y"); }),
            ErrorCode::DegenerateOutcome);
  EXPECT_EQ(code_of([] { load_dataset(parse_csv("y,a\n1,nan\n0,2\n"), "y"); }),
            ErrorCode::NonFiniteValue);
  EXPECT_EQ(code_of([] { IndexValues(VectorXd::Constant(5, 0.3)); }), ErrorCode::DegenerateIndex);
}

TEST(Grid, EndpointsAndStep) {
  GridConfig g;
  g.tau_l = 0.1;
  g.tau_u = 0.9;
  g.step = 0.1;
  const auto t = make_t_grid(g);
  ASSERT_EQ(t.size(), 9u);
  EXPECT_DOUBLE_EQ(t.front(), 0.1);
  EXPECT_DOUBLE_EQ(t.back(), 0.9);
  g.step = 0.3;
  const auto u = make_t_grid(g);
  EXPECT_EQ(u.size(), 4u);  // 0.1, 0.4, 0.7, then tau_u itself
  EXPECT_DOUBLE_EQ(u.back(), 0.9);
}

TEST(Grid, RejectsBadConfig) {
  GridConfig g;
  g.tau_l = 0.6;
  g.tau_u = 0.4;
  EXPECT_EQ(code_of([&] { make_t_grid(g); }), ErrorCode::InvalidConfig);
  g = GridConfig{};
  g.alpha = 1.5;
  EXPECT_EQ(code_of([&] { g.validate(); }), ErrorCode::InvalidConfig);
}

TEST(Transforms, StrictlyIncreasing) {
  for (const char* name : {"identity", "exp", "cube"}) {
    const MonotoneMap f = make_transform(name);
    EXPECT_LT(f(0.2), f(0.3)) << name;
  }
  EXPECT_EQ(code_of([] { make_transform("log"); }), ErrorCode::InvalidConfig);
}
