#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "test_support.hpp"

namespace ord = ordseries;
using iser = ord::series<ord::int_index>;
using val = ord::calc_value<ord::int_index>;
using bindings = std::map<std::string, val>;

namespace {

double num(std::string_view text, const bindings& env = {}) {
  return std::get<double>(ord::eval_expression<ord::int_index>(text, env));
}

iser ser(std::string_view text, const bindings& env) {
  return std::get<iser>(ord::eval_expression<ord::int_index>(text, env));
}

iser make(std::vector<ord::cell> v) {
  std::vector<ord::int_index> idx;
  for (std::int64_t i = 0; i < std::int64_t(v.size()); ++i) idx.emplace_back(i);
  return iser("x", std::move(idx), std::move(v));
}

}  // namespace

TEST_CASE("scalar expressions follow the usual precedence") {
  CHECK(num("2+3*4") == 14.0);
  CHECK(num("(2+3)*4") == 20.0);
  CHECK(num("10-4-3") == 3.0);
  CHECK(num("12/3/2") == 2.0);
  CHECK(num("2^3^2") == 512.0);
  CHECK(num("-2^2") == -4.0);
  CHECK(num("(-2)^2") == 4.0);
  CHECK(num("2^-1") == 0.5);
  CHECK(num("--3") == 3.0);
  CHECK(num("+5") == 5.0);
  CHECK(num("1+2 < 4") == 1.0);
  CHECK(num("1 >= 2") == 0.0);
  CHECK(num("2 == 2") == 1.0);
  CHECK(num("2 != 2") == 0.0);
  CHECK(num("1 < 2 == 1") == 1.0);
}

TEST_CASE("functions cover the scalar and series cases") {
  CHECK(ts::near(num("log(exp(2))"), 2.0, 1e-12));
  CHECK(num("sqrt(16)") == 4.0);
  CHECK(num("abs(-7)") == 7.0);
  CHECK(num("abs(3-5)*2") == 4.0);

  bindings env{{"s", make({1.0, 4.0, 9.0})}};
  auto roots = ser("sqrt(s)", env);
  CHECK(ts::got(roots.at(0)) == 1.0);
  CHECK(ts::got(roots.at(2)) == 3.0);

  auto d = ser("diff(s)", env);
  REQUIRE(d.row_count() == 2);
  CHECK(ts::got(d.at(0)) == 3.0);
  CHECK(ts::got(d.at(1)) == 5.0);
  CHECK_THROWS_AS(num("diff(3)"), ord::domain_error);
}

TEST_CASE("scalars broadcast over bound tables") {
  bindings env{{"s", make({1.0, std::nullopt, 3.0})}};
  auto r = ser("2*s+1", env);
  REQUIRE(r.row_count() == 3);
  CHECK(ts::got(r.at(0)) == 3.0);
  CHECK_FALSE(r.at(1));
  CHECK(ts::got(r.at(2)) == 7.0);
  CHECK(r.index()[1] == ord::int_index(1));
}

TEST_CASE("two bound series align on their shared rows") {
  bindings env;
  env.emplace("a", make({1.0, 2.0, 3.0}));
  std::vector<ord::int_index> idx{ord::int_index(1), ord::int_index(2), ord::int_index(5)};
  env.emplace("b", iser("b", idx, std::vector<ord::cell>{10.0, 20.0, 50.0}));
  auto r = ser("a+b", env);
  REQUIRE(r.row_count() == 2);
  CHECK(r.index()[0] == ord::int_index(1));
  CHECK(ts::got(r.at(0)) == 12.0);
  CHECK(ts::got(r.at(1)) == 23.0);
}

TEST_CASE("a frame binding recycles series and scalars") {
  ord::frame<ord::int_index> f({"p", "q"}, {ord::int_index(0), ord::int_index(1)},
                               {{1.0, 2.0}, {10.0, 20.0}});
  bindings env{{"f", f}, {"s", make({100.0, 200.0})}};
  auto r = std::get<ord::frame<ord::int_index>>(
      ord::eval_expression<ord::int_index>("f+s*0+f", env));
  CHECK(ts::got(r.at(0, 0)) == 2.0);
  CHECK(ts::got(r.at(1, 1)) == 40.0);
  CHECK(r.names() == f.names());
}

TEST_CASE("comparisons produce indicator tables") {
  bindings env{{"s", make({-1.0, 0.0, 2.0})}};
  auto r = ser("s > 0", env);
  CHECK(ts::got(r.at(0)) == 0.0);
  CHECK(ts::got(r.at(1)) == 0.0);
  CHECK(ts::got(r.at(2)) == 1.0);
}

TEST_CASE("broken expressions raise parse errors") {
  bindings env{{"s", make({1.0})}};
  CHECK_THROWS_AS(num("1+", env), ord::parse_error);
  CHECK_THROWS_AS(num("(1+2", env), ord::parse_error);
  CHECK_THROWS_AS(num("1 2", env), ord::parse_error);
  CHECK_THROWS_AS(num("nope+1", env), ord::parse_error);
  CHECK_THROWS_AS(num("floor(1)", env), ord::parse_error);
  CHECK_THROWS_AS(num("1 $ 2", env), ord::parse_error);
  CHECK_THROWS_AS(num("", env), ord::parse_error);
}
