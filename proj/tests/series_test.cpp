#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

namespace ord = ordseries;
using ts::dt;
using date = ord::date_index;
using iser = ord::series<ord::int_index>;

namespace {

iser small(std::vector<ord::cell> v) {
  std::vector<ord::int_index> idx;
  for (std::size_t i = 0; i < v.size(); ++i) idx.emplace_back(std::int64_t(i + 1));
  return iser("x", std::move(idx), std::move(v));
}

}  // namespace

TEST_CASE("construction sorts observations by index") {
  auto s = ord::make_series<ord::int_index>(
      "x", {ord::int_index(3), ord::int_index(1), ord::int_index(2)}, {30.0, 10.0, 20.0});
  CHECK(s.index() == std::vector<ord::int_index>{ord::int_index(1), ord::int_index(2),
                                                 ord::int_index(3)});
  CHECK(ts::got(s.at(0)) == 10.0);
  CHECK(ts::got(s.at(2)) == 30.0);
}

TEST_CASE("duplicate index policies") {
  std::vector<ord::int_index> idx = {ord::int_index(1), ord::int_index(1), ord::int_index(2)};
  std::vector<ord::cell> vals = {1.0, 3.0, 5.0};
  CHECK_THROWS_AS(ord::make_series<ord::int_index>("x", idx, vals), ord::duplicate_index_error);

  auto first = ord::make_series<ord::int_index>("x", idx, vals, ord::on_duplicate::keep_first);
  REQUIRE(first.row_count() == 2);
  CHECK(ts::got(first.at(0)) == 1.0);

  auto mean = ord::make_series<ord::int_index>("x", idx, vals, ord::on_duplicate::mean);
  CHECK(ts::got(mean.at(0)) == 2.0);

  // A missing contribution poisons the duplicate group's mean.
  auto poisoned = ord::make_series<ord::int_index>("x", idx, {1.0, std::nullopt, 5.0},
                                                   ord::on_duplicate::mean);
  CHECK_FALSE(poisoned.at(0));
}

TEST_CASE("table invariants are enforced") {
  using fr = ord::frame<ord::int_index>;
  std::vector<ord::int_index> idx = {ord::int_index(1), ord::int_index(2)};
  CHECK_THROWS_AS(fr({"a", "b"}, idx, {{1.0, 2.0}}), ord::shape_error);
  CHECK_THROWS_AS(fr({"a"}, idx, {{1.0}}), ord::shape_error);
  CHECK_THROWS_AS(fr({"a", "a"}, idx, {{1.0, 2.0}, {3.0, 4.0}}), ord::shape_error);
  CHECK_THROWS_AS(fr({""}, idx, {{1.0, 2.0}}), ord::shape_error);
  CHECK_THROWS_AS(
      ord::series<ord::int_index>("x", {ord::int_index(2), ord::int_index(1)}, {1.0, 2.0}),
      ord::order_error);
  CHECK_THROWS_AS(
      ord::series<ord::int_index>("x", {ord::int_index(1), ord::int_index(1)}, {1.0, 2.0}),
      ord::duplicate_index_error);
  // Gap 2 is 0.8 steps on a 0.4-per-unit grid: off-grid.
  CHECK_THROWS_AS(
      ord::series<ord::int_index>("x", {ord::int_index(1), ord::int_index(3)}, {1.0, 2.0}, 0.4),
      ord::frequency_mismatch_error);
}

TEST_CASE("take_positions uses one-based rows and deduplicates") {
  auto s = small({10.0, 20.0, 30.0, 40.0});
  auto t = ord::take_positions(s, {4, 2, 2});
  REQUIRE(t.row_count() == 2);
  CHECK(ts::got(t.at(0)) == 20.0);
  CHECK(ts::got(t.at(1)) == 40.0);
  CHECK_THROWS_AS(ord::take_positions(s, {0}), ord::bounds_error);
  CHECK_THROWS_AS(ord::take_positions(s, {5}), ord::bounds_error);
}

TEST_CASE("select_columns keeps the requested order") {
  auto z = ts::load_frame<date>("Z.csv");
  auto picked = ord::select_columns(z, {"Cc", "Aa"});
  REQUIRE(picked.names() == std::vector<std::string>{"Cc", "Aa"});
  CHECK(ts::got(picked.at(0, 0)) == ts::got(z.at(0, 2)));
  CHECK_THROWS_AS(ord::select_columns(z, {"nope"}), ord::bounds_error);
}

TEST_CASE("window subsets by index bounds") {
  auto z1 = ts::load_series<date>("z1.csv");
  auto w = ord::window(z1, dt("2004-01-19"), dt("2004-02-07"));
  REQUIRE(w.row_count() == 4);
  CHECK(ord::start_of(w) == dt("2004-01-19"));
  CHECK(ord::end_of(w) == dt("2004-02-07"));

  auto open_start = ord::window(z1, std::nullopt, dt("2004-01-19"));
  CHECK(open_start.row_count() == 3);

  auto replaced = ord::set_window(z1, dt("2004-01-19"), dt("2004-01-25"), ord::cell(0.0));
  CHECK(ts::got(replaced.at(2)) == 0.0);
  CHECK(ts::got(replaced.at(3)) == 0.0);
  CHECK(ts::got(replaced.at(4)) == ts::got(z1.at(4)));
  CHECK_THROWS_AS(
      ord::set_window(z1, dt("2004-01-19"), dt("2004-01-25"), std::vector<ord::cell>{1.0}),
      ord::shape_error);
}

TEST_CASE("head and tail clamp to the row count") {
  auto s = small({1.0, 2.0, 3.0});
  CHECK(ord::head_n(s, 2).row_count() == 2);
  CHECK(ord::tail_n(s, 2).row_count() == 2);
  CHECK(ts::got(ord::tail_n(s, 2).at(0)) == 2.0);
  CHECK(ord::head_n(s, 9).row_count() == 3);
  CHECK(ord::tail_n(s, 0).row_count() == 0);
}

TEST_CASE("set_index keeps the annotation only while the grid still fits") {
  std::vector<ord::real_index> quarterly = {ord::real_index(2000.0), ord::real_index(2000.25),
                                            ord::real_index(2000.5)};
  ord::series<ord::real_index> s("x", quarterly, {1.0, 2.0, 3.0}, 4.0);
  auto shifted = ord::set_index(
      s, {ord::real_index(2001.0), ord::real_index(2001.25), ord::real_index(2001.5)});
  CHECK(shifted.frequency() == std::optional<double>(4.0));
  auto irregular = ord::set_index(
      s, {ord::real_index(2001.0), ord::real_index(2001.3), ord::real_index(2001.5)});
  CHECK_FALSE(irregular.frequency());
  CHECK_THROWS_AS(ord::set_index(s, {ord::real_index(1.0)}), ord::shape_error);
}

TEST_CASE("coredata and set_coredata round trip") {
  auto s = small({1.0, std::nullopt, 3.0});
  auto cells = ord::coredata(s);
  REQUIRE(cells.size() == 3);
  CHECK_FALSE(cells[1]);
  cells[1] = 2.0;
  auto t = ord::set_coredata(s, cells);
  CHECK(ts::got(t.at(1)) == 2.0);
  CHECK_THROWS_AS(ord::set_coredata(s, std::vector<ord::cell>{1.0}), ord::shape_error);
}

TEST_CASE("type-7 quantiles interpolate between order statistics") {
  std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  CHECK(ord::detail::quantile_type7(v, 0.25) == Catch::Approx(1.75));
  CHECK(ord::detail::quantile_type7(v, 0.5) == Catch::Approx(2.5));
  CHECK(ord::detail::quantile_type7(v, 0.75) == Catch::Approx(3.25));
  CHECK(ord::detail::quantile_type7(v, 0.0) == 1.0);
  CHECK(ord::detail::quantile_type7(v, 1.0) == 4.0);
}

TEST_CASE("summarize matches the known single-series statistics") {
  auto z1 = ts::load_series<date>("z1.csv");
  auto sum = ord::summarize(z1);
  REQUIRE(sum.columns.size() == 1);
  REQUIRE(sum.columns[0].stats);
  const auto& st = *sum.columns[0].stats;
  CHECK(ts::near(st.min, -2.07608, 5e-6));
  CHECK(ts::near(st.q1, -0.27251, 5e-6));
  CHECK(ts::near(st.median, 0.12139, 5e-6));
  CHECK(ts::near(st.mean, 0.05364, 5e-6));
  CHECK(ts::near(st.q3, 0.73163, 5e-6));
  CHECK(ts::near(st.max, 1.94079, 5e-6));
  CHECK(sum.columns[0].missing_count == 0);
  CHECK(sum.index.min == dt("2004-01-05").to_numeric());

  auto zna = ts::load_series<date>("z1na.csv");
  auto sum2 = ord::summarize(zna);
  CHECK(sum2.columns[0].missing_count == 3);

  ord::series<ord::int_index> empty;
  CHECK_THROWS_AS(ord::summarize(empty), ord::empty_error);
}
