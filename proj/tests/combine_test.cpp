#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

namespace ord = ordseries;
using ts::dt;
using date = ord::date_index;
using iser = ord::series<ord::int_index>;

namespace {

iser at(std::vector<std::int64_t> pos, std::vector<ord::cell> v, std::string name = "x",
        std::optional<double> freq = {}) {
  std::vector<ord::int_index> idx;
  for (auto p : pos) idx.emplace_back(p);
  return iser(std::move(name), std::move(idx), std::move(v), freq);
}

}  // namespace

TEST_CASE("merge modes pick the expected index") {
  auto a = at({1, 2, 4}, {10, 20, 40}, "a");
  auto b = at({2, 3, 4}, {200, 300, 400}, "b");

  auto u = ord::merge_aligned(a, b);
  REQUIRE(u.row_count() == 4);
  CHECK(u.names() == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(u.at(0, 1));
  CHECK(ts::got(u.at(1, 0)) == 20);
  CHECK(ts::got(u.at(1, 1)) == 200);
  CHECK_FALSE(u.at(2, 0));

  ord::merge_spec inter{ord::merge_mode::intersection, {}};
  auto i = ord::merge_aligned(a, b, inter);
  REQUIRE(i.row_count() == 2);
  CHECK(i.index()[0] == ord::int_index(2));
  CHECK(i.index()[1] == ord::int_index(4));

  ord::merge_spec left{ord::merge_mode::left, {}};
  auto l = ord::merge_aligned(a, b, left);
  CHECK(l.index() == a.index());
  CHECK_FALSE(l.at(0, 1));

  ord::merge_spec right{ord::merge_mode::right, {}};
  auto r = ord::merge_aligned(a, b, right);
  CHECK(r.index() == b.index());
}

TEST_CASE("merge fill value replaces alignment gaps only") {
  auto a = at({1, 2}, {std::nullopt, 20}, "a");
  auto b = at({2, 3}, {200, 300}, "b");
  ord::merge_spec spec;
  spec.fill = 0.0;
  auto u = ord::merge_aligned(a, b, spec);
  // A truly missing observation survives; only absent rows take the fill.
  CHECK_FALSE(u.at(0, 0));
  CHECK(ts::got(u.at(0, 1)) == 0.0);
  CHECK(ts::got(u.at(2, 0)) == 0.0);
}

TEST_CASE("merge renames colliding columns positionally") {
  auto a = at({1}, {1}, "z1");
  auto b = at({1}, {2}, "z1");
  auto c = at({1}, {3}, "other");
  auto m = ord::merge_aligned<ord::int_index>({a, b, c});
  CHECK(m.names() == std::vector<std::string>{"z1_1", "z1_2", "other"});

  // A pre-existing name that looks like a suffix must not be stolen.
  auto d = at({1}, {4}, "z1_1");
  auto m2 = ord::merge_aligned<ord::int_index>({d, a, b});
  CHECK(m2.names()[0] == "z1_1");
  CHECK(m2.names()[1] != m2.names()[0]);
  CHECK(m2.names()[2] != m2.names()[1]);
}

TEST_CASE("scalar and bare-vector merge parts") {
  auto a = at({1, 2, 3}, {10, 20, 30}, "a");
  std::vector<ord::merge_part<ord::int_index>> parts = {
      ord::merge_part<ord::int_index>(a), ord::merge_part<ord::int_index>(3.14),
      ord::merge_part<ord::int_index>(std::vector<ord::cell>{7, 8, 9})};
  auto m = ord::merge_aligned(parts);
  CHECK(m.names() == std::vector<std::string>{"a", "const", "data"});
  for (std::size_t r = 0; r < 3; ++r) CHECK(ts::got(m.at(r, 1)) == 3.14);
  CHECK(ts::got(m.at(2, 2)) == 9);

  std::vector<ord::merge_part<ord::int_index>> short_vec = {
      ord::merge_part<ord::int_index>(a),
      ord::merge_part<ord::int_index>(std::vector<ord::cell>{1, 2})};
  CHECK_THROWS_AS(ord::merge_aligned(short_vec), ord::shape_error);

  std::vector<ord::merge_part<ord::int_index>> no_indexed = {
      ord::merge_part<ord::int_index>(1.0)};
  CHECK_THROWS_AS(ord::merge_aligned(no_indexed), ord::domain_error);
}

TEST_CASE("merge frequency: largest annotation when the others divide it") {
  auto semi = at({0, 2, 4}, {1, 2, 3}, "s", 0.5);
  auto yearly = at({0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}, "y", 1.0);
  auto m = ord::merge_aligned(semi, yearly);
  CHECK(m.frequency() == std::optional<double>(1.0));

  // 2 does not divide 3: annotation is dropped.
  auto third = at({0, 3, 6}, {1, 2, 3}, "t", 1.0 / 3.0);
  auto half = at({0, 2, 4}, {1, 2, 3}, "h", 0.5);
  CHECK_FALSE(ord::merge_aligned(third, half).frequency());

  // Unannotated input leaves the one annotation in charge.
  auto plain = at({0, 1}, {1, 2}, "p");
  CHECK(ord::merge_aligned(yearly, plain).frequency() == std::optional<double>(1.0));
}

TEST_CASE("concat_rows interleaves by index and rejects overlap") {
  auto a = at({1, 5}, {10, 50}, "x");
  auto b = at({3}, {30}, "x");
  auto c = ord::concat_rows(a, b);
  REQUIRE(c.row_count() == 3);
  CHECK(c.index()[1] == ord::int_index(3));
  CHECK(ts::got(c.at(1)) == 30);

  CHECK_THROWS_AS(ord::concat_rows(a, at({1, 9}, {1, 9}, "x")), ord::overlap_error);
  CHECK_THROWS_AS(ord::concat_rows(a, at({3}, {30}, "y")), ord::shape_error);

  ord::frame<ord::int_index> fa({"p", "q"}, {ord::int_index(1)}, {{1.0}, {2.0}});
  ord::frame<ord::int_index> fb({"p", "q"}, {ord::int_index(2)}, {{3.0}, {4.0}});
  auto fc = ord::concat_rows(fa, fb);
  CHECK(fc.row_count() == 2);
  CHECK(ts::got(fc.at(1, 1)) == 4.0);
}

TEST_CASE("aggregate_by groups in ascending label order") {
  auto s = at({1, 2, 3, 4}, {1.0, 2.0, 3.0, 4.0}, "x");
  std::vector<ord::int_index> labels = {ord::int_index(9), ord::int_index(3), ord::int_index(9),
                                        ord::int_index(3)};
  auto g = ord::aggregate_by(s, labels, ord::builtin_stat(ord::stat_kind::mean));
  REQUIRE(g.row_count() == 2);
  CHECK(g.index()[0] == ord::int_index(3));
  CHECK(ts::got(g.at(0)) == 3.0);  // rows 2 and 4
  CHECK(ts::got(g.at(1)) == 2.0);  // rows 1 and 3
  CHECK_FALSE(g.frequency());

  CHECK_THROWS_AS(
      ord::aggregate_by(s, std::vector<ord::int_index>{ord::int_index(1)},
                        ord::builtin_stat(ord::stat_kind::mean)),
      ord::shape_error);
}

TEST_CASE("aggregate_by can relabel into another index kind") {
  auto z1 = ts::load_series<date>("z1.csv");
  auto monthly = ord::aggregate_by(
      z1, [](const date& d) { return ord::yearmonth_of(d); },
      ord::builtin_stat(ord::stat_kind::count));
  REQUIRE(monthly.row_count() == 2);
  CHECK(monthly.index()[0] == ord::year_month::from_parts(2004, 1));
  CHECK(ts::got(monthly.at(0)) == 5.0);
  CHECK(ts::got(monthly.at(1)) == 5.0);
}

TEST_CASE("builtin statistics and their missing policies") {
  using sk = ord::stat_kind;
  std::vector<ord::cell> with_gap = {1.0, std::nullopt, 3.0};
  std::vector<ord::cell> all_gone = {std::nullopt, std::nullopt};

  CHECK(ts::got(ord::builtin_stat(sk::mean)(with_gap)) == 2.0);
  CHECK_FALSE(ord::builtin_stat(sk::mean, false)(with_gap));
  CHECK_FALSE(ord::builtin_stat(sk::mean)(all_gone));

  CHECK(ts::got(ord::builtin_stat(sk::sum)(with_gap)) == 4.0);
  CHECK(ts::got(ord::builtin_stat(sk::first)(with_gap)) == 1.0);
  CHECK(ts::got(ord::builtin_stat(sk::last)(with_gap)) == 3.0);
  CHECK(ts::got(ord::builtin_stat(sk::min)(with_gap)) == 1.0);
  CHECK(ts::got(ord::builtin_stat(sk::max)(with_gap)) == 3.0);

  CHECK(ts::got(ord::builtin_stat(sk::count)(with_gap)) == 2.0);
  CHECK(ts::got(ord::builtin_stat(sk::count, false)(with_gap)) == 3.0);
  CHECK(ts::got(ord::builtin_stat(sk::count)(all_gone)) == 0.0);

  std::vector<ord::cell> pair = {1.0, 3.0};
  CHECK(ts::got(ord::builtin_stat(sk::sd)(pair)) == Catch::Approx(std::sqrt(2.0)));
  CHECK_FALSE(ord::builtin_stat(sk::sd)(std::vector<ord::cell>{1.0}));

  CHECK(ord::stat_from_name("sd") == sk::sd);
  CHECK_FALSE(ord::stat_from_name("bogus"));
}
