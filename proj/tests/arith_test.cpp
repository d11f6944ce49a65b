#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

namespace ord = ordseries;
using ts::dt;
using date = ord::date_index;
using iser = ord::series<ord::int_index>;

namespace {

iser at(std::vector<std::int64_t> pos, std::vector<ord::cell> v,
        std::optional<double> freq = {}) {
  std::vector<ord::int_index> idx;
  for (auto p : pos) idx.emplace_back(p);
  return iser("x", std::move(idx), std::move(v), freq);
}

}  // namespace

TEST_CASE("cell arithmetic semantics") {
  using ord::apply_bin;
  using ord::bin_op;
  CHECK(ts::got(apply_bin(bin_op::add, 2.0, 3.0)) == 5.0);
  CHECK_FALSE(apply_bin(bin_op::add, std::nullopt, 3.0));
  CHECK_FALSE(apply_bin(bin_op::mul, 2.0, std::nullopt));
  CHECK(ts::got(apply_bin(bin_op::lt, 2.0, 3.0)) == 1.0);
  CHECK(ts::got(apply_bin(bin_op::ge, 2.0, 3.0)) == 0.0);
  CHECK(ts::got(apply_bin(bin_op::div, 1.0, 0.0)) ==
        std::numeric_limits<double>::infinity());
  CHECK(std::isnan(ts::got(apply_bin(bin_op::div, 0.0, 0.0))));
  CHECK(ts::got(apply_bin(bin_op::pow, 2.0, 10.0)) == 1024.0);
}

TEST_CASE("series pairs combine on their index intersection") {
  auto a = at({1, 2, 4}, {10, 20, 40});
  auto b = at({2, 3, 4}, {2, 3, 4});
  auto sum = ord::zip_op(a, b, ord::bin_op::add);
  REQUIRE(sum.row_count() == 2);
  CHECK(sum.index()[0] == ord::int_index(2));
  CHECK(ts::got(sum.at(0)) == 22);
  CHECK(ts::got(sum.at(1)) == 44);

  auto none = ord::zip_op(at({1}, {1}), at({2}, {2}), ord::bin_op::add);
  CHECK(none.row_count() == 0);
}

TEST_CASE("frame against series recycles the series") {
  ord::frame<ord::int_index> f({"p", "q"}, {ord::int_index(1), ord::int_index(2)},
                               {{1.0, 2.0}, {10.0, 20.0}});
  auto s = at({1, 2}, {100, 200});
  auto sum = ord::zip_op(f, s, ord::bin_op::add);
  CHECK(ts::got(sum.at(0, 0)) == 101);
  CHECK(ts::got(sum.at(1, 1)) == 220);
  CHECK(sum.names() == f.names());

  auto flipped = ord::zip_op(s, f, ord::bin_op::sub);
  CHECK(ts::got(flipped.at(0, 0)) == 99);

  ord::frame<ord::int_index> wide({"a", "b", "c"}, {ord::int_index(1)},
                                  {{1.0}, {2.0}, {3.0}});
  ord::frame<ord::int_index> narrow({"a"}, {ord::int_index(1)}, {{1.0}});
  CHECK_THROWS_AS(ord::zip_op(wide, narrow, ord::bin_op::add), ord::shape_error);
}

TEST_CASE("scalar operations keep index and annotation") {
  auto s = at({0, 1, 2}, {1.0, std::nullopt, 3.0}, 1.0);
  auto doubled = ord::zip_op(s, 2.0, ord::bin_op::mul);
  CHECK(doubled.index() == s.index());
  CHECK(doubled.frequency() == std::optional<double>(1.0));
  CHECK(ts::got(doubled.at(0)) == 2.0);
  CHECK_FALSE(doubled.at(1));

  auto from_left = ord::zip_op(10.0, s, ord::bin_op::sub);
  CHECK(ts::got(from_left.at(2)) == 7.0);
}

TEST_CASE("zip keeps a compatible frequency and drops a broken one") {
  auto a = at({0, 1, 2, 3}, {1, 2, 3, 4}, 1.0);
  auto b = at({0, 1, 2, 3}, {1, 2, 3, 4}, 1.0);
  CHECK(ord::zip_op(a, b, ord::bin_op::add).frequency() == std::optional<double>(1.0));

  auto c = at({0, 2, 4}, {1, 2, 3}, 0.5);
  // Intersection {0, 2} lies on the 1-grid, so the larger annotation wins.
  CHECK(ord::zip_op(a, c, ord::bin_op::add).frequency() == std::optional<double>(1.0));
}

TEST_CASE("cumulate carries its state across missing cells") {
  auto s = at({1, 2, 3, 4}, {1.0, std::nullopt, 2.0, 3.0});
  auto c = ord::cumulate(s, ord::cumulate_kind::sum);
  CHECK(ts::got(c.at(0)) == 1.0);
  CHECK_FALSE(c.at(1));
  CHECK(ts::got(c.at(2)) == 3.0);
  CHECK(ts::got(c.at(3)) == 6.0);

  auto p = ord::cumulate(at({1, 2, 3}, {2.0, 3.0, 4.0}), ord::cumulate_kind::prod);
  CHECK(ts::got(p.at(2)) == 24.0);
  auto mn = ord::cumulate(at({1, 2, 3}, {3.0, 1.0, 2.0}), ord::cumulate_kind::min);
  CHECK(ts::got(mn.at(2)) == 1.0);
  auto mx = ord::cumulate(at({1, 2, 3}, {3.0, 1.0, 5.0}), ord::cumulate_kind::max);
  CHECK(ts::got(mx.at(2)) == 5.0);
}

TEST_CASE("transpose_to_table flips series into rows") {
  auto z = ts::load_frame<date>("Z.csv");
  auto t = ord::transpose_to_table(z);
  REQUIRE(t.row_labels == std::vector<std::string>{"Aa", "Bb", "Cc"});
  REQUIRE(t.col_labels.size() == 10);
  CHECK(t.col_labels.front() == "2004-02-02");
  CHECK(ts::got(t.rows[2][9]) == ts::got(z.at(9, 2)));
}

TEST_CASE("lag_by shifts against the index") {
  auto s = at({1, 2, 3, 4}, {10, 20, 30, 40});

  auto fwd = ord::lag_by(s, 1);
  REQUIRE(fwd.row_count() == 3);
  CHECK(fwd.index()[0] == ord::int_index(1));
  CHECK(ts::got(fwd.at(0)) == 20);
  CHECK(ts::got(fwd.at(2)) == 40);

  auto back = ord::lag_by(s, -1);
  REQUIRE(back.row_count() == 3);
  CHECK(back.index()[0] == ord::int_index(2));
  CHECK(ts::got(back.at(0)) == 10);

  auto padded = ord::lag_by(s, 1, true);
  REQUIRE(padded.row_count() == 4);
  CHECK(ts::got(padded.at(0)) == 20);
  CHECK_FALSE(padded.at(3));

  CHECK(ord::lag_by(s, 4).row_count() == 0);
  CHECK(ord::lag_by(s, -17).row_count() == 0);
  CHECK(ord::lag_by(s, 0) == s);

  auto annotated = at({1, 2, 3}, {1, 2, 3}, 1.0);
  CHECK(ord::lag_by(annotated, 1).frequency() == std::optional<double>(1.0));
}

TEST_CASE("diff_by differences, ratios, and iteration") {
  auto s = at({1, 2, 3, 4}, {1.0, 3.0, 6.0, 10.0});
  auto d1 = ord::diff_by(s);
  REQUIRE(d1.row_count() == 3);
  CHECK(d1.index()[0] == ord::int_index(2));
  CHECK(ts::got(d1.at(0)) == 2.0);
  CHECK(ts::got(d1.at(2)) == 4.0);

  auto d2 = ord::diff_by(s, 1, 2);
  REQUIRE(d2.row_count() == 2);
  CHECK(ts::got(d2.at(0)) == 1.0);
  CHECK(ts::got(d2.at(1)) == 1.0);

  auto lag2 = ord::diff_by(s, 2);
  REQUIRE(lag2.row_count() == 2);
  CHECK(ts::got(lag2.at(0)) == 5.0);

  auto geo = ord::diff_by(at({1, 2, 3}, {2.0, 4.0, 12.0}), 1, 1, false);
  CHECK(ts::got(geo.at(0)) == 2.0);
  CHECK(ts::got(geo.at(1)) == 3.0);

  auto gappy = ord::diff_by(at({1, 2, 3}, {1.0, std::nullopt, 3.0}));
  CHECK_FALSE(gappy.at(0));
  CHECK_FALSE(gappy.at(1));

  CHECK_THROWS_AS(ord::diff_by(s, 0), ord::domain_error);
  CHECK_THROWS_AS(ord::diff_by(s, 1, 0), ord::domain_error);
}
