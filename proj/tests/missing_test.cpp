#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

namespace ord = ordseries;
using ts::dt;
using date = ord::date_index;
using iser = ord::series<ord::int_index>;

namespace {

iser gaps(std::vector<ord::cell> v) {
  std::vector<ord::int_index> idx;
  for (std::size_t i = 0; i < v.size(); ++i) idx.emplace_back(std::int64_t(i + 1));
  return iser("x", std::move(idx), std::move(v));
}

}  // namespace

TEST_CASE("drop_missing row filters") {
  ord::frame<ord::int_index> f(
      {"a", "b"}, {ord::int_index(1), ord::int_index(2), ord::int_index(3)},
      {{1.0, std::nullopt, std::nullopt}, {4.0, 5.0, std::nullopt}});
  CHECK(ord::drop_missing(f).row_count() == 1);
  CHECK(ord::drop_missing(f, ord::drop_rows::with_all_missing).row_count() == 2);

  auto zna = ts::load_series<date>("z1na.csv");
  auto dropped = ord::drop_missing(zna);
  REQUIRE(dropped.row_count() == 7);
  CHECK(dropped.index()[0] == dt("2004-01-05"));
  CHECK(dropped.index()[1] == dt("2004-01-19"));
}

TEST_CASE("longest_complete_run picks the earliest maximal run") {
  auto zna = ts::load_series<date>("z1na.csv");
  auto run = ord::longest_complete_run(zna);
  REQUIRE(run.row_count() == 4);
  CHECK(run.index().front() == dt("2004-01-19"));
  CHECK(run.index().back() == dt("2004-02-07"));

  // Two runs of equal length: the earlier one wins.
  auto tie = ord::longest_complete_run(gaps({1, 2, std::nullopt, 3, 4}));
  REQUIRE(tie.row_count() == 2);
  CHECK(tie.index().front() == ord::int_index(1));

  CHECK(ord::longest_complete_run(gaps({std::nullopt, std::nullopt})).row_count() == 0);
}

TEST_CASE("locf carries the last observation forward") {
  auto zna = ts::load_series<date>("z1na.csv");
  auto filled = ord::fill_locf(zna);
  REQUIRE(filled.row_count() == 10);
  std::vector<double> want = {9, 9, 7, 6, 5, 6, 6, 8, 9, 9};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(ts::got(filled.at(i)) == want[i]);

  // A leading gap has nothing to carry: dropped by default, kept on request.
  auto lead = gaps({std::nullopt, 2.0, std::nullopt});
  auto trimmed = ord::fill_locf(lead);
  REQUIRE(trimmed.row_count() == 2);
  CHECK(trimmed.index().front() == ord::int_index(2));

  ord::fill_policy keep;
  keep.keep_edges = true;
  auto kept = ord::fill_locf(lead, keep);
  REQUIRE(kept.row_count() == 3);
  CHECK_FALSE(kept.at(0));
  CHECK(ts::got(kept.at(2)) == 2.0);
}

TEST_CASE("locf is idempotent") {
  auto zna = ts::load_series<date>("z1na.csv");
  auto once = ord::fill_locf(zna);
  CHECK(ord::fill_locf(once) == once);
}

TEST_CASE("interp along the index abscissa") {
  auto zna = ts::load_series<date>("z1na.csv");
  auto filled = ord::fill_interp(zna);
  REQUIRE(filled.row_count() == 9);  // the trailing gap has no right neighbour
  CHECK(filled.index().back() == dt("2004-02-20"));
  CHECK(ts::near(ts::got(filled.at(1)), 7.714286, 5e-7));
  CHECK(ts::near(ts::got(filled.at(6)), 7.111111, 5e-7));

  ord::fill_policy keep;
  keep.keep_edges = true;
  auto kept = ord::fill_interp(zna, keep);
  REQUIRE(kept.row_count() == 10);
  CHECK_FALSE(kept.at(9));
}

TEST_CASE("interp along ordinal positions") {
  auto zna = ts::load_series<date>("z1na.csv");
  ord::fill_policy pos;
  pos.abscissa = ord::interp_abscissa::positions;
  auto filled = ord::fill_interp(zna, pos);
  REQUIRE(filled.row_count() == 9);
  CHECK(ts::got(filled.at(1)) == 8.0);
  CHECK(ts::got(filled.at(6)) == 7.0);
}

TEST_CASE("interp along a custom abscissa") {
  auto s = gaps({0.0, std::nullopt, 30.0});
  ord::fill_policy custom;
  custom.abscissa = ord::interp_abscissa::custom;
  custom.custom = {0.0, 1.0, 3.0};
  auto filled = ord::fill_interp(s, custom);
  CHECK(ts::got(filled.at(1)) == 10.0);

  custom.custom = {0.0, 1.0};
  CHECK_THROWS_AS(ord::fill_interp(s, custom), ord::shape_error);
  custom.custom = {0.0, 0.0, 3.0};
  CHECK_THROWS_AS(ord::fill_interp(s, custom), ord::order_error);
}

TEST_CASE("interp is exact on linear data") {
  std::vector<ord::cell> v(11);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 3.0 * double(i) + 1.0;
  v[3] = std::nullopt;
  v[4] = std::nullopt;
  v[7] = std::nullopt;
  auto filled = ord::fill_interp(gaps(std::move(v)));
  REQUIRE(filled.row_count() == 11);
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(ts::got(filled.at(i)) == Catch::Approx(3.0 * double(i) + 1.0));
  }
}

TEST_CASE("interp leaves single-known columns alone") {
  auto s = gaps({std::nullopt, 5.0, std::nullopt});
  auto filled = ord::fill_interp(s);
  REQUIRE(filled.row_count() == 1);
  CHECK(ts::got(filled.at(0)) == 5.0);

  ord::fill_policy keep;
  keep.keep_edges = true;
  auto kept = ord::fill_interp(s, keep);
  REQUIRE(kept.row_count() == 3);
  CHECK_FALSE(kept.at(0));
  CHECK_FALSE(kept.at(2));
}

TEST_CASE("frame fills drop rows that still hold a gap in any column") {
  ord::frame<ord::int_index> f(
      {"a", "b"},
      {ord::int_index(1), ord::int_index(2), ord::int_index(3), ord::int_index(4)},
      {{std::nullopt, 1.0, std::nullopt, 3.0}, {std::nullopt, 4.0, 5.0, 6.0}});
  auto filled = ord::fill_interp(f);
  REQUIRE(filled.row_count() == 3);  // row 1 is unfixable in both columns
  CHECK(ts::got(filled.at(1, 0)) == 2.0);
}
