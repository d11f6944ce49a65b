#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "index.hpp"

namespace ordseries {

// One observation cell. Absent means missing; present values may be any
// double, including infinities produced by arithmetic.
using cell = std::optional<double>;

namespace detail {

inline bool offsets_on_grid(const std::vector<double>& proj, double frequency) {
  if (proj.empty()) return true;
  for (double p : proj) {
    if (!nearly_integer((p - proj.front()) * frequency)) return false;
  }
  return true;
}

// Shared storage of series and frames: a strictly increasing index, one cell
// column per name, and an optional frequency annotation.
template <IndexKind K>
struct table {
  std::vector<K> index;
  std::vector<std::string> names;
  std::vector<std::vector<cell>> columns;
  std::optional<double> frequency;

  bool operator==(const table&) const = default;

  // Every construction path funnels through here, so a malformed table can
  // never escape into caller hands.
  void validate() const {
    if (names.size() != columns.size()) {
      throw shape_error("column name count differs from column count");
    }
    for (const auto& c : columns) {
      if (c.size() != index.size()) {
        throw shape_error("column length differs from index length");
      }
    }
    for (const auto& n : names) {
      if (n.empty()) throw shape_error("column names must be non-empty");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        if (names[i] == names[j]) throw shape_error("duplicate column name: " + names[i]);
      }
    }
    for (std::size_t i = 1; i < index.size(); ++i) {
      if (index[i - 1] == index[i]) {
        throw duplicate_index_error("duplicate index value " + index[i].to_text());
      }
      if (!(index[i - 1] < index[i])) {
        throw order_error("index not increasing at " + index[i].to_text());
      }
    }
    if (frequency && !(*frequency > 0.0)) {
      throw domain_error("frequency must be positive");
    }
    if (frequency) {
      if constexpr (ProjectableIndex<K>) {
        std::vector<double> proj;
        proj.reserve(index.size());
        for (const K& v : index) proj.push_back(v.to_numeric());
        if (!offsets_on_grid(proj, *frequency)) {
          throw frequency_mismatch_error("index does not lie on the annotated frequency grid");
        }
      }
    }
  }
};

}  // namespace detail

template <IndexKind K>
class frame;

// Single named column of cells over a strictly increasing index. Immutable:
// every operation returns a new value.
template <IndexKind K>
class series {
 public:
  using index_type = K;

  series() : series("x", {}, {}, {}) {}

  series(std::string name, std::vector<K> index, std::vector<cell> values,
         std::optional<double> frequency = {}) {
    t_.index = std::move(index);
    t_.names = {std::move(name)};
    t_.columns = {std::move(values)};
    t_.frequency = frequency;
    t_.validate();
  }

  static series with(const series& like, std::vector<K> index,
                     std::vector<std::vector<cell>> columns, std::optional<double> frequency) {
    if (columns.size() != 1) throw shape_error("a series holds exactly one column");
    return series(like.name(), std::move(index), std::move(columns.front()), frequency);
  }

  const std::string& name() const { return t_.names.front(); }
  std::size_t row_count() const { return t_.index.size(); }
  std::size_t column_count() const { return 1; }
  const std::vector<K>& index() const { return t_.index; }
  std::optional<double> frequency() const { return t_.frequency; }

  std::span<const cell> column(std::size_t i) const {
    if (i != 0) throw bounds_error("series column position out of range");
    return t_.columns.front();
  }
  std::string_view column_name(std::size_t i) const {
    if (i != 0) throw bounds_error("series column position out of range");
    return t_.names.front();
  }

  std::span<const cell> cells() const { return t_.columns.front(); }
  cell at(std::size_t row) const {
    if (row >= row_count()) throw bounds_error("row position out of range");
    return t_.columns.front()[row];
  }

  bool operator==(const series&) const = default;

 private:
  friend class frame<K>;
  detail::table<K> t_;
};

// Several named columns sharing one index.
template <IndexKind K>
class frame {
 public:
  using index_type = K;

  frame() = default;

  frame(std::vector<std::string> names, std::vector<K> index,
        std::vector<std::vector<cell>> columns, std::optional<double> frequency = {}) {
    t_.index = std::move(index);
    t_.names = std::move(names);
    t_.columns = std::move(columns);
    t_.frequency = frequency;
    t_.validate();
  }

  static frame with(const frame& like, std::vector<K> index,
                    std::vector<std::vector<cell>> columns, std::optional<double> frequency) {
    if (columns.size() != like.column_count()) {
      throw shape_error("column count differs from the source frame");
    }
    return frame(like.names(), std::move(index), std::move(columns), frequency);
  }

  std::size_t row_count() const { return t_.index.size(); }
  std::size_t column_count() const { return t_.columns.size(); }
  const std::vector<K>& index() const { return t_.index; }
  const std::vector<std::string>& names() const { return t_.names; }
  std::optional<double> frequency() const { return t_.frequency; }

  std::span<const cell> column(std::size_t i) const {
    if (i >= t_.columns.size()) throw bounds_error("column position out of range");
    return t_.columns[i];
  }
  std::string_view column_name(std::size_t i) const {
    if (i >= t_.names.size()) throw bounds_error("column position out of range");
    return t_.names[i];
  }

  cell at(std::size_t row, std::size_t col) const {
    if (row >= row_count()) throw bounds_error("row position out of range");
    return column(col)[row];
  }

  series<K> column_series(std::size_t i) const {
    return series<K>(t_.names.at(i), t_.index,
                     std::vector<cell>(column(i).begin(), column(i).end()), t_.frequency);
  }

  bool operator==(const frame&) const = default;

 private:
  detail::table<K> t_;
};

template <typename S>
using index_t = typename std::remove_cvref_t<S>::index_type;

// Read plus rebuild interface shared by series and frame; the generic
// algorithms below are written against it.
template <typename S>
concept SeriesLike = IndexKind<index_t<S>> &&
    requires(const S& s, std::size_t i, std::vector<index_t<S>> idx,
             std::vector<std::vector<cell>> cols, std::optional<double> f) {
      { s.row_count() } -> std::convertible_to<std::size_t>;
      { s.column_count() } -> std::convertible_to<std::size_t>;
      { s.index() } -> std::convertible_to<const std::vector<index_t<S>>&>;
      { s.column(i) } -> std::convertible_to<std::span<const cell>>;
      { s.column_name(i) } -> std::convertible_to<std::string_view>;
      { s.frequency() } -> std::convertible_to<std::optional<double>>;
      { std::remove_cvref_t<S>::with(s, std::move(idx), std::move(cols), f) }
          -> std::same_as<std::remove_cvref_t<S>>;
    };

namespace detail {

// Rebuild from a subset of row positions (0-based, strictly increasing).
// Row subsets keep the frequency annotation: thinning a grid never moves
// points off it.
template <SeriesLike S>
S take_rows(const S& s, std::span<const std::size_t> rows) {
  std::vector<index_t<S>> idx;
  idx.reserve(rows.size());
  for (std::size_t r : rows) idx.push_back(s.index()[r]);
  std::vector<std::vector<cell>> cols(s.column_count());
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    auto src = s.column(c);
    cols[c].reserve(rows.size());
    for (std::size_t r : rows) cols[c].push_back(src[r]);
  }
  return S::with(s, std::move(idx), std::move(cols), s.frequency());
}

template <SeriesLike S>
std::vector<std::vector<cell>> copy_columns(const S& s) {
  std::vector<std::vector<cell>> cols(s.column_count());
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    auto src = s.column(c);
    cols[c].assign(src.begin(), src.end());
  }
  return cols;
}

template <IndexKind K>
struct dedup_result {
  std::vector<K> index;
  std::vector<std::vector<std::size_t>> groups;  // source rows per kept index
};

// Sort row positions by index (stable, so ties keep input order) and group
// equal keys.
template <IndexKind K>
dedup_result<K> sort_and_group(const std::vector<K>& index) {
  std::vector<std::size_t> order(index.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return index[a] < index[b]; });
  dedup_result<K> out;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && index[order[i]] == index[order[j]]) ++j;
    out.index.push_back(index[order[i]]);
    out.groups.emplace_back(order.begin() + i, order.begin() + j);
    i = j;
  }
  return out;
}

inline cell mean_of_group(const std::vector<cell>& cells) {
  double sum = 0.0;
  for (const cell& c : cells) {
    if (!c) return std::nullopt;
    sum += *c;
  }
  return cells.empty() ? cell{} : cell{sum / double(cells.size())};
}

}  // namespace detail

// Policy for observations arriving with equal index values.
enum class on_duplicate { error, keep_first, mean };

template <IndexKind K>
series<K> make_series(std::string name, std::vector<K> index, std::vector<cell> values,
                      on_duplicate dup = on_duplicate::error) {
  if (index.size() != values.size()) {
    throw shape_error("index and value lengths differ");
  }
  auto grouped = detail::sort_and_group(index);
  std::vector<cell> out;
  out.reserve(grouped.index.size());
  for (std::size_t g = 0; g < grouped.groups.size(); ++g) {
    const auto& rows = grouped.groups[g];
    if (rows.size() > 1 && dup == on_duplicate::error) {
      throw duplicate_index_error("duplicate index value " + grouped.index[g].to_text());
    }
    if (rows.size() == 1 || dup == on_duplicate::keep_first) {
      out.push_back(values[rows.front()]);
    } else {
      std::vector<cell> group;
      group.reserve(rows.size());
      for (std::size_t r : rows) group.push_back(values[r]);
      out.push_back(detail::mean_of_group(group));
    }
  }
  return series<K>(std::move(name), std::move(grouped.index), std::move(out));
}

template <IndexKind K>
series<K> make_series(std::string name, std::vector<std::pair<K, cell>> observations,
                      on_duplicate dup = on_duplicate::error) {
  std::vector<K> idx;
  std::vector<cell> vals;
  idx.reserve(observations.size());
  vals.reserve(observations.size());
  for (auto& [k, v] : observations) {
    idx.push_back(k);
    vals.push_back(v);
  }
  return make_series(std::move(name), std::move(idx), std::move(vals), dup);
}

template <IndexKind K>
frame<K> make_frame(std::vector<std::string> names, std::vector<K> index,
                    std::vector<std::vector<cell>> columns,
                    on_duplicate dup = on_duplicate::error) {
  if (names.empty()) throw shape_error("a frame needs at least one column");
  if (columns.size() != names.size()) {
    throw shape_error("column count differs from name count");
  }
  for (const auto& c : columns) {
    if (c.size() != index.size()) throw shape_error("column length differs from index length");
  }
  auto grouped = detail::sort_and_group(index);
  std::vector<std::vector<cell>> out(columns.size());
  for (auto& c : out) c.reserve(grouped.index.size());
  for (std::size_t g = 0; g < grouped.groups.size(); ++g) {
    const auto& rows = grouped.groups[g];
    if (rows.size() > 1 && dup == on_duplicate::error) {
      throw duplicate_index_error("duplicate index value " + grouped.index[g].to_text());
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (rows.size() == 1 || dup == on_duplicate::keep_first) {
        out[c].push_back(columns[c][rows.front()]);
      } else {
        std::vector<cell> group;
        group.reserve(rows.size());
        for (std::size_t r : rows) group.push_back(columns[c][r]);
        out[c].push_back(detail::mean_of_group(group));
      }
    }
  }
  return frame<K>(std::move(names), std::move(grouped.index), std::move(out));
}

// Row subset by 1-based positions; any order, duplicates collapse.
template <SeriesLike S>
S take_positions(const S& s, std::vector<std::size_t> rows) {
  for (std::size_t& r : rows) {
    if (r < 1 || r > s.row_count()) {
      throw bounds_error("row position " + std::to_string(r) + " out of range");
    }
    --r;
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return detail::take_rows(s, rows);
}

// Row and column subset; column positions are 1-based in the requested order.
template <IndexKind K>
frame<K> take_positions(const frame<K>& f, std::vector<std::size_t> rows,
                        std::vector<std::size_t> cols) {
  std::vector<std::string> names;
  std::vector<std::vector<cell>> columns;
  for (std::size_t c : cols) {
    if (c < 1 || c > f.column_count()) {
      throw bounds_error("column position " + std::to_string(c) + " out of range");
    }
    names.emplace_back(f.column_name(c - 1));
    auto src = f.column(c - 1);
    columns.emplace_back(src.begin(), src.end());
  }
  frame<K> selected(std::move(names), f.index(), std::move(columns), f.frequency());
  return take_positions(selected, std::move(rows));
}

template <IndexKind K>
frame<K> select_columns(const frame<K>& f, const std::vector<std::string>& names) {
  std::vector<std::size_t> cols;
  cols.reserve(names.size());
  for (const auto& n : names) {
    bool found = false;
    for (std::size_t c = 0; c < f.column_count(); ++c) {
      if (f.column_name(c) == n) {
        cols.push_back(c + 1);
        found = true;
        break;
      }
    }
    if (!found) throw bounds_error("no column named " + n);
  }
  std::vector<std::size_t> all_rows(f.row_count());
  std::iota(all_rows.begin(), all_rows.end(), 1);
  return take_positions(f, std::move(all_rows), std::move(cols));
}

// Rows whose index value appears in `at`; values absent from the index are
// ignored.
template <SeriesLike S>
S take_index(const S& s, std::vector<index_t<S>> at) {
  std::sort(at.begin(), at.end());
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s.row_count(); ++i) {
    if (std::binary_search(at.begin(), at.end(), s.index()[i])) rows.push_back(i);
  }
  return detail::take_rows(s, rows);
}

template <IndexKind K>
std::vector<cell> coredata(const series<K>& s) {
  return std::vector<cell>(s.cells().begin(), s.cells().end());
}

template <IndexKind K>
std::vector<std::vector<cell>> coredata(const frame<K>& f) {
  return detail::copy_columns(f);
}

template <IndexKind K>
series<K> set_coredata(const series<K>& s, std::vector<cell> values) {
  if (values.size() != s.row_count()) throw shape_error("replacement length differs from rows");
  return series<K>(s.name(), s.index(), std::move(values), s.frequency());
}

template <IndexKind K>
frame<K> set_coredata(const frame<K>& f, std::vector<std::vector<cell>> columns) {
  if (columns.size() != f.column_count()) {
    throw shape_error("replacement column count differs");
  }
  for (const auto& c : columns) {
    if (c.size() != f.row_count()) throw shape_error("replacement length differs from rows");
  }
  return frame<K>(f.names(), f.index(), std::move(columns), f.frequency());
}

template <SeriesLike S>
const std::vector<index_t<S>>& index_of(const S& s) {
  return s.index();
}

template <SeriesLike S>
const std::vector<index_t<S>>& time_of(const S& s) {
  return s.index();
}

// Replace the index wholesale. The annotation survives only when the new
// index still lies on the annotated grid.
template <SeriesLike S>
S set_index(const S& s, std::vector<index_t<S>> index) {
  if (index.size() != s.row_count()) {
    throw shape_error("replacement index length differs from rows");
  }
  for (std::size_t i = 1; i < index.size(); ++i) {
    if (!(index[i - 1] < index[i])) {
      throw order_error("replacement index must be strictly increasing");
    }
  }
  std::optional<double> freq = s.frequency();
  if (freq) {
    if constexpr (ProjectableIndex<index_t<S>>) {
      std::vector<double> proj;
      proj.reserve(index.size());
      for (const auto& v : index) proj.push_back(v.to_numeric());
      if (!detail::offsets_on_grid(proj, *freq)) freq.reset();
    } else {
      freq.reset();
    }
  }
  return S::with(s, std::move(index), detail::copy_columns(s), freq);
}

template <SeriesLike S>
S set_time(const S& s, std::vector<index_t<S>> index) {
  return set_index(s, std::move(index));
}

template <SeriesLike S>
index_t<S> start_of(const S& s) {
  if (s.row_count() == 0) throw empty_error("start of an empty series");
  return s.index().front();
}

template <SeriesLike S>
index_t<S> end_of(const S& s) {
  if (s.row_count() == 0) throw empty_error("end of an empty series");
  return s.index().back();
}

namespace detail {

template <SeriesLike S>
std::vector<std::size_t> window_rows(const S& s, const std::optional<index_t<S>>& start,
                                     const std::optional<index_t<S>>& end) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s.row_count(); ++i) {
    const auto& v = s.index()[i];
    if (start && v < *start) continue;
    if (end && *end < v) continue;
    rows.push_back(i);
  }
  return rows;
}

}  // namespace detail

// Contiguous sub-series between optional index bounds (inclusive).
template <SeriesLike S>
S window(const S& s, std::optional<index_t<S>> start, std::optional<index_t<S>> end = {}) {
  return detail::take_rows(s, detail::window_rows(s, start, end));
}

template <IndexKind K>
series<K> set_window(const series<K>& s, std::optional<std::type_identity_t<K>> start,
                     std::optional<std::type_identity_t<K>> end,
                     const std::vector<cell>& replacement) {
  auto rows = detail::window_rows(s, start, end);
  if (replacement.size() != rows.size()) {
    throw shape_error("replacement length differs from the window");
  }
  std::vector<cell> values = coredata(s);
  for (std::size_t i = 0; i < rows.size(); ++i) values[rows[i]] = replacement[i];
  return set_coredata(s, std::move(values));
}

template <IndexKind K>
series<K> set_window(const series<K>& s, std::optional<std::type_identity_t<K>> start,
                     std::optional<std::type_identity_t<K>> end, cell fill_value) {
  auto rows = detail::window_rows(s, start, end);
  return set_window(s, start, end, std::vector<cell>(rows.size(), fill_value));
}

template <IndexKind K>
frame<K> set_window(const frame<K>& f, std::optional<std::type_identity_t<K>> start,
                    std::optional<std::type_identity_t<K>> end,
                    const std::vector<std::vector<cell>>& replacement) {
  auto rows = detail::window_rows(f, start, end);
  if (replacement.size() != f.column_count()) {
    throw shape_error("replacement column count differs");
  }
  auto columns = coredata(f);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (replacement[c].size() != rows.size()) {
      throw shape_error("replacement length differs from the window");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) columns[c][rows[i]] = replacement[c][i];
  }
  return set_coredata(f, std::move(columns));
}

template <SeriesLike S>
S head_n(const S& s, std::size_t n) {
  std::vector<std::size_t> rows(std::min(n, s.row_count()));
  std::iota(rows.begin(), rows.end(), 0);
  return detail::take_rows(s, rows);
}

template <SeriesLike S>
S tail_n(const S& s, std::size_t n) {
  std::size_t keep = std::min(n, s.row_count());
  std::vector<std::size_t> rows(keep);
  std::iota(rows.begin(), rows.end(), s.row_count() - keep);
  return detail::take_rows(s, rows);
}

// Five-number summary plus mean, computed over present cells with type-7
// quantiles: h = (n - 1) p, linear between order statistics.
struct summary_stats {
  double min, q1, median, mean, q3, max;
};

struct column_summary {
  std::string name;
  std::size_t missing_count;
  std::optional<summary_stats> stats;  // absent when no cell is present
};

struct table_summary {
  summary_stats index;
  std::vector<column_summary> columns;
};

namespace detail {

inline double quantile_type7(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted.front();
  double h = double(n - 1) * p;
  std::size_t lo = std::size_t(std::floor(h));
  if (lo + 1 >= n) return sorted.back();
  double frac = h - double(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline summary_stats stats_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return summary_stats{values.front(),
                       quantile_type7(values, 0.25),
                       quantile_type7(values, 0.5),
                       sum / double(values.size()),
                       quantile_type7(values, 0.75),
                       values.back()};
}

}  // namespace detail

template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
table_summary summarize(const S& s) {
  if (s.row_count() == 0) throw empty_error("summary of an empty series");
  std::vector<double> proj;
  proj.reserve(s.row_count());
  for (const auto& v : s.index()) proj.push_back(v.to_numeric());
  table_summary out{detail::stats_of(std::move(proj)), {}};
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    std::vector<double> present;
    std::size_t missing = 0;
    for (const cell& x : s.column(c)) {
      if (x) {
        present.push_back(*x);
      } else {
        ++missing;
      }
    }
    column_summary cs{std::string(s.column_name(c)), missing, std::nullopt};
    if (!present.empty()) cs.stats = detail::stats_of(std::move(present));
    out.columns.push_back(std::move(cs));
  }
  return out;
}

}  // namespace ordseries
