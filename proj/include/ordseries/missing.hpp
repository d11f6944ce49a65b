#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

// Row filter for drop_missing: drop a row when any cell is absent, or only
// when the whole row is absent.
enum class drop_rows { with_any_missing, with_all_missing };

namespace detail {

template <SeriesLike S>
std::vector<bool> row_complete(const S& s) {
  std::vector<bool> complete(s.row_count(), true);
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    auto col = s.column(c);
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (!col[r]) complete[r] = false;
    }
  }
  return complete;
}

template <SeriesLike S>
std::vector<bool> row_all_missing(const S& s) {
  std::vector<bool> empty_row(s.row_count(), true);
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    auto col = s.column(c);
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (col[r]) empty_row[r] = false;
    }
  }
  return empty_row;
}

template <SeriesLike S>
S keep_rows_where(const S& s, const std::vector<bool>& keep) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < keep.size(); ++r) {
    if (keep[r]) rows.push_back(r);
  }
  return take_rows(s, rows);
}

}  // namespace detail

template <SeriesLike S>
S drop_missing(const S& s, drop_rows how = drop_rows::with_any_missing) {
  if (how == drop_rows::with_any_missing) {
    return detail::keep_rows_where(s, detail::row_complete(s));
  }
  auto all_missing = detail::row_all_missing(s);
  std::vector<bool> keep(all_missing.size());
  for (std::size_t r = 0; r < keep.size(); ++r) keep[r] = !all_missing[r];
  return detail::keep_rows_where(s, keep);
}

// Earliest maximal run of consecutive complete rows.
template <SeriesLike S>
S longest_complete_run(const S& s) {
  auto complete = detail::row_complete(s);
  std::size_t best_start = 0, best_len = 0, run_start = 0, run_len = 0;
  for (std::size_t r = 0; r < complete.size(); ++r) {
    if (complete[r]) {
      if (run_len == 0) run_start = r;
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        best_start = run_start;
      }
    } else {
      run_len = 0;
    }
  }
  std::vector<std::size_t> rows(best_len);
  std::iota(rows.begin(), rows.end(), best_start);
  return detail::take_rows(s, rows);
}

// Which positions interpolation measures distance along.
enum class interp_abscissa { index, positions, custom };

struct fill_policy {
  bool keep_edges = false;
  interp_abscissa abscissa = interp_abscissa::index;
  std::vector<double> custom;  // one strictly increasing value per row
};

namespace detail {

// Per column: cells the pass could not fill stay missing; without keep_edges
// any row still holding a missing cell is dropped afterwards.
template <SeriesLike S, typename FillColumn>
S fill_with(const S& s, bool keep_edges, FillColumn fill_column) {
  std::vector<std::vector<cell>> cols = copy_columns(s);
  for (auto& col : cols) fill_column(col);
  S filled = S::with(s, s.index(), std::move(cols), s.frequency());
  if (keep_edges) return filled;
  return drop_missing(filled, drop_rows::with_any_missing);
}

template <SeriesLike S>
std::vector<double> interp_positions(const S& s, const fill_policy& policy) {
  switch (policy.abscissa) {
    case interp_abscissa::index: {
      if constexpr (ProjectableIndex<index_t<S>>) {
        std::vector<double> p;
        p.reserve(s.row_count());
        for (const auto& v : s.index()) p.push_back(v.to_numeric());
        return p;
      } else {
        throw capability_error("index kind has no numeric projection");
      }
    }
    case interp_abscissa::positions: {
      std::vector<double> p(s.row_count());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = double(i + 1);
      return p;
    }
    case interp_abscissa::custom:
      break;
  }
  if (policy.custom.size() != s.row_count()) {
    throw shape_error("abscissa length differs from rows");
  }
  for (std::size_t i = 1; i < policy.custom.size(); ++i) {
    if (!(policy.custom[i - 1] < policy.custom[i])) {
      throw order_error("abscissa must be strictly increasing");
    }
  }
  return policy.custom;
}

}  // namespace detail

// Last observation carried forward. Leading missings have nothing to carry
// and are dropped unless keep_edges.
template <SeriesLike S>
S fill_locf(const S& s, const fill_policy& policy = {}) {
  return detail::fill_with(s, policy.keep_edges, [](std::vector<cell>& col) {
    cell last;
    for (cell& c : col) {
      if (c) {
        last = c;
      } else {
        c = last;
      }
    }
  });
}

// Linear interpolation between the nearest present neighbours along the
// chosen abscissa. Edge cells with only one neighbour stay missing and are
// dropped unless keep_edges.
template <SeriesLike S>
S fill_interp(const S& s, const fill_policy& policy = {}) {
  std::vector<double> x = detail::interp_positions(s, policy);
  return detail::fill_with(s, policy.keep_edges, [&x](std::vector<cell>& col) {
    std::vector<std::size_t> known;
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i]) known.push_back(i);
    }
    if (known.size() < 2) return;
    for (std::size_t k = 0; k + 1 < known.size(); ++k) {
      std::size_t lo = known[k], hi = known[k + 1];
      for (std::size_t i = lo + 1; i < hi; ++i) {
        double t = (x[i] - x[lo]) / (x[hi] - x[lo]);
        col[i] = *col[lo] + t * (*col[hi] - *col[lo]);
      }
    }
  });
}

}  // namespace ordseries
