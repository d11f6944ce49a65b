#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "combine.hpp"
#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

enum class bin_op { add, sub, mul, div, pow, lt, le, gt, ge, eq, ne };

inline std::optional<bin_op> bin_op_from_name(std::string_view name) {
  if (name == "add" || name == "+") return bin_op::add;
  if (name == "sub" || name == "-") return bin_op::sub;
  if (name == "mul" || name == "*") return bin_op::mul;
  if (name == "div" || name == "/") return bin_op::div;
  if (name == "pow" || name == "^") return bin_op::pow;
  if (name == "lt" || name == "<") return bin_op::lt;
  if (name == "le" || name == "<=") return bin_op::le;
  if (name == "gt" || name == ">") return bin_op::gt;
  if (name == "ge" || name == ">=") return bin_op::ge;
  if (name == "eq" || name == "==") return bin_op::eq;
  if (name == "ne" || name == "!=") return bin_op::ne;
  return std::nullopt;
}

// Cell arithmetic: missing propagates, comparisons yield 0/1, division by
// zero follows IEEE into the infinities.
inline cell apply_bin(bin_op op, cell a, cell b) {
  if (!a || !b) return std::nullopt;
  double x = *a, y = *b;
  switch (op) {
    case bin_op::add: return cell{x + y};
    case bin_op::sub: return cell{x - y};
    case bin_op::mul: return cell{x * y};
    case bin_op::div: return cell{x / y};
    case bin_op::pow: return cell{std::pow(x, y)};
    case bin_op::lt: return cell{x < y ? 1.0 : 0.0};
    case bin_op::le: return cell{x <= y ? 1.0 : 0.0};
    case bin_op::gt: return cell{x > y ? 1.0 : 0.0};
    case bin_op::ge: return cell{x >= y ? 1.0 : 0.0};
    case bin_op::eq: return cell{x == y ? 1.0 : 0.0};
    case bin_op::ne: return cell{x != y ? 1.0 : 0.0};
  }
  return std::nullopt;
}

namespace detail {

template <IndexKind K>
std::vector<K> index_intersection(const std::vector<K>& a, const std::vector<K>& b) {
  std::vector<K> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Positions of `wanted` values inside the sorted `index`; every wanted value
// is known to be present.
template <IndexKind K>
std::vector<std::size_t> match_positions(const std::vector<K>& index,
                                         const std::vector<K>& wanted) {
  std::vector<std::size_t> pos;
  pos.reserve(wanted.size());
  std::size_t j = 0;
  for (const K& w : wanted) {
    while (index[j] < w) ++j;
    pos.push_back(j);
  }
  return pos;
}

template <IndexKind K>
std::optional<double> zip_frequency(const series<K>& a, std::optional<double> fb,
                                    const std::vector<K>& out_index) {
  std::vector<double> annotated;
  if (a.frequency()) annotated.push_back(*a.frequency());
  if (fb) annotated.push_back(*fb);
  return merged_frequency(annotated, out_index);
}

}  // namespace detail

// Element-wise binary operation over the index intersection of two tables.
template <IndexKind K>
series<K> zip_op(const series<K>& a, const series<K>& b, bin_op op) {
  auto idx = detail::index_intersection(a.index(), b.index());
  auto pa = detail::match_positions(a.index(), idx);
  auto pb = detail::match_positions(b.index(), idx);
  std::vector<cell> out;
  out.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.push_back(apply_bin(op, a.cells()[pa[i]], b.cells()[pb[i]]));
  }
  std::vector<double> annotated;
  if (a.frequency()) annotated.push_back(*a.frequency());
  if (b.frequency()) annotated.push_back(*b.frequency());
  auto freq = detail::merged_frequency(annotated, idx);
  return series<K>(a.name(), std::move(idx), std::move(out), freq);
}

template <IndexKind K>
frame<K> zip_op(const frame<K>& a, const frame<K>& b, bin_op op) {
  if (a.column_count() != b.column_count()) {
    throw shape_error("frames differ in column count");
  }
  auto idx = detail::index_intersection(a.index(), b.index());
  auto pa = detail::match_positions(a.index(), idx);
  auto pb = detail::match_positions(b.index(), idx);
  std::vector<std::vector<cell>> out(a.column_count());
  for (std::size_t c = 0; c < a.column_count(); ++c) {
    out[c].reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out[c].push_back(apply_bin(op, a.column(c)[pa[i]], b.column(c)[pb[i]]));
    }
  }
  std::vector<double> annotated;
  if (a.frequency()) annotated.push_back(*a.frequency());
  if (b.frequency()) annotated.push_back(*b.frequency());
  auto freq = detail::merged_frequency(annotated, idx);
  return frame<K>(a.names(), std::move(idx), std::move(out), freq);
}

// A series against a frame recycles the series across the frame's columns.
template <IndexKind K>
frame<K> zip_op(const frame<K>& a, const series<K>& b, bin_op op) {
  auto idx = detail::index_intersection(a.index(), b.index());
  auto pa = detail::match_positions(a.index(), idx);
  auto pb = detail::match_positions(b.index(), idx);
  std::vector<std::vector<cell>> out(a.column_count());
  for (std::size_t c = 0; c < a.column_count(); ++c) {
    out[c].reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out[c].push_back(apply_bin(op, a.column(c)[pa[i]], b.cells()[pb[i]]));
    }
  }
  auto freq = detail::zip_frequency(b, a.frequency(), idx);
  return frame<K>(a.names(), std::move(idx), std::move(out), freq);
}

template <IndexKind K>
frame<K> zip_op(const series<K>& a, const frame<K>& b, bin_op op) {
  auto idx = detail::index_intersection(a.index(), b.index());
  auto pa = detail::match_positions(a.index(), idx);
  auto pb = detail::match_positions(b.index(), idx);
  std::vector<std::vector<cell>> out(b.column_count());
  for (std::size_t c = 0; c < b.column_count(); ++c) {
    out[c].reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out[c].push_back(apply_bin(op, a.cells()[pa[i]], b.column(c)[pb[i]]));
    }
  }
  auto freq = detail::zip_frequency(a, b.frequency(), idx);
  return frame<K>(b.names(), std::move(idx), std::move(out), freq);
}

// Scalars act on every cell; the index is untouched.
template <SeriesLike S>
S zip_op(const S& s, double scalar, bin_op op) {
  auto cols = detail::copy_columns(s);
  for (auto& col : cols) {
    for (cell& c : col) c = apply_bin(op, c, cell{scalar});
  }
  return S::with(s, s.index(), std::move(cols), s.frequency());
}

template <SeriesLike S>
S zip_op(double scalar, const S& s, bin_op op) {
  auto cols = detail::copy_columns(s);
  for (auto& col : cols) {
    for (cell& c : col) c = apply_bin(op, cell{scalar}, c);
  }
  return S::with(s, s.index(), std::move(cols), s.frequency());
}

enum class cumulate_kind { sum, prod, min, max };

inline std::optional<cumulate_kind> cumulate_from_name(std::string_view name) {
  if (name == "sum") return cumulate_kind::sum;
  if (name == "prod") return cumulate_kind::prod;
  if (name == "min") return cumulate_kind::min;
  if (name == "max") return cumulate_kind::max;
  return std::nullopt;
}

// Running accumulation down each column. A missing cell stays missing in the
// output and the running state carries across it.
template <SeriesLike S>
S cumulate(const S& s, cumulate_kind kind) {
  auto cols = detail::copy_columns(s);
  for (auto& col : cols) {
    std::optional<double> state;
    for (cell& c : col) {
      if (!c) continue;
      if (!state) {
        state = *c;
      } else {
        switch (kind) {
          case cumulate_kind::sum: state = *state + *c; break;
          case cumulate_kind::prod: state = *state * *c; break;
          case cumulate_kind::min: state = std::min(*state, *c); break;
          case cumulate_kind::max: state = std::max(*state, *c); break;
        }
      }
      c = *state;
    }
  }
  return S::with(s, s.index(), std::move(cols), s.frequency());
}

// Index-free rectangular view with series as rows: the index moves into the
// column labels.
struct plain_table {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<cell>> rows;
};

template <SeriesLike S>
plain_table transpose_to_table(const S& s) {
  plain_table t;
  t.col_labels.reserve(s.row_count());
  for (const auto& v : s.index()) t.col_labels.push_back(v.to_display());
  t.rows.resize(s.column_count());
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    t.row_labels.emplace_back(s.column_name(c));
    auto col = s.column(c);
    t.rows[c].assign(col.begin(), col.end());
  }
  return t;
}

// Move cells k steps along the index: positive k pairs each row with the
// observation k rows later. Without padding, rows that lose their partner
// are dropped; with padding every row survives and partnerless cells are
// missing.
template <SeriesLike S>
S lag_by(const S& s, std::int64_t k, bool pad = false) {
  const std::int64_t n = std::int64_t(s.row_count());
  auto shifted_cell = [&](std::span<const cell> col, std::int64_t i) -> cell {
    std::int64_t j = i + k;
    if (j < 0 || j >= n) return std::nullopt;
    return col[std::size_t(j)];
  };
  if (pad) {
    std::vector<std::vector<cell>> cols(s.column_count());
    for (std::size_t c = 0; c < s.column_count(); ++c) {
      auto src = s.column(c);
      cols[c].reserve(s.row_count());
      for (std::int64_t i = 0; i < n; ++i) cols[c].push_back(shifted_cell(src, i));
    }
    return S::with(s, s.index(), std::move(cols), s.frequency());
  }
  std::int64_t lo = std::max<std::int64_t>(0, -k);
  std::int64_t hi = std::min<std::int64_t>(n, n - k);  // exclusive
  std::vector<index_t<S>> idx;
  std::vector<std::vector<cell>> cols(s.column_count());
  for (std::int64_t i = lo; i < hi; ++i) idx.push_back(s.index()[std::size_t(i)]);
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    auto src = s.column(c);
    cols[c].reserve(idx.size());
    for (std::int64_t i = lo; i < hi; ++i) cols[c].push_back(src[std::size_t(i + k)]);
  }
  return S::with(s, std::move(idx), std::move(cols), s.frequency());
}

// Differences along the index: x_i - x_{i-lag} (or the ratio when geometric),
// iterated `differences` times. Each pass drops the first `lag` rows.
template <SeriesLike S>
S diff_by(const S& s, std::int64_t lag = 1, std::int64_t differences = 1,
          bool arithmetic = true) {
  if (lag < 1) throw domain_error("lag must be at least 1");
  if (differences < 1) throw domain_error("differences must be at least 1");
  S out = s;
  for (std::int64_t d = 0; d < differences; ++d) {
    const std::size_t n = out.row_count();
    const std::size_t drop = std::min<std::size_t>(std::size_t(lag), n);
    std::vector<index_t<S>> idx(out.index().begin() + std::ptrdiff_t(drop), out.index().end());
    std::vector<std::vector<cell>> cols(out.column_count());
    for (std::size_t c = 0; c < out.column_count(); ++c) {
      auto src = out.column(c);
      cols[c].reserve(n - drop);
      for (std::size_t i = drop; i < n; ++i) {
        cols[c].push_back(
            apply_bin(arithmetic ? bin_op::sub : bin_op::div, src[i], src[i - std::size_t(lag)]));
      }
    }
    out = S::with(out, std::move(idx), std::move(cols), out.frequency());
  }
  return out;
}

}  // namespace ordseries
