#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

enum class merge_mode { union_mode, intersection, left, right };

struct merge_spec {
  merge_mode mode = merge_mode::union_mode;
  cell fill;  // applied to alignment gaps; missing by default
};

// A merge argument: an indexed table, a scalar recycled over the result, or
// a bare column adopting the first indexed part's index.
template <IndexKind K>
using merge_part = std::variant<series<K>, frame<K>, double, std::vector<cell>>;

namespace detail {

template <IndexKind K>
struct part_view {
  const std::vector<K>* index;
  std::vector<std::span<const cell>> columns;
  std::vector<std::string> names;
  std::optional<double> frequency;
};

// Colliding column names get positional suffixes: the k-th occurrence of a
// contested name becomes name_k.
inline std::vector<std::string> dedupe_names(std::vector<std::string> names) {
  std::map<std::string, std::size_t> counts;
  for (const auto& n : names) ++counts[n];
  std::set<std::string> taken;
  std::map<std::string, std::size_t> occurrence;
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    if (counts[n] == 1 && !taken.count(n)) {
      out.push_back(n);
      taken.insert(n);
      continue;
    }
    std::size_t k = ++occurrence[n];
    std::string cand = n + "_" + std::to_string(k);
    while (taken.count(cand) || counts.count(cand)) {
      ++k;
      cand = n + "_" + std::to_string(k);
    }
    out.push_back(cand);
    taken.insert(cand);
  }
  return out;
}

// The common maximal frequency of the annotated inputs: the largest
// annotation, provided every other annotation divides it and the output
// index lies on its grid.
template <IndexKind K>
std::optional<double> merged_frequency(const std::vector<double>& annotated,
                                       const std::vector<K>& out_index) {
  if (annotated.empty()) return std::nullopt;
  double fmax = *std::max_element(annotated.begin(), annotated.end());
  for (double f : annotated) {
    if (!nearly_integer(fmax / f)) return std::nullopt;
  }
  if constexpr (ProjectableIndex<K>) {
    std::vector<double> proj;
    proj.reserve(out_index.size());
    for (const K& v : out_index) proj.push_back(v.to_numeric());
    if (!offsets_on_grid(proj, fmax)) return std::nullopt;
    return fmax;
  } else {
    return std::nullopt;
  }
}

// Align one sorted column onto the sorted output index; rows without a
// match take the fill value.
template <IndexKind K>
std::vector<cell> align_column(const std::vector<K>& out_index, const std::vector<K>& src_index,
                               std::span<const cell> src, cell fill) {
  std::vector<cell> col(out_index.size(), fill);
  std::size_t j = 0;
  for (std::size_t i = 0; i < out_index.size(); ++i) {
    while (j < src_index.size() && src_index[j] < out_index[i]) ++j;
    if (j < src_index.size() && src_index[j] == out_index[i]) col[i] = src[j];
  }
  return col;
}

}  // namespace detail

// Align any number of parts on a shared index and lay their columns side by
// side.
template <IndexKind K>
frame<K> merge_aligned(const std::vector<merge_part<K>>& parts, const merge_spec& spec = {}) {
  std::vector<detail::part_view<K>> views(parts.size());
  std::vector<std::size_t> indexed;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& view = views[i];
    if (const auto* s = std::get_if<series<K>>(&parts[i])) {
      view.index = &s->index();
      view.columns = {s->cells()};
      view.names = {s->name()};
      view.frequency = s->frequency();
      indexed.push_back(i);
    } else if (const auto* f = std::get_if<frame<K>>(&parts[i])) {
      view.index = &f->index();
      for (std::size_t c = 0; c < f->column_count(); ++c) view.columns.push_back(f->column(c));
      view.names = f->names();
      view.frequency = f->frequency();
      indexed.push_back(i);
    }
  }
  if (indexed.empty()) throw domain_error("merge needs at least one indexed part");

  const auto& lead = *views[indexed.front()].index;
  std::vector<K> out_index;
  switch (spec.mode) {
    case merge_mode::union_mode: {
      for (std::size_t i : indexed) {
        out_index.insert(out_index.end(), views[i].index->begin(), views[i].index->end());
      }
      std::sort(out_index.begin(), out_index.end());
      out_index.erase(std::unique(out_index.begin(), out_index.end()), out_index.end());
      break;
    }
    case merge_mode::intersection: {
      out_index = lead;
      for (std::size_t i : indexed) {
        std::vector<K> next;
        std::set_intersection(out_index.begin(), out_index.end(), views[i].index->begin(),
                              views[i].index->end(), std::back_inserter(next));
        out_index = std::move(next);
      }
      break;
    }
    case merge_mode::left:
      out_index = lead;
      break;
    case merge_mode::right:
      out_index = *views[indexed.back()].index;
      break;
  }

  std::vector<std::string> names;
  std::vector<std::vector<cell>> columns;
  std::vector<double> annotated;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (const auto* scalar = std::get_if<double>(&parts[i])) {
      names.emplace_back("const");
      columns.emplace_back(out_index.size(), cell{*scalar});
      continue;
    }
    if (const auto* bare = std::get_if<std::vector<cell>>(&parts[i])) {
      if (bare->size() != lead.size()) {
        throw shape_error("bare column length differs from the first indexed part");
      }
      names.emplace_back("data");
      columns.push_back(detail::align_column(out_index, lead, *bare, spec.fill));
      continue;
    }
    const auto& view = views[i];
    if (view.frequency) annotated.push_back(*view.frequency);
    for (std::size_t c = 0; c < view.columns.size(); ++c) {
      names.push_back(view.names[c]);
      columns.push_back(detail::align_column(out_index, *view.index, view.columns[c], spec.fill));
    }
  }

  auto freq = detail::merged_frequency(annotated, out_index);
  return frame<K>(detail::dedupe_names(std::move(names)), std::move(out_index),
                  std::move(columns), freq);
}

template <IndexKind K>
frame<K> merge_aligned(const series<K>& a, const series<K>& b, const merge_spec& spec = {}) {
  return merge_aligned<K>({merge_part<K>(a), merge_part<K>(b)}, spec);
}

// Stack tables with identical columns; their index sets must be disjoint.
template <SeriesLike S>
S concat_rows(const std::vector<S>& parts) {
  if (parts.empty()) return S{};
  const S& first = parts.front();
  for (const S& p : parts) {
    if (p.column_count() != first.column_count()) {
      throw shape_error("parts differ in column count");
    }
    for (std::size_t c = 0; c < p.column_count(); ++c) {
      if (p.column_name(c) != first.column_name(c)) {
        throw shape_error("parts differ in column names");
      }
    }
  }

  std::vector<index_t<S>> pooled;
  std::vector<std::pair<std::size_t, std::size_t>> sources;  // (part, row)
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t r = 0; r < parts[p].row_count(); ++r) {
      pooled.push_back(parts[p].index()[r]);
      sources.emplace_back(p, r);
    }
  }
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pooled[order[i - 1]] == pooled[order[i]]) {
      throw overlap_error("parts overlap at index " + pooled[order[i]].to_text());
    }
  }

  std::vector<index_t<S>> out_index;
  out_index.reserve(order.size());
  std::vector<std::vector<cell>> columns(first.column_count());
  for (auto& c : columns) c.reserve(order.size());
  for (std::size_t o : order) {
    auto [p, r] = sources[o];
    out_index.push_back(pooled[o]);
    for (std::size_t c = 0; c < first.column_count(); ++c) {
      columns[c].push_back(parts[p].column(c)[r]);
    }
  }

  std::vector<double> annotated;
  for (const S& p : parts) {
    if (p.frequency()) annotated.push_back(*p.frequency());
  }
  auto freq = detail::merged_frequency(annotated, out_index);
  return S::with(first, std::move(out_index), std::move(columns), freq);
}

template <SeriesLike S>
S concat_rows(const S& a, const S& b) {
  return concat_rows(std::vector<S>{a, b});
}

// Group statistic signature: one cell from the cells of a group.
using group_stat = std::function<cell(std::span<const cell>)>;

namespace detail {

template <IndexKind K2>
struct grouped_rows {
  std::vector<K2> keys;
  std::vector<std::vector<std::size_t>> rows;
};

template <IndexKind K2>
grouped_rows<K2> group_by_labels(const std::vector<K2>& labels) {
  auto grouped = sort_and_group(labels);
  return {std::move(grouped.index), std::move(grouped.groups)};
}

}  // namespace detail

// Collapse rows sharing a label into one row per label, in ascending label
// order. The grouped result carries no frequency annotation.
template <IndexKind K, IndexKind K2>
series<K2> aggregate_by(const series<K>& s, const std::vector<K2>& labels,
                        const group_stat& stat) {
  if (labels.size() != s.row_count()) {
    throw shape_error("label count differs from rows");
  }
  auto g = detail::group_by_labels(labels);
  std::vector<cell> out;
  out.reserve(g.keys.size());
  for (const auto& rows : g.rows) {
    std::vector<cell> cells;
    cells.reserve(rows.size());
    for (std::size_t r : rows) cells.push_back(s.cells()[r]);
    out.push_back(stat(cells));
  }
  return series<K2>(s.name(), std::move(g.keys), std::move(out));
}

template <IndexKind K, IndexKind K2>
frame<K2> aggregate_by(const frame<K>& f, const std::vector<K2>& labels, const group_stat& stat) {
  if (labels.size() != f.row_count()) {
    throw shape_error("label count differs from rows");
  }
  auto g = detail::group_by_labels(labels);
  std::vector<std::vector<cell>> out(f.column_count());
  for (std::size_t c = 0; c < f.column_count(); ++c) {
    out[c].reserve(g.keys.size());
    for (const auto& rows : g.rows) {
      std::vector<cell> cells;
      cells.reserve(rows.size());
      for (std::size_t r : rows) cells.push_back(f.column(c)[r]);
      out[c].push_back(stat(cells));
    }
  }
  return frame<K2>(f.names(), std::move(g.keys), std::move(out));
}

// Convenience: derive each row's label from its index value.
template <IndexKind K, typename Fn>
  requires std::invocable<Fn, const K&>
auto aggregate_by(const series<K>& s, Fn group, const group_stat& stat) {
  using K2 = std::remove_cvref_t<std::invoke_result_t<Fn, const K&>>;
  std::vector<K2> labels;
  labels.reserve(s.row_count());
  for (const K& v : s.index()) labels.push_back(group(v));
  return aggregate_by<K, K2>(s, labels, stat);
}

template <IndexKind K, typename Fn>
  requires std::invocable<Fn, const K&>
auto aggregate_by(const frame<K>& f, Fn group, const group_stat& stat) {
  using K2 = std::remove_cvref_t<std::invoke_result_t<Fn, const K&>>;
  std::vector<K2> labels;
  labels.reserve(f.row_count());
  for (const K& v : f.index()) labels.push_back(group(v));
  return aggregate_by<K, K2>(f, labels, stat);
}

enum class stat_kind { mean, sum, first, last, min, max, sd, count };

inline std::optional<stat_kind> stat_from_name(std::string_view name) {
  if (name == "mean") return stat_kind::mean;
  if (name == "sum") return stat_kind::sum;
  if (name == "first") return stat_kind::first;
  if (name == "last") return stat_kind::last;
  if (name == "min") return stat_kind::min;
  if (name == "max") return stat_kind::max;
  if (name == "sd") return stat_kind::sd;
  if (name == "count") return stat_kind::count;
  return std::nullopt;
}

// Built-in group statistics. With skip_missing, absent cells are dropped
// before evaluation and a group with no present cell yields missing; without
// it any absent cell makes the result missing. count never goes missing: it
// reports present cells when skipping, group size otherwise.
inline group_stat builtin_stat(stat_kind kind, bool skip_missing = true) {
  return [kind, skip_missing](std::span<const cell> cells) -> cell {
    if (kind == stat_kind::count) {
      if (!skip_missing) return cell{double(cells.size())};
      std::size_t n = 0;
      for (const cell& c : cells) {
        if (c) ++n;
      }
      return cell{double(n)};
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const cell& c : cells) {
      if (c) {
        values.push_back(*c);
      } else if (!skip_missing) {
        return std::nullopt;
      }
    }
    if (values.empty()) return std::nullopt;
    switch (kind) {
      case stat_kind::first:
        return cell{values.front()};
      case stat_kind::last:
        return cell{values.back()};
      case stat_kind::min:
        return cell{*std::min_element(values.begin(), values.end())};
      case stat_kind::max:
        return cell{*std::max_element(values.begin(), values.end())};
      case stat_kind::sum:
      case stat_kind::mean: {
        double sum = 0.0;
        for (double v : values) sum += v;
        return cell{kind == stat_kind::sum ? sum : sum / double(values.size())};
      }
      case stat_kind::sd: {
        if (values.size() < 2) return std::nullopt;
        double sum = 0.0;
        for (double v : values) sum += v;
        double m = sum / double(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - m) * (v - m);
        return cell{std::sqrt(ss / double(values.size() - 1))};
      }
      case stat_kind::count:
        break;
    }
    return std::nullopt;
  };
}

}  // namespace ordseries
