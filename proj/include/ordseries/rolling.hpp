#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <set>
#include <span>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

enum class roll_align { left, center, right };

struct roll_spec {
  std::size_t width = 1;
  roll_align align = roll_align::center;
  bool pad = false;
};

namespace detail {

inline std::size_t anchor_offset(const roll_spec& spec) {
  switch (spec.align) {
    case roll_align::left: return 0;
    case roll_align::center: return (spec.width - 1) / 2;
    case roll_align::right: return spec.width - 1;
  }
  return 0;
}

// Shared frame of every rolling operation: evaluate a per-window column
// function at each full window, anchor the result per the alignment, and
// either keep only anchored rows or pad the rest with missing.
template <SeriesLike S, typename WindowFn>
S roll_frame(const S& s, const roll_spec& spec, WindowFn window_fn) {
  if (spec.width < 1) throw domain_error("window width must be at least 1");
  const std::size_t n = s.row_count();
  const std::size_t w = spec.width;
  const std::size_t offset = anchor_offset(spec);
  const std::size_t windows = n >= w ? n - w + 1 : 0;

  std::vector<std::vector<cell>> out(s.column_count(), std::vector<cell>(n, cell{}));
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    window_fn(s.column(c), [&](std::size_t window_start, cell value) {
      out[c][window_start + offset] = value;
    });
  }
  if (spec.pad) {
    return S::with(s, s.index(), std::move(out), s.frequency());
  }
  std::vector<std::size_t> rows(windows);
  std::iota(rows.begin(), rows.end(), offset);
  std::vector<std::vector<cell>> trimmed(s.column_count());
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    trimmed[c].reserve(windows);
    for (std::size_t r : rows) trimmed[c].push_back(out[c][r]);
  }
  std::vector<index_t<S>> idx;
  idx.reserve(windows);
  for (std::size_t r : rows) idx.push_back(s.index()[r]);
  return S::with(s, std::move(idx), std::move(trimmed), s.frequency());
}

}  // namespace detail

// Statistic over the cells of each full window; the statistic sees missing
// cells as they are.
using window_stat = std::function<cell(std::span<const cell>)>;

template <SeriesLike S>
S roll_apply(const S& s, const roll_spec& spec, const window_stat& stat) {
  return detail::roll_frame(s, spec, [&](std::span<const cell> col, auto emit) {
    const std::size_t w = spec.width;
    for (std::size_t i = 0; i + w <= col.size(); ++i) {
      emit(i, stat(col.subspan(i, w)));
    }
  });
}

// Steps between fresh re-accumulations of the sliding sum, bounding drift.
inline constexpr std::size_t roll_mean_reanchor = 4096;

// Sliding mean; a window containing any missing cell yields missing.
template <SeriesLike S>
S roll_mean(const S& s, const roll_spec& spec) {
  return detail::roll_frame(s, spec, [&](std::span<const cell> col, auto emit) {
    const std::size_t w = spec.width;
    if (col.size() < w) return;
    double sum = 0.0;
    std::size_t missing = 0;
    auto add = [&](const cell& c) {
      if (c) {
        sum += *c;
      } else {
        ++missing;
      }
    };
    auto drop = [&](const cell& c) {
      if (c) {
        sum -= *c;
      } else {
        --missing;
      }
    };
    auto reanchor = [&](std::size_t start) {
      sum = 0.0;
      missing = 0;
      for (std::size_t k = start; k < start + w; ++k) add(col[k]);
    };
    reanchor(0);
    for (std::size_t i = 0;; ++i) {
      emit(i, missing == 0 ? cell{sum / double(w)} : cell{});
      if (i + w >= col.size()) break;
      if ((i + 1) % roll_mean_reanchor == 0) {
        reanchor(i + 1);
      } else {
        drop(col[i]);
        add(col[i + w]);
      }
    }
  });
}

// Sliding median over odd widths, kept as two balanced ordered multisets:
// low holds the smaller half plus the middle element.
template <SeriesLike S>
S roll_median(const S& s, const roll_spec& spec) {
  if (spec.width % 2 == 0) {
    throw domain_error("median window width must be odd");
  }
  return detail::roll_frame(s, spec, [&](std::span<const cell> col, auto emit) {
    const std::size_t w = spec.width;
    if (col.size() < w) return;
    std::multiset<double> low, high;
    std::size_t missing = 0;

    auto rebalance = [&] {
      while (low.size() > high.size() + 1) {
        auto it = std::prev(low.end());
        high.insert(*it);
        low.erase(it);
      }
      while (high.size() > low.size()) {
        auto it = high.begin();
        low.insert(*it);
        high.erase(it);
      }
    };
    auto insert_value = [&](const cell& c) {
      if (!c) {
        ++missing;
        return;
      }
      if (low.empty() || *c <= *std::prev(low.end())) {
        low.insert(*c);
      } else {
        high.insert(*c);
      }
      rebalance();
    };
    auto erase_value = [&](const cell& c) {
      if (!c) {
        --missing;
        return;
      }
      if (auto it = low.find(*c); it != low.end()) {
        low.erase(it);
      } else {
        high.erase(high.find(*c));
      }
      rebalance();
    };

    for (std::size_t k = 0; k < w; ++k) insert_value(col[k]);
    for (std::size_t i = 0;; ++i) {
      emit(i, missing == 0 ? cell{*std::prev(low.end())} : cell{});
      if (i + w >= col.size()) break;
      erase_value(col[i]);
      insert_value(col[i + w]);
    }
  });
}

// Sliding maximum via a monotonic deque of (value, position) candidates.
template <SeriesLike S>
S roll_max(const S& s, const roll_spec& spec) {
  return detail::roll_frame(s, spec, [&](std::span<const cell> col, auto emit) {
    const std::size_t w = spec.width;
    if (col.size() < w) return;
    std::deque<std::pair<double, std::size_t>> candidates;
    std::size_t missing = 0;
    // count of missing cells inside the current window [i, i + w)
    for (std::size_t k = 0; k < w; ++k) {
      if (!col[k]) ++missing;
    }
    auto push = [&](std::size_t pos) {
      if (!col[pos]) return;
      while (!candidates.empty() && candidates.back().first <= *col[pos]) {
        candidates.pop_back();
      }
      candidates.emplace_back(*col[pos], pos);
    };
    for (std::size_t k = 0; k < w; ++k) push(k);
    for (std::size_t i = 0;; ++i) {
      while (!candidates.empty() && candidates.front().second < i) candidates.pop_front();
      emit(i, missing == 0 ? cell{candidates.front().first} : cell{});
      if (i + w >= col.size()) break;
      if (!col[i]) --missing;
      if (!col[i + w]) ++missing;
      push(i + w);
    }
  });
}

}  // namespace ordseries
