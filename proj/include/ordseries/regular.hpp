#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

// A frequency is never inferred above one observation per day-of-year grid.
inline constexpr double max_inferred_frequency = 366.0;

namespace detail {

template <SeriesLike S>
std::vector<double> projections(const S& s) {
  std::vector<double> p;
  p.reserve(s.row_count());
  for (const auto& v : s.index()) p.push_back(v.to_numeric());
  return p;
}

inline double real_gcd(double a, double b, double tol) {
  while (b > tol) {
    double r = std::fmod(a, b);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

// Whether the index sits on a fixed grid. Strict regularity means all gaps
// equal; weak regularity tolerates unobserved grid points. Without an
// annotation the weak check asks that every gap be a whole multiple of the
// smallest gap.
template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
bool is_regular(const S& s, bool strict = false) {
  if (s.row_count() < 2) return true;
  auto p = detail::projections(s);
  std::vector<double> gaps;
  gaps.reserve(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) gaps.push_back(p[i] - p[i - 1]);
  if (strict) {
    for (double g : gaps) {
      if (std::abs(g - gaps.front()) > grid_tolerance * std::max(1.0, std::abs(gaps.front()))) {
        return false;
      }
    }
    return true;
  }
  if (s.frequency()) return detail::offsets_on_grid(p, *s.frequency());
  double gmin = *std::min_element(gaps.begin(), gaps.end());
  if (!(gmin > 0.0)) return false;
  for (double g : gaps) {
    if (!detail::nearly_integer(g / gmin)) return false;
  }
  return true;
}

// Recover observations-per-unit from the gaps alone: the reciprocal of the
// real gcd of all gaps, snapped to a whole number when within tolerance.
// Absent when fewer than two rows, when the gaps share no grid at tolerance,
// or when the grid would be finer than max_inferred_frequency.
template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
std::optional<double> infer_frequency(const S& s) {
  if (s.row_count() < 2) return std::nullopt;
  auto p = detail::projections(s);
  double g = 0.0, gmax = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) gmax = std::max(gmax, p[i] - p[i - 1]);
  double tol = grid_tolerance * std::max(1.0, gmax);
  for (std::size_t i = 1; i < p.size(); ++i) {
    double gap = p[i] - p[i - 1];
    g = (i == 1) ? gap : detail::real_gcd(g, gap, tol);
  }
  if (!(g > 0.0)) return std::nullopt;
  double f = 1.0 / g;
  if (f > max_inferred_frequency * (1.0 + grid_tolerance)) return std::nullopt;
  if (detail::nearly_integer(f)) f = std::round(f);
  if (!detail::offsets_on_grid(p, f)) return std::nullopt;
  return f;
}

// The effective frequency: the annotation when present, otherwise inferred
// from the gaps of a weakly regular index.
template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
std::optional<double> frequency_of(const S& s) {
  if (s.frequency()) return s.frequency();
  if (!is_regular(s, false)) return std::nullopt;
  return infer_frequency(s);
}

// Annotate with a frequency the index actually complies with.
template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
S attach_frequency(const S& s, double frequency) {
  if (!std::isfinite(frequency) || !(frequency > 0.0)) {
    throw domain_error("frequency must be positive");
  }
  auto p = detail::projections(s);
  if (!detail::offsets_on_grid(p, frequency)) {
    throw frequency_mismatch_error("index does not lie on a grid of frequency " +
                                   detail::shortest_real_text(frequency));
  }
  return S::with(s, s.index(), detail::copy_columns(s), frequency);
}

template <SeriesLike S>
S strip_frequency(const S& s) {
  return S::with(s, s.index(), detail::copy_columns(s), std::nullopt);
}

template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
double deltat(const S& s) {
  auto f = frequency_of(s);
  if (!f) throw not_regular_error("series has no recoverable frequency");
  return 1.0 / *f;
}

// 1-based position of each observation within its frequency period.
template <SeriesLike S>
  requires ProjectableIndex<index_t<S>>
std::vector<std::int64_t> cycle_positions(const S& s) {
  auto f = frequency_of(s);
  if (!f) throw not_regular_error("series has no recoverable frequency");
  if (!detail::nearly_integer(*f) || *f < 1.0) {
    throw domain_error("cycle requires a whole-number frequency");
  }
  std::int64_t k = std::llround(*f);
  std::vector<std::int64_t> out;
  out.reserve(s.row_count());
  for (const auto& v : s.index()) {
    double p = v.to_numeric();
    out.push_back(1 + detail::floor_mod(std::llround(*f * (p - std::floor(p))), k));
  }
  return out;
}

// Dense, gap-free exchange form: start, frequency, and one cell per grid
// step (missing where the series had no observation).
template <ShiftableIndex K>
struct regular_grid {
  K start{};
  double frequency = 1.0;
  bool from_series = true;
  std::vector<std::string> names;
  std::vector<std::vector<cell>> columns;

  std::size_t step_count() const { return columns.empty() ? 0 : columns.front().size(); }

  bool operator==(const regular_grid&) const = default;
};

namespace detail {

inline constexpr std::size_t max_grid_steps = 50'000'000;

}  // namespace detail

template <SeriesLike S>
  requires ShiftableIndex<index_t<S>>
regular_grid<index_t<S>> to_grid(const S& s) {
  if (s.row_count() == 0) throw empty_error("cannot grid an empty series");
  auto f = frequency_of(s);
  if (!f) throw not_regular_error("series has no recoverable frequency");
  auto p = detail::projections(s);
  double span = (p.back() - p.front()) * *f;
  if (span > double(detail::max_grid_steps)) throw domain_error("grid would be too large");
  std::size_t steps = std::size_t(std::llround(span)) + 1;

  regular_grid<index_t<S>> g;
  g.start = s.index().front();
  g.frequency = *f;
  g.from_series = !requires { s.names(); };
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    g.names.emplace_back(s.column_name(c));
    g.columns.emplace_back(steps, cell{});
  }
  std::int64_t prev = -1;
  for (std::size_t i = 0; i < s.row_count(); ++i) {
    std::int64_t k = std::llround((p[i] - p.front()) * *f);
    if (k <= prev || k >= std::int64_t(steps)) {
      throw not_regular_error("index does not lie on the frequency grid");
    }
    prev = k;
    for (std::size_t c = 0; c < s.column_count(); ++c) g.columns[c][std::size_t(k)] = s.column(c)[i];
  }
  return g;
}

template <ShiftableIndex K>
std::vector<K> grid_index(const regular_grid<K>& g) {
  std::vector<K> idx;
  idx.reserve(g.step_count());
  for (std::size_t i = 0; i < g.step_count(); ++i) {
    idx.push_back(g.start.shifted_by(double(i) / g.frequency));
  }
  return idx;
}

template <ShiftableIndex K>
series<K> series_from_grid(const regular_grid<K>& g) {
  if (g.columns.size() != 1) throw shape_error("grid does not hold exactly one column");
  return series<K>(g.names.front(), grid_index(g), g.columns.front(), g.frequency);
}

template <ShiftableIndex K>
frame<K> frame_from_grid(const regular_grid<K>& g) {
  return frame<K>(g.names, grid_index(g), g.columns, g.frequency);
}

// Strictly regular series laid out directly from values, a start, and a
// frequency.
template <ShiftableIndex K>
series<K> make_regular(std::string name, std::vector<cell> values, K start, double frequency) {
  if (!std::isfinite(frequency) || !(frequency > 0.0)) {
    throw domain_error("frequency must be positive");
  }
  std::vector<K> idx;
  idx.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    idx.push_back(start.shifted_by(double(i) / frequency));
  }
  return series<K>(std::move(name), std::move(idx), std::move(values), frequency);
}

template <ShiftableIndex K>
series<K> make_regular(std::vector<cell> values, K start, double frequency) {
  return make_regular<K>("x", std::move(values), start, frequency);
}

template <ShiftableIndex K>
frame<K> make_regular_frame(std::vector<std::string> names, std::vector<std::vector<cell>> columns,
                            K start, double frequency) {
  if (!std::isfinite(frequency) || !(frequency > 0.0)) {
    throw domain_error("frequency must be positive");
  }
  std::size_t rows = columns.empty() ? 0 : columns.front().size();
  std::vector<K> idx;
  idx.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) idx.push_back(start.shifted_by(double(i) / frequency));
  return frame<K>(std::move(names), std::move(idx), std::move(columns), frequency);
}

}  // namespace ordseries
