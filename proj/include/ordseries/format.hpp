#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "series.hpp"

namespace ordseries {

enum class print_style { horizontal, vertical, plain };

// Significant digits shown by the table renderer.
inline constexpr int display_digits = 7;

// Tables wrap at this many character columns.
inline constexpr std::size_t display_width = 80;

namespace detail {

struct sig_info {
  int sig;    // significant digits after dropping trailing mantissa zeros
  int exp10;  // decimal exponent of the rounded value
};

inline sig_info sig_digits_of(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  const char* e = std::strchr(buf, 'e');
  int exp10 = std::atoi(e + 1);
  int sig = 0, seen = 0;
  for (const char* p = buf; p != e; ++p) {
    if (*p >= '0' && *p <= '9') {
      ++seen;
      if (*p != '0') sig = seen;
    }
  }
  if (sig == 0) sig = 1;
  return {sig, exp10};
}

// Decimal places needed to show x to `digits` significant digits in fixed
// notation.
inline int decimals_needed(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return 0;
  auto [sig, exp10] = sig_digits_of(x, digits);
  return std::max(0, sig - 1 - exp10);
}

inline std::string fixed_text(double x, int decimals) {
  if (x == 0.0) x = 0.0;  // fold -0 into 0
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline std::string cell_text(const cell& c, int decimals) {
  if (!c) return "NA";
  if (std::isnan(*c)) return "NaN";
  if (std::isinf(*c)) return *c > 0 ? "Inf" : "-Inf";
  return fixed_text(*c, decimals);
}

// All cells of a table share one fixed-decimal format, sized for the cell
// that needs the most places (capped at 15).
template <SeriesLike S>
int common_decimals(const S& s) {
  int r = 0;
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    for (const cell& x : s.column(c)) {
      if (x && std::isfinite(*x)) r = std::max(r, decimals_needed(*x, display_digits));
    }
  }
  return std::min(r, 15);
}

inline std::string rjust(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

inline std::string ljust(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

// Two aligned rows per chunk, labels above values, each field followed by
// one space, wrapped to the display width.
inline void render_horizontal_pairs(std::string& out, const std::vector<std::string>& labels,
                                    const std::vector<std::string>& values) {
  std::size_t w = 1;
  for (const auto& s : labels) w = std::max(w, s.size());
  for (const auto& s : values) w = std::max(w, s.size());
  std::size_t per = std::max<std::size_t>(1, display_width / (w + 1));
  for (std::size_t i = 0; i < labels.size(); i += per) {
    std::size_t j = std::min(i + per, labels.size());
    for (std::size_t k = i; k < j; ++k) out += rjust(labels[k], w) + ' ';
    out += '\n';
    for (std::size_t k = i; k < j; ++k) out += rjust(values[k], w) + ' ';
    out += '\n';
  }
}

inline void render_wrapped(std::string& out, const std::vector<std::string>& fields) {
  std::size_t w = 1;
  for (const auto& s : fields) w = std::max(w, s.size());
  std::size_t per = std::max<std::size_t>(1, display_width / (w + 1));
  for (std::size_t i = 0; i < fields.size(); i += per) {
    std::size_t j = std::min(i + per, fields.size());
    for (std::size_t k = i; k < j; ++k) out += rjust(fields[k], w) + ' ';
    out += '\n';
  }
}

}  // namespace detail

// Lay the table out as text. Horizontal pairs index and value rows (the
// series default), vertical prints one labeled row per observation (the
// frame default), plain prints the cell block and then the index block.
template <SeriesLike S>
std::string render(const S& s, print_style style) {
  if (s.row_count() == 0) return "<empty series>\n";

  const int dec = detail::common_decimals(s);
  std::vector<std::string> labels;
  labels.reserve(s.row_count());
  for (const auto& v : s.index()) labels.push_back(v.to_display());

  std::vector<std::vector<std::string>> cols(s.column_count());
  std::size_t value_w = 1;
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    cols[c].reserve(s.row_count());
    for (const cell& x : s.column(c)) {
      cols[c].push_back(detail::cell_text(x, dec));
      value_w = std::max(value_w, cols[c].back().size());
    }
  }

  std::string out;
  if (style == print_style::horizontal && s.column_count() == 1) {
    detail::render_horizontal_pairs(out, labels, cols.front());
    return out;
  }

  if (style == print_style::plain) {
    if (s.column_count() == 1) {
      detail::render_wrapped(out, cols.front());
    } else {
      std::vector<std::size_t> cw(s.column_count());
      for (std::size_t c = 0; c < s.column_count(); ++c) {
        cw[c] = std::max(value_w, std::string(s.column_name(c)).size());
        out += ' ' + detail::ljust(std::string(s.column_name(c)), cw[c]);
      }
      out += '\n';
      for (std::size_t r = 0; r < s.row_count(); ++r) {
        for (std::size_t c = 0; c < s.column_count(); ++c) {
          out += ' ' + detail::ljust(detail::rjust(cols[c][r], value_w), cw[c]);
        }
        out += '\n';
      }
    }
    out += "Index:\n";
    detail::render_wrapped(out, labels);
    return out;
  }

  // vertical, and the fallback for horizontal frames
  std::size_t iw = 1;
  for (const auto& l : labels) iw = std::max(iw, l.size());
  std::vector<std::size_t> cw(s.column_count());
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    cw[c] = std::max(value_w, std::string(s.column_name(c)).size());
  }
  constexpr bool is_frame = requires { s.names(); };
  if (s.column_count() > 1 || is_frame) {
    out += std::string(iw, ' ');
    for (std::size_t c = 0; c < s.column_count(); ++c) {
      out += ' ' + detail::ljust(std::string(s.column_name(c)), cw[c]);
    }
    out += '\n';
  }
  for (std::size_t r = 0; r < s.row_count(); ++r) {
    out += detail::ljust(labels[r], iw);
    for (std::size_t c = 0; c < s.column_count(); ++c) {
      // Values line up on the pooled value width; a longer column name
      // widens the band to the right.
      out += ' ' + detail::ljust(detail::rjust(cols[c][r], value_w), cw[c]);
    }
    out += '\n';
  }
  return out;
}

template <IndexKind K>
std::string render(const series<K>& s) {
  return render(s, print_style::horizontal);
}

template <IndexKind K>
std::string render(const frame<K>& f) {
  return render(f, print_style::vertical);
}

}  // namespace ordseries
