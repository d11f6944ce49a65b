#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ordseries {

// Relative tolerance used whenever a real offset has to land on a whole grid
// step (shifts, regularity checks, frequency inference).
inline constexpr double grid_tolerance = 1e-8;

// Epsilon of the snap rule mapping reals onto month/quarter grids: the month
// of x is floor(12 * x + 1e-4), so values a hair below a boundary still land
// on the month they encode.
inline constexpr double period_snap_eps = 1e-4;

namespace detail {

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

inline bool nearly_integer(double x) {
  return std::abs(x - std::round(x)) <= grid_tolerance * std::max(1.0, std::abs(x));
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw domain_error(std::string(what) + " overflows");
  return out;
}

// Shift amounts arrive as reals on the kind's numeric axis; they must encode
// a whole number of the kind's grains.
inline std::int64_t whole_grains(double offset, double grains_per_unit, const char* kind) {
  double g = offset * grains_per_unit;
  if (!std::isfinite(g) || !nearly_integer(g) ||
      std::abs(g) > 9.0e18) {
    throw domain_error(std::string(kind) + " shift must be a whole number of grid steps");
  }
  return std::llround(g);
}

struct civil_date {
  int year;
  unsigned month;  // 1..12
  unsigned day;    // 1..31
};

// year_month_day holds years in [-32767, 32767]; reject day counts outside.
inline constexpr std::int64_t max_civil_days = 11967900;

inline civil_date to_civil(std::int64_t days) {
  if (days < -max_civil_days || days > max_civil_days) {
    throw domain_error("date out of the representable calendar range");
  }
  std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{static_cast<std::chrono::days::rep>(days)}}};
  return {int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day())};
}

inline bool civil_ok(int y, unsigned m, unsigned d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  return ymd.ok();
}

inline std::int64_t from_civil(int y, unsigned m, unsigned d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

inline unsigned days_in_month(int y, unsigned m) {
  std::chrono::year_month_day_last last{std::chrono::year{y},
                                        std::chrono::month_day_last{std::chrono::month{m}}};
  return unsigned(last.day());
}

inline constexpr const char* month_abbrev[12] = {"Jan", "Feb", "Mar", "Apr",
                                                 "May", "Jun", "Jul", "Aug",
                                                 "Sep", "Oct", "Nov", "Dec"};

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline int digits_value(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

// Shortest decimal text that round-trips the value through parse_real.
inline std::string shortest_real_text(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

inline std::optional<double> parse_real_text(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<std::int64_t> parse_int_text(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

// An index kind is a regular, totally ordered value type with a canonical
// text form (to_text / parse round-trip) and a display form for tables.
template <typename K>
concept IndexKind = std::regular<K> && std::totally_ordered<K> &&
    requires(const K& v, std::string_view text) {
      { K::kind_name() } -> std::convertible_to<std::string_view>;
      { v.to_text() } -> std::convertible_to<std::string>;
      { v.to_display() } -> std::convertible_to<std::string>;
      { K::parse(text) } -> std::same_as<std::optional<K>>;
    };

// Kinds that project onto a real axis, order preserved.
template <typename K>
concept ProjectableIndex = IndexKind<K> && requires(const K& v) {
  { v.to_numeric() } -> std::convertible_to<double>;
};

// Kinds that can be translated along that axis and recovered from it.
template <typename K>
concept ShiftableIndex = ProjectableIndex<K> && requires(const K& v, double offset) {
  { v.shifted_by(offset) } -> std::same_as<K>;
  { K::from_numeric(offset) } -> std::same_as<K>;
};

// Calendar date, stored as days since 1970-01-01 (proleptic Gregorian).
class date_index {
 public:
  constexpr date_index() = default;
  constexpr explicit date_index(std::int64_t days) : days_(days) {}

  static date_index from_civil(int year, unsigned month, unsigned day) {
    if (!detail::civil_ok(year, month, day)) throw domain_error("invalid calendar date");
    return date_index(detail::from_civil(year, month, day));
  }

  static constexpr std::string_view kind_name() { return "date"; }

  constexpr std::int64_t days() const { return days_; }
  int year() const { return detail::to_civil(days_).year; }
  unsigned month() const { return detail::to_civil(days_).month; }
  unsigned day() const { return detail::to_civil(days_).day; }

  double to_numeric() const { return double(days_); }

  date_index shifted_by(double offset) const {
    return date_index(
        detail::checked_add(days_, detail::whole_grains(offset, 1.0, "date"), "date shift"));
  }

  static date_index from_numeric(double x) {
    if (!std::isfinite(x) || std::abs(x) > 9.0e18) throw domain_error("date value out of range");
    return date_index(std::llround(x));
  }

  std::string to_text() const {
    auto c = detail::to_civil(days_);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.year, c.month, c.day);
    return buf;
  }

  std::string to_display() const { return to_text(); }

  static std::optional<date_index> parse(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto ys = s.substr(0, 4), ms = s.substr(5, 2), ds = s.substr(8, 2);
    if (!detail::all_digits(ys) || !detail::all_digits(ms) || !detail::all_digits(ds)) {
      return std::nullopt;
    }
    int y = detail::digits_value(ys);
    unsigned m = unsigned(detail::digits_value(ms)), d = unsigned(detail::digits_value(ds));
    if (!detail::civil_ok(y, m, d)) return std::nullopt;
    return date_index(detail::from_civil(y, m, d));
  }

  friend constexpr auto operator<=>(date_index, date_index) = default;

 private:
  std::int64_t days_ = 0;
};

// Instant in civil time, stored as seconds since 1970-01-01T00:00:00 (no
// leap seconds, no zone). Displays as a bare date at midnight.
class timestamp_index {
 public:
  constexpr timestamp_index() = default;
  constexpr explicit timestamp_index(std::int64_t seconds) : seconds_(seconds) {}

  static constexpr std::string_view kind_name() { return "timestamp"; }

  constexpr std::int64_t seconds() const { return seconds_; }

  double to_numeric() const { return double(seconds_); }

  timestamp_index shifted_by(double offset) const {
    return timestamp_index(detail::checked_add(
        seconds_, detail::whole_grains(offset, 1.0, "timestamp"), "timestamp shift"));
  }

  static timestamp_index from_numeric(double x) {
    if (!std::isfinite(x) || std::abs(x) > 9.0e18) {
      throw domain_error("timestamp value out of range");
    }
    return timestamp_index(std::llround(x));
  }

  std::string to_text() const {
    auto [date, tod] = split();
    auto c = detail::to_civil(date);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", c.year, c.month, c.day,
                  int(tod / 3600), int(tod / 60 % 60), int(tod % 60));
    return buf;
  }

  std::string to_display() const {
    auto [date, tod] = split();
    if (tod == 0) return date_index(date).to_text();
    return to_text();
  }

  static std::optional<timestamp_index> parse(std::string_view s) {
    if (auto d = date_index::parse(s)) {
      return timestamp_index(d->days() * 86400);
    }
    if (s.size() != 19 || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' || s[16] != ':') {
      return std::nullopt;
    }
    auto d = date_index::parse(s.substr(0, 10));
    if (!d) return std::nullopt;
    auto hs = s.substr(11, 2), ms = s.substr(14, 2), ss = s.substr(17, 2);
    if (!detail::all_digits(hs) || !detail::all_digits(ms) || !detail::all_digits(ss)) {
      return std::nullopt;
    }
    int h = detail::digits_value(hs), mi = detail::digits_value(ms), se = detail::digits_value(ss);
    if (h > 23 || mi > 59 || se > 59) return std::nullopt;
    return timestamp_index(d->days() * 86400 + h * 3600 + mi * 60 + se);
  }

  friend constexpr auto operator<=>(timestamp_index, timestamp_index) = default;

 private:
  std::pair<std::int64_t, std::int64_t> split() const {
    std::int64_t date = detail::floor_div(seconds_, 86400);
    return {date, seconds_ - date * 86400};
  }

  std::int64_t seconds_ = 0;
};

// Month on the year axis, stored as months since January of year 0. Projects
// to year + (month - 1) / 12.
class year_month {
 public:
  constexpr year_month() = default;
  constexpr explicit year_month(std::int64_t months) : months_(months) {}

  static year_month from_parts(std::int64_t year, int month) {
    if (month < 1 || month > 12) throw domain_error("month outside 1..12");
    return year_month(year * 12 + (month - 1));
  }

  // Snap a real onto the month grid: floor(12 x + eps).
  static year_month from_real(double x) {
    if (!std::isfinite(x) || std::abs(x) > 7.0e17) throw domain_error("yearmonth value out of range");
    return year_month(std::int64_t(std::floor(12.0 * x + period_snap_eps)));
  }

  static constexpr std::string_view kind_name() { return "yearmonth"; }

  constexpr std::int64_t months() const { return months_; }
  std::int64_t year() const { return detail::floor_div(months_, 12); }
  int month() const { return int(detail::floor_mod(months_, 12)) + 1; }

  double to_numeric() const { return double(year()) + (month() - 1) / 12.0; }

  year_month shifted_by(double offset) const {
    return year_month(detail::checked_add(
        months_, detail::whole_grains(offset, 12.0, "yearmonth"), "yearmonth shift"));
  }

  static year_month from_numeric(double x) { return from_real(x); }

  std::string to_text() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04lld-%02d", (long long)year(), month());
    return buf;
  }

  std::string to_display() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%s %04lld", detail::month_abbrev[month() - 1],
                  (long long)year());
    return buf;
  }

  static std::optional<year_month> parse(std::string_view s) {
    if (s.size() != 7 || s[4] != '-') return std::nullopt;
    auto ys = s.substr(0, 4), ms = s.substr(5, 2);
    if (!detail::all_digits(ys) || !detail::all_digits(ms)) return std::nullopt;
    int m = detail::digits_value(ms);
    if (m < 1 || m > 12) return std::nullopt;
    return from_parts(detail::digits_value(ys), m);
  }

  friend constexpr auto operator<=>(year_month, year_month) = default;

 private:
  std::int64_t months_ = 0;
};

// Quarter on the year axis, stored as quarters since Q1 of year 0.
class year_quarter {
 public:
  constexpr year_quarter() = default;
  constexpr explicit year_quarter(std::int64_t quarters) : quarters_(quarters) {}

  static year_quarter from_parts(std::int64_t year, int quarter) {
    if (quarter < 1 || quarter > 4) throw domain_error("quarter outside 1..4");
    return year_quarter(year * 4 + (quarter - 1));
  }

  static year_quarter from_real(double x) {
    if (!std::isfinite(x) || std::abs(x) > 2.0e18) throw domain_error("yearquarter value out of range");
    return year_quarter(std::int64_t(std::floor(4.0 * x + period_snap_eps)));
  }

  static constexpr std::string_view kind_name() { return "yearquarter"; }

  constexpr std::int64_t quarters() const { return quarters_; }
  std::int64_t year() const { return detail::floor_div(quarters_, 4); }
  int quarter() const { return int(detail::floor_mod(quarters_, 4)) + 1; }

  double to_numeric() const { return double(year()) + (quarter() - 1) / 4.0; }

  year_quarter shifted_by(double offset) const {
    return year_quarter(detail::checked_add(
        quarters_, detail::whole_grains(offset, 4.0, "yearquarter"), "yearquarter shift"));
  }

  static year_quarter from_numeric(double x) { return from_real(x); }

  std::string to_text() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04lld-Q%d", (long long)year(), quarter());
    return buf;
  }

  std::string to_display() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04lld Q%d", (long long)year(), quarter());
    return buf;
  }

  static std::optional<year_quarter> parse(std::string_view s) {
    if (s.size() != 7 || s[4] != '-' || s[5] != 'Q') return std::nullopt;
    auto ys = s.substr(0, 4);
    if (!detail::all_digits(ys) || s[6] < '1' || s[6] > '4') return std::nullopt;
    return from_parts(detail::digits_value(ys), s[6] - '0');
  }

  friend constexpr auto operator<=>(year_quarter, year_quarter) = default;

 private:
  std::int64_t quarters_ = 0;
};

// Plain integer positions.
class int_index {
 public:
  constexpr int_index() = default;
  constexpr explicit int_index(std::int64_t value) : value_(value) {}

  static constexpr std::string_view kind_name() { return "int"; }

  constexpr std::int64_t value() const { return value_; }

  double to_numeric() const { return double(value_); }

  int_index shifted_by(double offset) const {
    return int_index(
        detail::checked_add(value_, detail::whole_grains(offset, 1.0, "int"), "int shift"));
  }

  static int_index from_numeric(double x) {
    if (!std::isfinite(x) || std::abs(x) > 9.0e18) throw domain_error("int value out of range");
    return int_index(std::llround(x));
  }

  std::string to_text() const { return std::to_string(value_); }
  std::string to_display() const { return to_text(); }

  static std::optional<int_index> parse(std::string_view s) {
    auto v = detail::parse_int_text(s);
    if (!v) return std::nullopt;
    return int_index(*v);
  }

  friend constexpr auto operator<=>(int_index, int_index) = default;

 private:
  std::int64_t value_ = 0;
};

// Real positions. Values are always finite; ordering and matching are exact.
class real_index {
 public:
  constexpr real_index() = default;
  explicit real_index(double value) : value_(value) {
    if (!std::isfinite(value)) throw domain_error("real index values must be finite");
  }

  static constexpr std::string_view kind_name() { return "real"; }

  constexpr double value() const { return value_; }

  double to_numeric() const { return value_; }

  real_index shifted_by(double offset) const {
    double v = value_ + offset;
    if (!std::isfinite(v)) throw domain_error("real shift overflows");
    return real_index(v);
  }

  static real_index from_numeric(double x) { return real_index(x); }

  std::string to_text() const { return detail::shortest_real_text(value_); }
  std::string to_display() const { return to_text(); }

  static std::optional<real_index> parse(std::string_view s) {
    auto v = detail::parse_real_text(s);
    if (!v) return std::nullopt;
    return real_index(*v);
  }

  friend constexpr auto operator<=>(const real_index&, const real_index&) = default;

 private:
  double value_ = 0.0;
};

static_assert(ShiftableIndex<date_index>);
static_assert(ShiftableIndex<timestamp_index>);
static_assert(ShiftableIndex<year_month>);
static_assert(ShiftableIndex<year_quarter>);
static_assert(ShiftableIndex<int_index>);
static_assert(ShiftableIndex<real_index>);

// Conversions between the calendar kinds.

inline year_month yearmonth_from_real(double x) { return year_month::from_real(x); }

// Date within the month, frac 0 giving the first day and frac 1 the last.
inline date_index yearmonth_to_date(year_month ym, double frac = 0.0) {
  if (!(frac >= 0.0 && frac <= 1.0)) throw domain_error("frac outside [0, 1]");
  std::int64_t y = ym.year();
  if (y < -32000 || y > 32000) throw domain_error("yearmonth outside the calendar range");
  unsigned m = unsigned(ym.month());
  std::int64_t first = detail::from_civil(int(y), m, 1);
  unsigned dim = detail::days_in_month(int(y), m);
  return date_index(first + std::int64_t(std::floor(frac * (dim - 1))));
}

inline year_quarter yearmonth_to_quarter(year_month ym) {
  return year_quarter(detail::floor_div(ym.months(), 3));
}

inline year_month yearmonth_of(date_index d) {
  auto c = detail::to_civil(d.days());
  return year_month::from_parts(c.year, int(c.month));
}

inline year_quarter yearquarter_of(date_index d) { return yearmonth_to_quarter(yearmonth_of(d)); }

inline date_index first_of_month(date_index d) {
  auto c = detail::to_civil(d.days());
  return date_index(detail::from_civil(c.year, c.month, 1));
}

inline date_index yearquarter_to_date(year_quarter q, double frac = 0.0) {
  if (!(frac >= 0.0 && frac <= 1.0)) throw domain_error("frac outside [0, 1]");
  year_month ym{q.quarters() * 3};
  std::int64_t first = yearmonth_to_date(ym, 0.0).days();
  std::int64_t next = yearmonth_to_date(year_month{ym.months() + 3}, 0.0).days();
  return date_index(first + std::int64_t(std::floor(frac * double(next - first - 1))));
}

inline date_index date_of(timestamp_index t) {
  return date_index(detail::floor_div(t.seconds(), 86400));
}

inline timestamp_index timestamp_of(date_index d) { return timestamp_index(d.days() * 86400); }

}  // namespace ordseries
