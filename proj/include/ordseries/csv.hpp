#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "index.hpp"
#include "regular.hpp"
#include "series.hpp"

namespace ordseries {

enum class index_kind_id { date, timestamp, yearmonth, yearquarter, integer, real };

inline constexpr const char* kind_id_name(index_kind_id k) {
  switch (k) {
    case index_kind_id::date: return "date";
    case index_kind_id::timestamp: return "timestamp";
    case index_kind_id::yearmonth: return "yearmonth";
    case index_kind_id::yearquarter: return "yearquarter";
    case index_kind_id::integer: return "int";
    case index_kind_id::real: return "real";
  }
  return "?";
}

inline std::optional<index_kind_id> kind_id_from_name(std::string_view name) {
  if (name == "date") return index_kind_id::date;
  if (name == "timestamp") return index_kind_id::timestamp;
  if (name == "yearmonth") return index_kind_id::yearmonth;
  if (name == "yearquarter") return index_kind_id::yearquarter;
  if (name == "int") return index_kind_id::integer;
  if (name == "real") return index_kind_id::real;
  return std::nullopt;
}

// Run fn with the index type selected at runtime.
template <typename Fn>
decltype(auto) with_kind(index_kind_id k, Fn&& fn) {
  switch (k) {
    case index_kind_id::date: return fn(std::type_identity<date_index>{});
    case index_kind_id::timestamp: return fn(std::type_identity<timestamp_index>{});
    case index_kind_id::yearmonth: return fn(std::type_identity<year_month>{});
    case index_kind_id::yearquarter: return fn(std::type_identity<year_quarter>{});
    case index_kind_id::integer: return fn(std::type_identity<int_index>{});
    case index_kind_id::real: return fn(std::type_identity<real_index>{});
  }
  throw domain_error("unknown index kind");
}

template <IndexKind K>
constexpr index_kind_id kind_id_of() {
  if constexpr (std::is_same_v<K, date_index>) return index_kind_id::date;
  if constexpr (std::is_same_v<K, timestamp_index>) return index_kind_id::timestamp;
  if constexpr (std::is_same_v<K, year_month>) return index_kind_id::yearmonth;
  if constexpr (std::is_same_v<K, year_quarter>) return index_kind_id::yearquarter;
  if constexpr (std::is_same_v<K, int_index>) return index_kind_id::integer;
  return index_kind_id::real;
}

// A loaded table of any built-in index kind.
using any_table =
    std::variant<series<date_index>, frame<date_index>, series<timestamp_index>,
                 frame<timestamp_index>, series<year_month>, frame<year_month>,
                 series<year_quarter>, frame<year_quarter>, series<int_index>, frame<int_index>,
                 series<real_index>, frame<real_index>>;

using any_grid =
    std::variant<regular_grid<date_index>, regular_grid<timestamp_index>,
                 regular_grid<year_month>, regular_grid<year_quarter>, regular_grid<int_index>,
                 regular_grid<real_index>>;

inline index_kind_id kind_of(const any_table& t) {
  return std::visit([](const auto& s) { return kind_id_of<index_t<decltype(s)>>(); }, t);
}

inline bool holds_series(const any_table& t) {
  return std::visit(
      [](const auto& s) {
        return !requires { s.names(); };
      },
      t);
}

inline std::size_t row_count_of(const any_table& t) {
  return std::visit([](const auto& s) { return s.row_count(); }, t);
}

inline std::size_t column_count_of(const any_table& t) {
  return std::visit([](const auto& s) { return s.column_count(); }, t);
}

struct csv_options {
  std::optional<index_kind_id> kind;  // autodetected when absent
  on_duplicate duplicates = on_duplicate::error;
};

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline cell parse_cell(const std::string& text, std::size_t line_no) {
  if (text.empty() || text == "NA") return std::nullopt;
  if (text == "NaN") return cell{std::nan("")};
  if (text == "Inf") return cell{std::numeric_limits<double>::infinity()};
  if (text == "-Inf") return cell{-std::numeric_limits<double>::infinity()};
  auto v = parse_real_text(text);
  if (!v) {
    throw parse_error("line " + std::to_string(line_no) + ": invalid number '" + text + "'");
  }
  return cell{*v};
}

inline std::string cell_to_csv(const cell& c) {
  if (!c) return "NA";
  if (std::isnan(*c)) return "NaN";
  if (std::isinf(*c)) return *c > 0 ? "Inf" : "-Inf";
  return shortest_real_text(*c);
}

template <IndexKind K>
std::optional<std::vector<K>> try_parse_all(const std::vector<std::string>& texts) {
  std::vector<K> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    auto v = K::parse(t);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

template <IndexKind K>
any_table build_table(std::vector<K> index, std::vector<std::string> names,
                      std::vector<std::vector<cell>> columns, on_duplicate dup) {
  if (names.size() == 1) {
    return make_series<K>(std::move(names.front()), std::move(index), std::move(columns.front()),
                          dup);
  }
  return make_frame<K>(std::move(names), std::move(index), std::move(columns), dup);
}

inline constexpr index_kind_id autodetect_order[] = {
    index_kind_id::date,        index_kind_id::timestamp, index_kind_id::yearmonth,
    index_kind_id::yearquarter, index_kind_id::integer,   index_kind_id::real,
};

inline void check_emit_name(const std::string& name) {
  if (name.find(',') != std::string::npos || name.find('\n') != std::string::npos ||
      name.find('\r') != std::string::npos) {
    throw domain_error("column name contains a delimiter: " + name);
  }
}

}  // namespace detail

// Parse the library's CSV dialect: comma-separated, mandatory header whose
// first field is the index column, `NA` or an empty field for a missing
// cell, no quoting. The index kind is autodetected (date, timestamp,
// yearmonth, yearquarter, int, real in that order) unless pinned in options.
inline any_table parse_csv(std::string_view text, const csv_options& opt = {}) {
  auto lines = detail::split_lines(text);
  if (lines.empty()) throw parse_error("missing header line");
  auto header = detail::split_fields(lines.front());
  if (header.size() < 2) {
    throw parse_error("header must name the index and at least one data column");
  }
  std::vector<std::string> names(header.begin() + 1, header.end());

  std::vector<std::string> index_texts;
  std::vector<std::vector<cell>> columns(names.size());
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto fields = detail::split_fields(lines[li]);
    if (fields.size() != header.size()) {
      throw parse_error("line " + std::to_string(li + 1) + ": expected " +
                        std::to_string(header.size()) + " fields, got " +
                        std::to_string(fields.size()));
    }
    index_texts.push_back(fields.front());
    for (std::size_t c = 0; c < names.size(); ++c) {
      columns[c].push_back(detail::parse_cell(fields[c + 1], li + 1));
    }
  }

  if (opt.kind) {
    return with_kind(*opt.kind, [&](auto tag) -> any_table {
      using K = typename decltype(tag)::type;
      std::vector<K> index;
      index.reserve(index_texts.size());
      for (std::size_t i = 0; i < index_texts.size(); ++i) {
        auto v = K::parse(index_texts[i]);
        if (!v) {
          throw parse_error("line " + std::to_string(i + 2) + ": invalid " +
                            std::string(K::kind_name()) + " index '" + index_texts[i] + "'");
        }
        index.push_back(*v);
      }
      return detail::build_table(std::move(index), names, columns, opt.duplicates);
    });
  }

  for (index_kind_id cand : detail::autodetect_order) {
    auto built = with_kind(cand, [&](auto tag) -> std::optional<any_table> {
      using K = typename decltype(tag)::type;
      auto index = detail::try_parse_all<K>(index_texts);
      if (!index) return std::nullopt;
      return detail::build_table(std::move(*index), names, columns, opt.duplicates);
    });
    if (built) return std::move(*built);
  }
  throw parse_error("could not detect the index kind");
}

template <SeriesLike S>
std::string emit_csv(const S& s) {
  std::string out = "Index";
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    std::string name(s.column_name(c));
    detail::check_emit_name(name);
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t r = 0; r < s.row_count(); ++r) {
    out += s.index()[r].to_text();
    for (std::size_t c = 0; c < s.column_count(); ++c) {
      out += ',';
      out += detail::cell_to_csv(s.column(c)[r]);
    }
    out += '\n';
  }
  return out;
}

inline std::string emit_csv(const any_table& t) {
  return std::visit([](const auto& s) { return emit_csv(s); }, t);
}

// Grid exchange format: a comment line carrying start, frequency and shape,
// then a header of column names, then one row of cells per grid step.
template <ShiftableIndex K>
std::string emit_grid_csv(const regular_grid<K>& g) {
  std::string out = "# grid start=" + g.start.to_text() +
                    " freq=" + detail::shortest_real_text(g.frequency) +
                    " shape=" + (g.from_series ? "series" : "frame") + "\n";
  for (std::size_t c = 0; c < g.names.size(); ++c) {
    detail::check_emit_name(g.names[c]);
    if (c) out += ',';
    out += g.names[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < g.step_count(); ++r) {
    for (std::size_t c = 0; c < g.columns.size(); ++c) {
      if (c) out += ',';
      out += detail::cell_to_csv(g.columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

inline std::string emit_grid_csv(const any_grid& g) {
  return std::visit([](const auto& grid) { return emit_grid_csv(grid); }, g);
}

inline any_grid parse_grid_csv(std::string_view text,
                               std::optional<index_kind_id> kind = {}) {
  auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front().rfind("# grid start=", 0) != 0) {
    throw parse_error("missing '# grid start=' header line");
  }
  std::string_view head = std::string_view(lines.front()).substr(13);
  std::size_t freq_at = head.find(" freq=");
  if (freq_at == std::string_view::npos) throw parse_error("grid header missing freq=");
  std::string start_text(head.substr(0, freq_at));
  std::string_view rest = head.substr(freq_at + 6);
  std::size_t shape_at = rest.find(" shape=");
  bool from_series = true;
  std::string freq_text;
  if (shape_at == std::string_view::npos) {
    freq_text = std::string(rest);
  } else {
    freq_text = std::string(rest.substr(0, shape_at));
    std::string_view shape = rest.substr(shape_at + 7);
    if (shape == "frame") {
      from_series = false;
    } else if (shape != "series") {
      throw parse_error("grid shape must be series or frame");
    }
  }
  auto freq = detail::parse_real_text(freq_text);
  if (!freq || !(*freq > 0.0)) throw parse_error("invalid grid frequency '" + freq_text + "'");

  if (lines.size() < 2) throw parse_error("grid is missing its column header");
  auto names = detail::split_fields(lines[1]);
  std::vector<std::vector<cell>> columns(names.size());
  for (std::size_t li = 2; li < lines.size(); ++li) {
    auto fields = detail::split_fields(lines[li]);
    if (fields.size() != names.size()) {
      throw parse_error("line " + std::to_string(li + 1) + ": expected " +
                        std::to_string(names.size()) + " fields, got " +
                        std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < names.size(); ++c) {
      columns[c].push_back(detail::parse_cell(fields[c], li + 1));
    }
  }

  auto build = [&](auto tag) -> std::optional<any_grid> {
    using K = typename decltype(tag)::type;
    auto start = K::parse(start_text);
    if (!start) return std::nullopt;
    regular_grid<K> g;
    g.start = *start;
    g.frequency = *freq;
    g.from_series = from_series;
    g.names = names;
    g.columns = columns;
    return any_grid(std::move(g));
  };
  if (kind) {
    auto g = with_kind(*kind, build);
    if (!g) {
      throw parse_error("invalid " + std::string(kind_id_name(*kind)) + " grid start '" +
                        start_text + "'");
    }
    return std::move(*g);
  }
  for (index_kind_id cand : detail::autodetect_order) {
    auto g = with_kind(cand, build);
    if (g) return std::move(*g);
  }
  throw parse_error("could not detect the grid index kind");
}

inline any_table table_from_grid(const any_grid& g) {
  return std::visit(
      [](const auto& grid) -> any_table {
        if (grid.from_series) return series_from_grid(grid);
        return frame_from_grid(grid);
      },
      g);
}

inline any_grid grid_from_table(const any_table& t) {
  return std::visit([](const auto& s) { return any_grid(to_grid(s)); }, t);
}

}  // namespace ordseries
