// Command-line surface: CSV in, CSV/text/SVG out, one subcommand per
// operation family. Exit codes: 0 ok, 2 input error, 3 semantic error.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <ordseries/ordseries.hpp>

namespace ord = ordseries;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ord::parse_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ord::parse_error("cannot open output file: " + out_path);
  out << text;
}

ord::on_duplicate dup_from_name(const std::string& name) {
  if (name == "error") return ord::on_duplicate::error;
  if (name == "first") return ord::on_duplicate::keep_first;
  if (name == "mean") return ord::on_duplicate::mean;
  throw ord::parse_error("unknown duplicate policy '" + name + "'");
}

// Index kind priority: explicit flag, then ORDSERIES_INDEX_KIND, then
// autodetection.
std::optional<ord::index_kind_id> resolve_kind(const std::string& flag) {
  if (!flag.empty()) {
    auto k = ord::kind_id_from_name(flag);
    if (!k) throw ord::parse_error("unknown index kind '" + flag + "'");
    return k;
  }
  if (const char* env = std::getenv("ORDSERIES_INDEX_KIND"); env && *env) {
    auto k = ord::kind_id_from_name(env);
    if (!k) {
      throw ord::parse_error(std::string("unknown index kind in ORDSERIES_INDEX_KIND: '") + env +
                             "'");
    }
    return k;
  }
  return std::nullopt;
}

ord::any_table load_table(const std::string& path, const std::string& kind_flag,
                          const std::string& dup_flag) {
  ord::csv_options opt;
  opt.kind = resolve_kind(kind_flag);
  opt.duplicates = dup_from_name(dup_flag);
  return ord::parse_csv(read_input(path), opt);
}

std::map<std::string, std::string> parse_style_map(const std::vector<std::string>& entries,
                                                   const char* what) {
  std::map<std::string, std::string> out;
  for (const auto& e : entries) {
    auto eq = e.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ord::parse_error(std::string(what) + " entries must look like NAME=VALUE: '" + e +
                             "'");
    }
    out[e.substr(0, eq)] = e.substr(eq + 1);
  }
  return out;
}

// Run fn(column) for every column position, spreading the work over up to
// `threads` workers. Results land by position, so the reassembled output
// never depends on scheduling.
template <typename Fn>
void for_each_column(std::size_t columns, unsigned threads, Fn fn) {
  if (threads <= 1 || columns <= 1) {
    for (std::size_t c = 0; c < columns; ++c) fn(c);
    return;
  }
  unsigned workers = std::min<unsigned>(threads, unsigned(columns));
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_lock;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < columns; c += workers) fn(c);
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Apply a per-column series transform across a frame, optionally in
// parallel, and reassemble in column order.
template <ord::IndexKind K, typename ColFn>
ord::frame<K> map_columns(const ord::frame<K>& f, unsigned threads, ColFn col_fn) {
  std::vector<ord::series<K>> done(f.column_count());
  for_each_column(f.column_count(), threads,
                  [&](std::size_t c) { done[c] = col_fn(f.column_series(c)); });
  std::vector<std::vector<ord::cell>> columns;
  columns.reserve(done.size());
  for (const auto& s : done) columns.push_back(ord::coredata(s));
  return ord::frame<K>(f.names(), done.front().index(), std::move(columns),
                       done.front().frequency());
}

struct print_options {
  std::string input, out, kind, dup = "error", style = "auto";
};

int run_print(const print_options& o) {
  ord::any_table t = load_table(o.input, o.kind, o.dup);
  std::string text = std::visit(
      [&](const auto& s) {
        if (o.style == "auto") return ord::render(s);
        if (o.style == "horizontal") return ord::render(s, ord::print_style::horizontal);
        if (o.style == "vertical") return ord::render(s, ord::print_style::vertical);
        if (o.style == "plain") return ord::render(s, ord::print_style::plain);
        throw ord::parse_error("unknown style '" + o.style + "'");
      },
      t);
  write_output(text, o.out);
  return 0;
}

struct plot_options {
  std::string input, out, kind, dup = "error", layout = "panels";
  int width = 800, height = 480;
  std::vector<std::string> colors, lines, markers;
};

int run_plot(const plot_options& o) {
  ord::plot_spec spec;
  if (o.layout == "single") {
    spec.layout = ord::plot_spec::layout_kind::single;
  } else if (o.layout != "panels") {
    throw ord::parse_error("unknown layout '" + o.layout + "'");
  }
  if (o.width < 100 || o.height < 80) throw ord::parse_error("plot dimensions too small");
  spec.width = o.width;
  spec.height = o.height;
  spec.colors = parse_style_map(o.colors, "--color");
  spec.line_types = parse_style_map(o.lines, "--line");
  spec.markers = parse_style_map(o.markers, "--marker");
  for (const auto& [name, v] : spec.line_types) {
    if (v != "solid" && v != "dash" && v != "dot" && v != "dashdot") {
      throw ord::parse_error("unknown line type '" + v + "'");
    }
  }
  for (const auto& [name, v] : spec.markers) {
    if (v != "none" && v != "circle" && v != "square" && v != "diamond" && v != "cross") {
      throw ord::parse_error("unknown marker '" + v + "'");
    }
  }
  ord::any_table t = load_table(o.input, o.kind, o.dup);
  std::string svg = std::visit([&](const auto& s) { return ord::render_svg(s, spec); }, t);
  write_output(svg, o.out);
  return 0;
}

struct merge_options {
  std::vector<std::string> inputs;
  std::string out, kind, dup = "error", mode = "union", fill = "NA";
};

int run_merge(const merge_options& o) {
  ord::merge_spec spec;
  if (o.mode == "union") {
    spec.mode = ord::merge_mode::union_mode;
  } else if (o.mode == "inter" || o.mode == "intersection") {
    spec.mode = ord::merge_mode::intersection;
  } else if (o.mode == "left") {
    spec.mode = ord::merge_mode::left;
  } else if (o.mode == "right") {
    spec.mode = ord::merge_mode::right;
  } else {
    throw ord::parse_error("unknown merge mode '" + o.mode + "'");
  }
  if (o.fill != "NA" && !o.fill.empty()) {
    auto v = ord::detail::parse_real_text(o.fill);
    if (!v) throw ord::parse_error("--fill needs a number or NA");
    spec.fill = *v;
  }

  std::vector<ord::any_table> tables;
  tables.reserve(o.inputs.size());
  for (const auto& path : o.inputs) tables.push_back(load_table(path, o.kind, o.dup));
  for (const auto& t : tables) {
    if (ord::kind_of(t) != ord::kind_of(tables.front())) {
      throw ord::kind_mismatch_error("merge inputs must share one index kind");
    }
  }
  std::string text = ord::with_kind(ord::kind_of(tables.front()), [&](auto tag) {
    using K = typename decltype(tag)::type;
    std::vector<ord::merge_part<K>> parts;
    parts.reserve(tables.size());
    for (const auto& t : tables) {
      if (const auto* s = std::get_if<ord::series<K>>(&t)) {
        parts.emplace_back(*s);
      } else {
        parts.emplace_back(std::get<ord::frame<K>>(t));
      }
    }
    return ord::emit_csv(ord::merge_aligned(parts, spec));
  });
  write_output(text, o.out);
  return 0;
}

struct aggregate_options {
  std::string input, out, kind, dup = "error", by, stat = "mean";
  bool keep_missing = false;
};

int run_aggregate(const aggregate_options& o) {
  auto stat_kind = ord::stat_from_name(o.stat);
  if (!stat_kind) throw ord::parse_error("unknown statistic '" + o.stat + "'");
  ord::group_stat stat = ord::builtin_stat(*stat_kind, !o.keep_missing);

  ord::any_table t = load_table(o.input, o.kind, o.dup);
  ord::any_table grouped = std::visit(
      [&](const auto& s) -> ord::any_table {
        using K = ord::index_t<decltype(s)>;
        if (o.by == "firstofmonth") {
          if constexpr (std::is_same_v<K, ord::date_index>) {
            return ord::aggregate_by(
                s, [](const K& d) { return ord::first_of_month(d); }, stat);
          } else if constexpr (std::is_same_v<K, ord::timestamp_index>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::first_of_month(ord::date_of(v)); }, stat);
          } else {
            throw ord::capability_error("firstofmonth grouping needs a date or timestamp index");
          }
        }
        if (o.by == "yearmonth") {
          if constexpr (std::is_same_v<K, ord::date_index>) {
            return ord::aggregate_by(s, [](const K& d) { return ord::yearmonth_of(d); }, stat);
          } else if constexpr (std::is_same_v<K, ord::timestamp_index>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::yearmonth_of(ord::date_of(v)); }, stat);
          } else if constexpr (std::is_same_v<K, ord::year_month>) {
            return ord::aggregate_by(s, [](const K& v) { return v; }, stat);
          } else if constexpr (std::is_same_v<K, ord::real_index>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::yearmonth_from_real(v.value()); }, stat);
          } else {
            throw ord::capability_error("yearmonth grouping is not defined for this index kind");
          }
        }
        if (o.by == "yearquarter") {
          if constexpr (std::is_same_v<K, ord::date_index>) {
            return ord::aggregate_by(s, [](const K& d) { return ord::yearquarter_of(d); }, stat);
          } else if constexpr (std::is_same_v<K, ord::timestamp_index>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::yearquarter_of(ord::date_of(v)); }, stat);
          } else if constexpr (std::is_same_v<K, ord::year_month>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::yearmonth_to_quarter(v); }, stat);
          } else if constexpr (std::is_same_v<K, ord::year_quarter>) {
            return ord::aggregate_by(s, [](const K& v) { return v; }, stat);
          } else if constexpr (std::is_same_v<K, ord::real_index>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::year_quarter::from_real(v.value()); }, stat);
          } else {
            throw ord::capability_error("yearquarter grouping is not defined for this index kind");
          }
        }
        if (o.by == "year") {
          if constexpr (std::is_same_v<K, ord::date_index>) {
            return ord::aggregate_by(
                s, [](const K& d) { return ord::int_index(d.year()); }, stat);
          } else if constexpr (std::is_same_v<K, ord::timestamp_index>) {
            return ord::aggregate_by(
                s, [](const K& v) { return ord::int_index(ord::date_of(v).year()); }, stat);
          } else if constexpr (std::is_same_v<K, ord::year_month> ||
                               std::is_same_v<K, ord::year_quarter>) {
            return ord::aggregate_by(s, [](const K& v) { return ord::int_index(v.year()); },
                                     stat);
          } else if constexpr (std::is_same_v<K, ord::real_index>) {
            return ord::aggregate_by(
                s,
                [](const K& v) { return ord::int_index(std::int64_t(std::floor(v.value()))); },
                stat);
          } else {
            throw ord::capability_error("year grouping is not defined for this index kind");
          }
        }
        throw ord::parse_error("unknown grouping '" + o.by + "'");
      },
      t);
  write_output(ord::emit_csv(grouped), o.out);
  return 0;
}

struct fill_options {
  std::string input, out, kind, dup = "error", method, abscissa = "index";
  bool keep_edges = false;
  unsigned threads = 1;
};

int run_fill(const fill_options& o) {
  ord::any_table t = load_table(o.input, o.kind, o.dup);
  ord::fill_policy policy;
  policy.keep_edges = o.keep_edges;
  if (o.abscissa == "positions") {
    policy.abscissa = ord::interp_abscissa::positions;
  } else if (o.abscissa != "index") {
    throw ord::parse_error("unknown abscissa '" + o.abscissa + "'");
  }

  ord::any_table filled = std::visit(
      [&](const auto& s) -> ord::any_table {
        using T = std::remove_cvref_t<decltype(s)>;
        using K = ord::index_t<T>;
        if (o.method == "omit") return ord::drop_missing(s, ord::drop_rows::with_any_missing);
        if (o.method == "omit-all") return ord::drop_missing(s, ord::drop_rows::with_all_missing);
        if (o.method != "locf" && o.method != "interp") {
          throw ord::parse_error("unknown fill method '" + o.method + "'");
        }
        constexpr bool is_frame = requires { s.names(); };
        if constexpr (is_frame) {
          if (o.threads > 1) {
            ord::fill_policy keep = policy;
            keep.keep_edges = true;
            auto filled_frame = map_columns(s, o.threads, [&](const ord::series<K>& col) {
              return o.method == "locf" ? ord::fill_locf(col, keep) : ord::fill_interp(col, keep);
            });
            if (policy.keep_edges) return filled_frame;
            return ord::drop_missing(filled_frame, ord::drop_rows::with_any_missing);
          }
        }
        return o.method == "locf" ? ord::fill_locf(s, policy) : ord::fill_interp(s, policy);
      },
      t);
  write_output(ord::emit_csv(filled), o.out);
  return 0;
}

struct roll_options {
  std::string input, out, kind, dup = "error", stat = "mean", align = "center";
  std::size_t width = 1;
  bool pad = false;
  unsigned threads = 1;
};

int run_roll(const roll_options& o) {
  ord::roll_spec spec;
  spec.width = o.width;
  spec.pad = o.pad;
  if (o.align == "left") {
    spec.align = ord::roll_align::left;
  } else if (o.align == "right") {
    spec.align = ord::roll_align::right;
  } else if (o.align == "center") {
    spec.align = ord::roll_align::center;
  } else {
    throw ord::parse_error("unknown alignment '" + o.align + "'");
  }

  ord::any_table t = load_table(o.input, o.kind, o.dup);
  ord::any_table rolled = std::visit(
      [&](const auto& s) -> ord::any_table {
        using T = std::remove_cvref_t<decltype(s)>;
        using K = ord::index_t<T>;
        auto roll_one = [&](const auto& table) -> std::remove_cvref_t<decltype(table)> {
          if (o.stat == "mean") return ord::roll_mean(table, spec);
          if (o.stat == "median") return ord::roll_median(table, spec);
          if (o.stat == "max") return ord::roll_max(table, spec);
          auto kind = ord::stat_from_name(o.stat);
          if (!kind) throw ord::parse_error("unknown statistic '" + o.stat + "'");
          return ord::roll_apply(table, spec, ord::builtin_stat(*kind, false));
        };
        constexpr bool is_frame = requires { s.names(); };
        if constexpr (is_frame) {
          if (o.threads > 1) {
            return map_columns(s, o.threads,
                               [&](const ord::series<K>& col) { return roll_one(col); });
          }
        }
        return roll_one(s);
      },
      t);
  write_output(ord::emit_csv(rolled), o.out);
  return 0;
}

struct calc_options {
  std::string expr, out, kind, dup = "error";
  std::vector<std::string> bindings;
};

int run_calc(const calc_options& o) {
  std::vector<std::pair<std::string, ord::any_table>> loaded;
  for (const auto& b : o.bindings) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ord::parse_error("--bind entries must look like NAME=FILE: '" + b + "'");
    }
    loaded.emplace_back(b.substr(0, eq), load_table(b.substr(eq + 1), o.kind, o.dup));
  }
  for (const auto& [name, t] : loaded) {
    if (ord::kind_of(t) != ord::kind_of(loaded.front().second)) {
      throw ord::kind_mismatch_error("calc inputs must share one index kind");
    }
  }

  ord::index_kind_id k =
      loaded.empty() ? ord::index_kind_id::real : ord::kind_of(loaded.front().second);
  std::string text = ord::with_kind(k, [&](auto tag) -> std::string {
    using K = typename decltype(tag)::type;
    std::map<std::string, ord::calc_value<K>> bindings;
    for (const auto& [name, t] : loaded) {
      if (const auto* s = std::get_if<ord::series<K>>(&t)) {
        bindings.emplace(name, *s);
      } else {
        bindings.emplace(name, std::get<ord::frame<K>>(t));
      }
    }
    auto result = ord::eval_expression<K>(o.expr, bindings);
    if (const auto* scalar = std::get_if<double>(&result)) {
      return ord::detail::shortest_real_text(*scalar) + "\n";
    }
    if (const auto* s = std::get_if<ord::series<K>>(&result)) return ord::emit_csv(*s);
    return ord::emit_csv(std::get<ord::frame<K>>(result));
  });
  write_output(text, o.out);
  return 0;
}

struct regularize_options {
  std::string input, out, kind, dup = "error", mode = "to-grid";
  double freq = 0.0;  // 0 means infer
};

int run_regularize(const regularize_options& o) {
  if (o.mode == "from-grid") {
    auto grid = ord::parse_grid_csv(read_input(o.input), resolve_kind(o.kind));
    write_output(ord::emit_csv(ord::table_from_grid(grid)), o.out);
    return 0;
  }
  if (o.mode != "to-grid") throw ord::parse_error("unknown mode '" + o.mode + "'");
  ord::any_table t = load_table(o.input, o.kind, o.dup);
  std::string text = std::visit(
      [&](const auto& s) {
        if (o.freq > 0.0) return ord::emit_grid_csv(ord::to_grid(ord::attach_frequency(s, o.freq)));
        return ord::emit_grid_csv(ord::to_grid(s));
      },
      t);
  write_output(text, o.out);
  return 0;
}

struct convert_options {
  std::string input, out, kind, dup = "error", to;
  double frac = 0.0;
};

// Supported index conversions; anything else reports CapabilityError.
template <typename To, typename From>
To convert_value(const From& v, double frac) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, ord::date_index>) {
    if constexpr (std::is_same_v<To, ord::timestamp_index>) return ord::timestamp_of(v);
    if constexpr (std::is_same_v<To, ord::year_month>) return ord::yearmonth_of(v);
    if constexpr (std::is_same_v<To, ord::year_quarter>) return ord::yearquarter_of(v);
    if constexpr (std::is_same_v<To, ord::int_index>) return ord::int_index(v.days());
    if constexpr (std::is_same_v<To, ord::real_index>) return ord::real_index(v.to_numeric());
  } else if constexpr (std::is_same_v<From, ord::timestamp_index>) {
    if constexpr (std::is_same_v<To, ord::date_index>) return ord::date_of(v);
    if constexpr (std::is_same_v<To, ord::year_month>) return ord::yearmonth_of(ord::date_of(v));
    if constexpr (std::is_same_v<To, ord::year_quarter>) {
      return ord::yearquarter_of(ord::date_of(v));
    }
    if constexpr (std::is_same_v<To, ord::int_index>) return ord::int_index(v.seconds());
    if constexpr (std::is_same_v<To, ord::real_index>) return ord::real_index(v.to_numeric());
  } else if constexpr (std::is_same_v<From, ord::year_month>) {
    if constexpr (std::is_same_v<To, ord::date_index>) return ord::yearmonth_to_date(v, frac);
    if constexpr (std::is_same_v<To, ord::timestamp_index>) {
      return ord::timestamp_of(ord::yearmonth_to_date(v, frac));
    }
    if constexpr (std::is_same_v<To, ord::year_quarter>) return ord::yearmonth_to_quarter(v);
    if constexpr (std::is_same_v<To, ord::real_index>) return ord::real_index(v.to_numeric());
  } else if constexpr (std::is_same_v<From, ord::year_quarter>) {
    if constexpr (std::is_same_v<To, ord::date_index>) return ord::yearquarter_to_date(v, frac);
    if constexpr (std::is_same_v<To, ord::timestamp_index>) {
      return ord::timestamp_of(ord::yearquarter_to_date(v, frac));
    }
    if constexpr (std::is_same_v<To, ord::real_index>) return ord::real_index(v.to_numeric());
  } else if constexpr (std::is_same_v<From, ord::int_index>) {
    if constexpr (std::is_same_v<To, ord::real_index>) return ord::real_index(v.to_numeric());
    if constexpr (std::is_same_v<To, ord::date_index>) return ord::date_index(v.value());
    if constexpr (std::is_same_v<To, ord::timestamp_index>) {
      return ord::timestamp_index(v.value());
    }
  } else if constexpr (std::is_same_v<From, ord::real_index>) {
    if constexpr (std::is_same_v<To, ord::int_index>) return ord::int_index::from_numeric(v.value());
    if constexpr (std::is_same_v<To, ord::date_index>) return ord::date_index::from_numeric(v.value());
    if constexpr (std::is_same_v<To, ord::timestamp_index>) {
      return ord::timestamp_index::from_numeric(v.value());
    }
    if constexpr (std::is_same_v<To, ord::year_month>) return ord::year_month::from_real(v.value());
    if constexpr (std::is_same_v<To, ord::year_quarter>) {
      return ord::year_quarter::from_real(v.value());
    }
  }
  throw ord::capability_error(std::string("no conversion from ") +
                              std::string(From::kind_name()) + " to " +
                              std::string(To::kind_name()));
}

int run_convert(const convert_options& o) {
  auto to = ord::kind_id_from_name(o.to);
  if (!to) throw ord::parse_error("unknown index kind '" + o.to + "'");
  if (o.frac < 0.0 || o.frac > 1.0) throw ord::parse_error("--frac must lie in [0, 1]");
  ord::on_duplicate dup = dup_from_name(o.dup);

  ord::any_table t = load_table(o.input, o.kind, o.dup);
  ord::any_table converted = std::visit(
      [&](const auto& s) -> ord::any_table {
        using K = ord::index_t<decltype(s)>;
        return ord::with_kind(*to, [&](auto tag) -> ord::any_table {
          using K2 = typename decltype(tag)::type;
          std::vector<K2> labels;
          labels.reserve(s.row_count());
          for (const K& v : s.index()) labels.push_back(convert_value<K2>(v, o.frac));
          constexpr bool is_frame = requires { s.names(); };
          if constexpr (is_frame) {
            return ord::make_frame<K2>(s.names(), std::move(labels), ord::coredata(s), dup);
          } else {
            return ord::make_series<K2>(s.name(), std::move(labels), ord::coredata(s), dup);
          }
        });
      },
      t);
  write_output(ord::emit_csv(converted), o.out);
  return 0;
}

void add_common(CLI::App* cmd, std::string& kind, std::string& dup, std::string& out) {
  cmd->add_option("--index-kind", kind,
                  "index kind: date, timestamp, yearmonth, yearquarter, int, real");
  cmd->add_option("--duplicates", dup, "duplicate index policy: error, first, mean");
  cmd->add_option("--out", out, "write output to this file instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordseries: indexed, totally ordered observation series toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ordseries 1.0.0");

  print_options po;
  auto* print_cmd = app.add_subcommand("print", "render a table as text");
  print_cmd->add_option("input", po.input, "input CSV ('-' for standard input)")->required();
  print_cmd->add_option("--style", po.style, "auto, horizontal, vertical, or plain");
  add_common(print_cmd, po.kind, po.dup, po.out);

  plot_options lo;
  auto* plot_cmd = app.add_subcommand("plot", "render a table as an SVG chart");
  plot_cmd->add_option("input", lo.input, "input CSV ('-' for standard input)")->required();
  plot_cmd->add_option("--layout", lo.layout, "panels or single");
  plot_cmd->add_option("--width", lo.width, "image width in pixels");
  plot_cmd->add_option("--height", lo.height, "image height in pixels");
  plot_cmd->add_option("--color", lo.colors, "per-series color, NAME=VALUE (NAME may be default)");
  plot_cmd->add_option("--line", lo.lines, "per-series line type: solid, dash, dot, dashdot");
  plot_cmd->add_option("--marker", lo.markers,
                       "per-series marker: none, circle, square, diamond, cross");
  add_common(plot_cmd, lo.kind, lo.dup, lo.out);

  merge_options mo;
  auto* merge_cmd = app.add_subcommand("merge", "align tables on a shared index");
  merge_cmd->add_option("inputs", mo.inputs, "input CSV files")->required()->expected(-1);
  merge_cmd->add_option("--mode", mo.mode, "union, inter, left, or right");
  merge_cmd->add_option("--fill", mo.fill, "value for alignment gaps (default NA)");
  add_common(merge_cmd, mo.kind, mo.dup, mo.out);

  aggregate_options ao;
  auto* agg_cmd = app.add_subcommand("aggregate", "collapse rows that share a group label");
  agg_cmd->add_option("input", ao.input, "input CSV")->required();
  agg_cmd->add_option("--by", ao.by, "grouping: firstofmonth, yearmonth, yearquarter, year")
      ->required();
  agg_cmd->add_option("--stat", ao.stat,
                      "statistic: mean, sum, first, last, min, max, sd, count");
  agg_cmd->add_flag("--keep-missing", ao.keep_missing,
                    "propagate missing cells into the statistic instead of skipping them");
  add_common(agg_cmd, ao.kind, ao.dup, ao.out);

  fill_options fo;
  auto* fill_cmd = app.add_subcommand("fill", "handle missing cells");
  fill_cmd->add_option("input", fo.input, "input CSV")->required();
  fill_cmd->add_option("--method", fo.method, "locf, interp, omit, or omit-all")->required();
  fill_cmd->add_flag("--keep-edges", fo.keep_edges, "keep rows the fill could not complete");
  fill_cmd->add_option("--abscissa", fo.abscissa, "interp distance scale: index or positions");
  fill_cmd->add_option("--threads", fo.threads, "worker threads for per-column work");
  add_common(fill_cmd, fo.kind, fo.dup, fo.out);

  roll_options ro;
  auto* roll_cmd = app.add_subcommand("roll", "rolling window statistics");
  roll_cmd->add_option("input", ro.input, "input CSV")->required();
  roll_cmd->add_option("--stat", ro.stat,
                       "mean, median, max, sum, first, last, min, sd, or count");
  roll_cmd->add_option("--width", ro.width, "window width in rows")->required();
  roll_cmd->add_option("--align", ro.align, "left, center, or right");
  roll_cmd->add_flag("--pad", ro.pad, "keep all rows, missing where no full window exists");
  roll_cmd->add_option("--threads", ro.threads, "worker threads for per-column work");
  add_common(roll_cmd, ro.kind, ro.dup, ro.out);

  calc_options co;
  auto* calc_cmd = app.add_subcommand("calc", "evaluate an expression over named tables");
  calc_cmd->add_option("expr", co.expr, "expression, e.g. \"diff(log(x))\"")->required();
  calc_cmd->add_option("--bind", co.bindings, "table binding, NAME=FILE (repeatable)");
  add_common(calc_cmd, co.kind, co.dup, co.out);

  regularize_options go;
  auto* reg_cmd = app.add_subcommand("regularize", "convert between tables and dense grids");
  reg_cmd->add_option("input", go.input, "input file")->required();
  reg_cmd->add_option("--mode", go.mode, "to-grid (default) or from-grid");
  reg_cmd->add_option("--freq", go.freq, "frequency to attach before gridding");
  add_common(reg_cmd, go.kind, go.dup, go.out);

  convert_options xo;
  auto* conv_cmd = app.add_subcommand("convert-index", "re-express the index in another kind");
  conv_cmd->add_option("input", xo.input, "input CSV")->required();
  conv_cmd->add_option("--to", xo.to, "target index kind")->required();
  conv_cmd->add_option("--frac", xo.frac,
                       "position within the period for period-to-date conversions");
  add_common(conv_cmd, xo.kind, xo.dup, xo.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*print_cmd) return run_print(po);
    if (*plot_cmd) return run_plot(lo);
    if (*merge_cmd) return run_merge(mo);
    if (*agg_cmd) return run_aggregate(ao);
    if (*fill_cmd) return run_fill(fo);
    if (*roll_cmd) return run_roll(ro);
    if (*calc_cmd) return run_calc(co);
    if (*reg_cmd) return run_regularize(go);
    if (*conv_cmd) return run_convert(xo);
  } catch (const ord::parse_error& e) {
    std::cerr << e.code_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const ord::error& e) {
    std::cerr << e.code_name() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
