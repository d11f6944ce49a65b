#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

// Plot description. Style maps are keyed by column name; a "default" entry
// covers every column the map does not name.
struct plot_spec {
  enum class layout_kind { panels, single };

  layout_kind layout = layout_kind::panels;
  int width = 800;
  int height = 480;
  std::map<std::string, std::string> colors;      // CSS color values
  std::map<std::string, std::string> line_types;  // solid | dash | dot | dashdot
  std::map<std::string, std::string> markers;     // none | circle | square | diamond | cross
};

namespace detail {

inline constexpr const char* plot_palette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

inline std::string num2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label_text(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Up to max_ticks round positions inside [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int max_ticks = 8) {
  double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  double raw = span / double(max_ticks);
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 2.5, 5.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  double first = std::ceil(lo / step) * step;
  for (double t = first; t <= hi + step * 1e-9; t += step) {
    double v = std::abs(t) < step * 1e-9 ? 0.0 : t;
    ticks.push_back(v);
    if (int(ticks.size()) >= max_ticks) break;
  }
  return ticks;
}

inline std::string lookup_style(const std::map<std::string, std::string>& styles,
                                const std::string& name, const std::string& fallback) {
  if (auto it = styles.find(name); it != styles.end()) return it->second;
  if (auto it = styles.find("default"); it != styles.end()) return it->second;
  return fallback;
}

inline std::string dash_for(const std::string& line_type) {
  if (line_type == "dash") return "6,4";
  if (line_type == "dot") return "1.5,3";
  if (line_type == "dashdot") return "6,3,1.5,3";
  if (line_type != "solid") throw domain_error("unknown line type: " + line_type);
  return "";
}

inline void emit_marker(std::string& out, const std::string& marker, double x, double y,
                        const std::string& color) {
  if (marker == "none") return;
  if (marker == "circle") {
    out += "<circle cx=\"" + num2(x) + "\" cy=\"" + num2(y) + "\" r=\"3\" fill=\"" + color +
           "\"/>\n";
  } else if (marker == "square") {
    out += "<rect x=\"" + num2(x - 3) + "\" y=\"" + num2(y - 3) +
           "\" width=\"6\" height=\"6\" fill=\"" + color + "\"/>\n";
  } else if (marker == "diamond") {
    out += "<polygon points=\"" + num2(x) + "," + num2(y - 4) + " " + num2(x + 4) + "," + num2(y) +
           " " + num2(x) + "," + num2(y + 4) + " " + num2(x - 4) + "," + num2(y) + "\" fill=\"" +
           color + "\"/>\n";
  } else if (marker == "cross") {
    out += "<path d=\"M " + num2(x - 3) + " " + num2(y - 3) + " L " + num2(x + 3) + " " +
           num2(y + 3) + " M " + num2(x - 3) + " " + num2(y + 3) + " L " + num2(x + 3) + " " +
           num2(y - 3) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
  } else {
    throw domain_error("unknown marker: " + marker);
  }
}

inline bool drawable(const cell& c) { return c && std::isfinite(*c); }

}  // namespace detail

// Deterministic SVG 1.1 line chart. Panels layout stacks one sub-plot per
// column over a shared x-axis; single layout overlays all columns in one
// axis with a legend. Lines break at missing cells; an isolated point gets a
// dot so it stays visible.
template <SeriesLike S>
  requires ShiftableIndex<index_t<S>>
std::string render_svg(const S& s, const plot_spec& spec) {
  using K = index_t<S>;
  const std::size_t ncol = s.column_count();
  if (ncol == 0) throw shape_error("nothing to plot");

  std::vector<double> x;
  x.reserve(s.row_count());
  for (const auto& v : s.index()) x.push_back(v.to_numeric());
  double xlo = 0.0, xhi = 1.0;
  if (!x.empty()) {
    xlo = x.front();
    xhi = x.back();
  }
  if (!(xhi > xlo)) {
    xlo -= 0.5;
    xhi += 0.5;
  }

  const double margin_left = 64, margin_right = 14, margin_top = 14, margin_bottom = 36;
  const double panel_gap = 10;
  const bool panels = spec.layout == plot_spec::layout_kind::panels && ncol > 1;
  const std::size_t npanel = panels ? ncol : 1;
  const double plot_w = double(spec.width) - margin_left - margin_right;
  const double total_h = double(spec.height) - margin_top - margin_bottom;
  const double panel_h = (total_h - panel_gap * double(npanel - 1)) / double(npanel);
  if (plot_w <= 0 || panel_h <= 0) throw domain_error("plot dimensions too small");

  auto x_of = [&](double v) {
    return margin_left + (v - xlo) / (xhi - xlo) * plot_w;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
         "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " + std::to_string(spec.height) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";

  // x ticks snapped onto representable index values, deduplicated
  std::vector<std::pair<double, std::string>> xticks;
  for (double t : detail::nice_ticks(xlo, xhi)) {
    K snapped = K::from_numeric(t);
    double pos = snapped.to_numeric();
    if (pos < xlo - 1e-9 || pos > xhi + 1e-9) continue;
    std::string label = snapped.to_display();
    if (!xticks.empty() && xticks.back().second == label) continue;
    xticks.emplace_back(pos, label);
  }

  for (std::size_t p = 0; p < npanel; ++p) {
    const double top = margin_top + double(p) * (panel_h + panel_gap);
    const double bottom = top + panel_h;

    std::vector<std::size_t> cols;
    if (panels) {
      cols = {p};
    } else {
      cols.resize(ncol);
      std::iota(cols.begin(), cols.end(), 0);
    }

    double ylo = 0.0, yhi = 0.0;
    bool seen = false;
    for (std::size_t c : cols) {
      for (const cell& v : s.column(c)) {
        if (!detail::drawable(v)) continue;
        if (!seen) {
          ylo = yhi = *v;
          seen = true;
        } else {
          ylo = std::min(ylo, *v);
          yhi = std::max(yhi, *v);
        }
      }
    }
    if (!seen) {
      ylo = 0.0;
      yhi = 1.0;
    }
    if (!(yhi > ylo)) {
      ylo -= 0.5;
      yhi += 0.5;
    }

    auto y_of = [&](double v) {
      return bottom - (v - ylo) / (yhi - ylo) * panel_h;
    };

    out += "<rect x=\"" + detail::num2(margin_left) + "\" y=\"" + detail::num2(top) +
           "\" width=\"" + detail::num2(plot_w) + "\" height=\"" + detail::num2(panel_h) +
           "\" fill=\"none\" stroke=\"#000000\"/>\n";

    for (double t : detail::nice_ticks(ylo, yhi, 6)) {
      double yy = y_of(t);
      out += "<line x1=\"" + detail::num2(margin_left - 4) + "\" y1=\"" + detail::num2(yy) +
             "\" x2=\"" + detail::num2(margin_left) + "\" y2=\"" + detail::num2(yy) +
             "\" stroke=\"#000000\"/>\n";
      out += "<text x=\"" + detail::num2(margin_left - 7) + "\" y=\"" + detail::num2(yy + 3.5) +
             "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" +
             detail::tick_label_text(t) + "</text>\n";
    }

    if (panels) {
      out += "<text x=\"" + detail::num2(margin_left + 6) + "\" y=\"" + detail::num2(top + 14) +
             "\" font-family=\"monospace\" font-size=\"12\">" + std::string(s.column_name(p)) +
             "</text>\n";
    }

    for (std::size_t c : cols) {
      std::string name(s.column_name(c));
      std::string color = detail::lookup_style(spec.colors, name,
                                               detail::plot_palette[c % 8]);
      std::string dash = detail::dash_for(detail::lookup_style(spec.line_types, name, "solid"));
      std::string marker = detail::lookup_style(spec.markers, name, "none");

      auto col = s.column(c);
      std::size_t i = 0;
      while (i < col.size()) {
        if (!detail::drawable(col[i])) {
          ++i;
          continue;
        }
        std::size_t run = i;
        while (run + 1 < col.size() && detail::drawable(col[run + 1])) ++run;
        if (run == i) {
          out += "<circle cx=\"" + detail::num2(x_of(x[i])) + "\" cy=\"" +
                 detail::num2(y_of(*col[i])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
        } else {
          out += "<polyline points=\"";
          for (std::size_t k = i; k <= run; ++k) {
            if (k > i) out += ' ';
            out += detail::num2(x_of(x[k])) + "," + detail::num2(y_of(*col[k]));
          }
          out += "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
          if (!dash.empty()) out += " stroke-dasharray=\"" + dash + "\"";
          out += "/>\n";
        }
        for (std::size_t k = i; k <= run; ++k) {
          detail::emit_marker(out, marker, x_of(x[k]), y_of(*col[k]), color);
        }
        i = run + 1;
      }
    }

    if (p + 1 == npanel) {
      for (const auto& [pos, label] : xticks) {
        double xx = x_of(pos);
        out += "<line x1=\"" + detail::num2(xx) + "\" y1=\"" + detail::num2(bottom) + "\" x2=\"" +
               detail::num2(xx) + "\" y2=\"" + detail::num2(bottom + 4) +
               "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + detail::num2(xx) + "\" y=\"" + detail::num2(bottom + 17) +
               "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" + label +
               "</text>\n";
      }
    }
  }

  if (!panels && ncol > 1) {
    for (std::size_t c = 0; c < ncol; ++c) {
      std::string name(s.column_name(c));
      std::string color = detail::lookup_style(spec.colors, name,
                                               detail::plot_palette[c % 8]);
      double ly = margin_top + 8 + double(c) * 15;
      double lx = margin_left + plot_w - 86;
      out += "<line x1=\"" + detail::num2(lx) + "\" y1=\"" + detail::num2(ly) + "\" x2=\"" +
             detail::num2(lx + 20) + "\" y2=\"" + detail::num2(ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
      out += "<text x=\"" + detail::num2(lx + 26) + "\" y=\"" + detail::num2(ly + 3.5) +
             "\" font-family=\"monospace\" font-size=\"11\">" + name + "</text>\n";
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace ordseries
