// Smooth a noisy quarterly measurement with rolling statistics and write an
// SVG chart next to the numbers.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ordseries/ordseries.hpp>
#include <random>

namespace ord = ordseries;
using quarter = ord::year_quarter;

namespace {

ord::series<quarter> named(std::string name, const ord::series<quarter>& s) {
  return ord::series<quarter>(std::move(name), s.index(), ord::coredata(s), s.frequency());
}

}  // namespace

int main() {
  std::mt19937 rng(91u);
  std::normal_distribution<double> noise(0.0, 0.35);

  // Five years of quarterly data: slow trend plus noise.
  std::vector<ord::cell> raw;
  for (int i = 0; i < 20; ++i) raw.push_back(std::sin(i / 4.0) + noise(rng));
  auto level =
      ord::make_regular<quarter>("level", raw, quarter::from_parts(2020, 1), 4.0);

  auto smooth = named("smooth", ord::roll_mean(level, {.width = 5, .pad = true}));
  auto peak = named("peak", ord::roll_max(level, {.width = 5, .pad = true}));

  auto report = ord::merge_aligned<quarter>({level, smooth, peak});
  std::printf("%s\n", ord::render(report).c_str());

  ord::plot_spec spec;
  spec.layout = ord::plot_spec::layout_kind::single;
  spec.line_types["level"] = "dot";
  std::ofstream("rolling_report.svg") << ord::render_svg(report, spec);
  std::printf("chart written to rolling_report.svg\n");
  return 0;
}
