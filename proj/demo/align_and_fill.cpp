// Align two sensor feeds that report on different days, then patch the holes
// the alignment introduces.

#include <cstdio>
#include <ordseries/ordseries.hpp>

namespace ord = ordseries;
using date = ord::date_index;

namespace {

ord::series<date> feed(std::string name, std::initializer_list<const char*> days,
                       std::initializer_list<double> values) {
  std::vector<date> idx;
  for (const char* d : days) idx.push_back(*date::parse(d));
  std::vector<ord::cell> cells(values.begin(), values.end());
  return ord::series<date>(std::move(name), std::move(idx), std::move(cells));
}

}  // namespace

int main() {
  auto north = feed("north", {"2024-03-01", "2024-03-04", "2024-03-05", "2024-03-08"},
                    {12.1, 13.4, 13.0, 11.8});
  auto south = feed("south", {"2024-03-01", "2024-03-02", "2024-03-05", "2024-03-09"},
                    {8.6, 9.0, 9.4, 8.8});

  auto joint = ord::merge_aligned(north, south);
  std::printf("union of both feeds:\n%s\n", ord::render(joint).c_str());

  // Interpolate interior gaps on the date scale; rows a column cannot reach
  // stay missing instead of being dropped.
  ord::fill_policy policy;
  policy.keep_edges = true;
  auto patched = ord::fill_interp(joint, policy);
  std::printf("after interpolation:\n%s\n", ord::render(patched).c_str());

  std::printf("as csv:\n%s", ord::emit_csv(patched).c_str());
  return 0;
}
