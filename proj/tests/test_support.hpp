// Shared fixture plumbing for the test binaries. Keeps Catch2 out so the
// acceptance runner can reuse it.
#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <ordseries/ordseries.hpp>

namespace ts {

namespace ord = ordseries;

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(ORD_FIXTURES_DIR "/") + name;
}

inline std::string fixture_text(const std::string& name) { return slurp(fixture_path(name)); }

inline ord::any_table load_any(const std::string& name) {
  return ord::parse_csv(fixture_text(name));
}

template <ord::IndexKind K>
ord::series<K> load_series(const std::string& name) {
  return std::get<ord::series<K>>(load_any(name));
}

template <ord::IndexKind K>
ord::frame<K> load_frame(const std::string& name) {
  return std::get<ord::frame<K>>(load_any(name));
}

inline ord::date_index dt(std::string_view text) {
  auto d = ord::date_index::parse(text);
  if (!d) throw std::runtime_error("bad date literal in test: " + std::string(text));
  return *d;
}

inline bool near(double a, double b, double tol = 5e-7) { return std::abs(a - b) <= tol; }

inline double got(const ord::cell& c) {
  if (!c) throw std::runtime_error("expected a present cell");
  return *c;
}

}  // namespace ts
