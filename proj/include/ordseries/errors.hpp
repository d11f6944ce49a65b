#pragma once

#include <stdexcept>
#include <string>

namespace ordseries {

// Failure classes reported by the library. The CLI prints the stable name of
// the class followed by the message, so these names are part of the interface.
enum class errc {
  duplicate_index,
  kind_mismatch,
  bounds,
  shape,
  order,
  empty,
  overlap,
  frequency_mismatch,
  not_regular,
  capability,
  domain,
  parse,
};

constexpr const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::duplicate_index: return "DuplicateIndex";
    case errc::kind_mismatch: return "KindMismatch";
    case errc::bounds: return "BoundsError";
    case errc::shape: return "ShapeError";
    case errc::order: return "OrderError";
    case errc::empty: return "EmptyError";
    case errc::overlap: return "OverlapError";
    case errc::frequency_mismatch: return "FrequencyMismatch";
    case errc::not_regular: return "NotRegular";
    case errc::capability: return "CapabilityError";
    case errc::domain: return "DomainError";
    case errc::parse: return "ParseError";
  }
  return "Error";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }
  const char* code_name() const noexcept { return errc_name(code_); }

 private:
  errc code_;
};

struct duplicate_index_error : error {
  explicit duplicate_index_error(const std::string& m) : error(errc::duplicate_index, m) {}
};
struct kind_mismatch_error : error {
  explicit kind_mismatch_error(const std::string& m) : error(errc::kind_mismatch, m) {}
};
struct bounds_error : error {
  explicit bounds_error(const std::string& m) : error(errc::bounds, m) {}
};
struct shape_error : error {
  explicit shape_error(const std::string& m) : error(errc::shape, m) {}
};
struct order_error : error {
  explicit order_error(const std::string& m) : error(errc::order, m) {}
};
struct empty_error : error {
  explicit empty_error(const std::string& m) : error(errc::empty, m) {}
};
struct overlap_error : error {
  explicit overlap_error(const std::string& m) : error(errc::overlap, m) {}
};
struct frequency_mismatch_error : error {
  explicit frequency_mismatch_error(const std::string& m) : error(errc::frequency_mismatch, m) {}
};
struct not_regular_error : error {
  explicit not_regular_error(const std::string& m) : error(errc::not_regular, m) {}
};
struct capability_error : error {
  explicit capability_error(const std::string& m) : error(errc::capability, m) {}
};
struct domain_error : error {
  explicit domain_error(const std::string& m) : error(errc::domain, m) {}
};
struct parse_error : error {
  explicit parse_error(const std::string& m) : error(errc::parse, m) {}
};

}  // namespace ordseries
