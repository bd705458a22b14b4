#pragma once

#include <stdexcept>
#include <string>

namespace splc {

enum class errc {
  not_sorted,
  too_short,
  not_basic,
  multiplicity_exceeded,
  index_out_of_range,
  outside_domain,
  order_too_high,
  degree_zero,
  not_open,
  not_continuous,
  not_interior,
  singular_local_system,
  stale_cache,
  budget_too_large,
  duplicate_abscissa,
  solver_failure,
};

const char* errc_name(errc code);

/// Exception carrying a machine-readable error code.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace splc
