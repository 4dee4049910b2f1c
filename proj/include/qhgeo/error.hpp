#pragma once

#include <stdexcept>
#include <string>

namespace qhgeo {

// Error categories used across the library. The CLI maps these to exit codes:
// config/usage errors -> 2, numeric/graph failures -> 3.
enum class errc {
  point_outside_domain,
  containment_violation,
  non_finite_density,
  invalid_params,
  empty_graph,
  disconnected_pair,
  negative_h,
  degenerate_curve,
  invalid_matrix,
  epsilon_out_of_range,
  gap_bound_too_small,
  config_parse,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::point_outside_domain: return "point-outside-domain";
    case errc::containment_violation: return "containment-violation";
    case errc::non_finite_density: return "non-finite-density";
    case errc::invalid_params: return "invalid-params";
    case errc::empty_graph: return "empty-graph";
    case errc::disconnected_pair: return "disconnected-pair";
    case errc::negative_h: return "negative-h";
    case errc::degenerate_curve: return "degenerate-curve";
    case errc::invalid_matrix: return "invalid-matrix";
    case errc::epsilon_out_of_range: return "epsilon-out-of-range";
    case errc::gap_bound_too_small: return "gap-bound-too-small";
    case errc::config_parse: return "config-parse";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace qhgeo
