#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

// Failure classes used across the library. Domain failures are runtime
// conditions of the math (guarded denominators, domain walls); config
// failures are malformed inputs. The CLI maps the two groups to distinct
// exit codes.
enum class Errc {
  // config-grade
  dimension_mismatch,
  not_positive_definite,
  empty_grid,
  order_too_high,
  insufficient_jet_order,
  dimension_too_small,
  bad_config,
  // domain-grade
  zero_direction,
  out_of_domain,
  degenerate_denominator,
  quadrature_failure,
  pole_on_path,
  degenerate_metric,
  parallel_direction,
  s_divides_zero,
  boundary_s,
  unsupported_parameter_range,
};

const char* errc_name(Errc c);
bool is_domain_error(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

// Shared threshold for guarded denominators (alpha, rho, m^2, ...).
inline constexpr double kGuardEps = 1e-12;

}  // namespace finsler
