#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boolelim {

enum class Errc {
  division_by_zero,
  not_positive,
  field_mismatch,
  zero_polynomial,
  syntax_error,
  order_in_c,
  reserved_name,
  size_limit,
  order_on_complex,
  index_out_of_range,
  wrong_kind,
  order_literal,
  neq_literal,
  incompatible_field,
  variable_clash,
  unexpected_variables,
  shape_unsupported,
  missing_assignment,
  no_witness,
  unbound_variable,
  bad_input,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps codes onto its exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace boolelim
