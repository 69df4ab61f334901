#pragma once

#include <stdexcept>
#include <string>

namespace guesswork {

enum class Errc {
  invalid_argument,
  absolute_continuity,
  not_a_k_type,
  alpha_out_of_domain,
  epsilon_too_large_for_l_plus,
  epsilon_inadmissible,
  empty_typical_set,
  type_space_too_large,
  word_space_too_large,
};

// Every precondition failure in the library is reported through this type.
// The code lets front ends map failures onto exit statuses without parsing
// message text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // Refusals caused by size guards rather than by invalid input.
  bool is_resource_guard() const noexcept {
    return code_ == Errc::type_space_too_large || code_ == Errc::word_space_too_large;
  }

 private:
  Errc code_;
};

}  // namespace guesswork
