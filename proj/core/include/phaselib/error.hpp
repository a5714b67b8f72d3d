#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phaselib {

enum class Errc {
  invalid_input,
  unsorted_keys,
  duplicate_key,
  stalled,
  cycle,
  already_finished,
  overflow,
  parse,
  verification,
};

std::string_view errc_name(Errc code) noexcept;

/// Structured failure raised by every phaselib entry point.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace phaselib
