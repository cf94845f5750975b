#pragma once

#include <stdexcept>
#include <string>

namespace spencer {

/* Bad user-supplied data: malformed files, out-of-range parameters,
 * unknown presets.  CLI maps this to exit code 1. */
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* An operation was asked of an algebra that cannot support it
 * (degenerate Killing form, indefinite form, ...). */
struct unsupported_algebra_error : input_error {
  using input_error::input_error;
};

/* An internal exact identity failed (d^2 != 0 at build time, page
 * bookkeeping inconsistency).  CLI maps this to exit code 2. */
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace spencer
