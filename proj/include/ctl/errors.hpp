#pragma once

#include <stdexcept>
#include <string>

namespace ctl {

/// Raised when an internal cross-check fails. Always a bug, never user error.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// Raised when exact rational arithmetic leaves the 64-bit range.
struct arithmetic_overflow : std::runtime_error {
    explicit arithmetic_overflow(const std::string& what) : std::runtime_error(what) {}
};

inline void check_internal(bool ok, const std::string& what) {
    if (!ok) throw internal_error(what);
}

} // namespace ctl
