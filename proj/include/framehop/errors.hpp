// errors.hpp
// Exception types thrown across the library. Every failure mode named by the
// public contracts maps to one of these.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace framehop {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowTooNarrow : Error { using Error::Error; };
struct NotPowerOfTwo : Error { using Error::Error; };
struct NonPositiveFactor : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct SuperluminalVelocity : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NonPositiveFrequency : Error { using Error::Error; };
struct PoleAtResonance : Error { using Error::Error; };
struct DegenerateSignal : Error { using Error::Error; };
struct MismatchedLength : Error { using Error::Error; };

/// Internal consistency check failed (e.g. per-line Doppler ratios drifting);
/// indicates a geometry bug, not a user error.
struct AssertionFailure : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

/// Carries every violated invariant found during config validation, not just
/// the first one.
struct ValidationError : Error {
    explicit ValidationError(std::vector<std::string> violations_)
        : Error(join(violations_)), violations(std::move(violations_)) {}

    std::vector<std::string> violations;

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "config validation failed:";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }
};

}  // namespace framehop
