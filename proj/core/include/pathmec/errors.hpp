#pragma once

#include <stdexcept>
#include <string>

namespace pathmec {

/// Raised when a control-law or error-dynamics guard is violated
/// (heading error too close to +-90 deg, or the reference-point
/// existence denominator 1 - kappa_r*z at or below its threshold).
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

/// Raised when a scenario document or a config value violates an
/// invariant. Carries the offending field so callers can report it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace pathmec
