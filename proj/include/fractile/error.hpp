#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fractile {

/// Violated precondition or malformed input. Messages name the failed clause.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text that does not follow one of the file formats (.gen, .tas).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An assembly sequence step that is not a legal attachment.
class ReplayError : public Error {
public:
    ReplayError(std::size_t step, const std::string& reason)
        : Error("invalid at step " + std::to_string(step) + ": " + reason), step_(step), reason_(reason) {}

    std::size_t step() const noexcept { return step_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t step_;
    std::string reason_;
};

/// A construction that is guaranteed to succeed did not. Always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fractile
