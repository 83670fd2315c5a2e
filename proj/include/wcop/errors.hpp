#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcop {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), message_(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t position_;
};

class PositivityError : public Error { using Error::Error; };
class GrammarClosureError : public Error { using Error::Error; };
class DimensionMismatch : public Error { using Error::Error; };
class InvalidRange : public Error { using Error::Error; };
class ZeroPolynomial : public Error { using Error::Error; };
class CapExceeded : public Error { using Error::Error; };
class PreconditionViolated : public Error { using Error::Error; };
class NotApplicable : public Error { using Error::Error; };
class InternalInconsistency : public Error { using Error::Error; };

}  // namespace wcop
