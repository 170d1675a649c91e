#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnvc {

enum class ErrorCode {
    Syntax,
    DuplicateIdentifier,
    UnknownIdentifier,
    InvalidWeight,
    EmptyNet,
    NotEnabled,
    Overflow,
    BudgetExceeded,
    MalformedNet,
    PositionWithoutArc,
    VarietyMismatch,
    ArcMissing,
    HypothesesUnmet,
    DepthZero,
    DepthTooLarge,
    EmptyX,
    PreconditionViolated,
    InfeasibleSpec,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t line, const std::string& what)
        : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Raised by strict firing. `step` is the 0-based position in the sequence.
class NotEnabledError : public Error {
public:
    NotEnabledError(std::size_t step, std::size_t place, const std::string& what)
        : Error(ErrorCode::NotEnabled, what), step_(step), place_(place) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t place() const noexcept { return place_; }

private:
    std::size_t step_;
    std::size_t place_;
};

class BudgetExceededError : public Error {
public:
    BudgetExceededError(std::size_t lower_bound, const std::string& what)
        : Error(ErrorCode::BudgetExceeded, what), lower_bound_(lower_bound) {}

    // Proven lower bound on the minimum cover size.
    std::size_t lower_bound() const noexcept { return lower_bound_; }

private:
    std::size_t lower_bound_;
};

enum class TruncationHypothesis {
    VarietyEqual,
    IndexOrder,
    StartValue,   // M1(p1) = e
    EndValue,     // M3(p1) <= e
    PeakValue,    // M2(p1) >= e + W^2 + W^3
    PeakMaximal,  // M2 is the maximum between M1 and M3
    Enabled,
};

const char* to_string(TruncationHypothesis h);

class HypothesesUnmetError : public Error {
public:
    HypothesesUnmetError(TruncationHypothesis h, const std::string& what)
        : Error(ErrorCode::HypothesesUnmet, what), hypothesis_(h) {}

    TruncationHypothesis hypothesis() const noexcept { return hypothesis_; }

private:
    TruncationHypothesis hypothesis_;
};

class PreconditionError : public Error {
public:
    PreconditionError(int condition, const std::string& what)
        : Error(ErrorCode::PreconditionViolated, what), condition_(condition) {}

    int condition() const noexcept { return condition_; }

private:
    int condition_;
};

}  // namespace pnvc
