#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace addcomp {

// Root of every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user data: set files, spec strings, non-increasing sequences.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A documented precondition of an operation does not hold. `clause()` names it.
class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(std::string clause)
        : Error("precondition violated: " + clause), clause_(std::move(clause)) {}
    const std::string& clause() const noexcept { return clause_; }

private:
    std::string clause_;
};

// Internal consistency failure: a cover that must exist was not found.
class CoverFailed : public Error {
public:
    using Error::Error;
};

// Some translate A+x meets R in more than r points.
class HypothesisViolated : public Error {
public:
    HypothesisViolated(std::uint64_t offending, std::uint64_t count, std::uint64_t r)
        : Error("hypothesis violated: |(A+" + std::to_string(offending) + ") & R| = " +
                std::to_string(count) + " > " + std::to_string(r)),
          offending_(offending) {}
    std::uint64_t offending() const noexcept { return offending_; }

private:
    std::uint64_t offending_;
};

class RatioNotSatisfied : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// Runtime check |A & [1,2^i)| > |A & (2^i,2^(i+2)]| failed for block exponent i.
class BlockPreconditionFailed : public Error {
public:
    explicit BlockPreconditionFailed(unsigned exponent, const std::string& detail)
        : Error("block precondition failed at exponent " + std::to_string(exponent) + ": " + detail),
          exponent_(exponent) {}
    unsigned exponent() const noexcept { return exponent_; }

private:
    unsigned exponent_;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class NoCover : public Error {
public:
    using Error::Error;
};

} // namespace addcomp
