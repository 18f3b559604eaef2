#pragma once

// Exception hierarchy shared by every module. Each class maps onto one of
// the CLI exit statuses (see cli.hpp).

#include <cstdint>
#include <stdexcept>
#include <string>

namespace critorb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller handed us something outside an operation's domain.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A bounded search ran out of budget before finding what it was asked for.
class SearchExhausted : public Error {
public:
    using Error::Error;
};

/// An a-posteriori check disagreed with what the construction promised.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Valuation of zero.
class InfiniteValuation : public InvalidInput {
public:
    InfiniteValuation() : InvalidInput("infinite valuation: argument is zero") {}
};

/// The numerator a_n of the n-th critical iterate is exactly zero.
class ZeroIterate : public InvalidInput {
public:
    explicit ZeroIterate(std::uint64_t n)
        : InvalidInput("zero iterate: f^" + std::to_string(n) + "(0) = 0"), n_(n) {}
    std::uint64_t n() const noexcept { return n_; }

private:
    std::uint64_t n_;
};

/// Exact computation refused because its result would not fit the budget.
class SizeGuardExceeded : public InvalidInput {
public:
    SizeGuardExceeded(const std::string& what, double estimate_bits)
        : InvalidInput(what + " (estimated size " + std::to_string(static_cast<long long>(estimate_bits)) +
                       " bits exceeds guard)"),
          estimate_bits_(estimate_bits) {}
    double estimate_bits() const noexcept { return estimate_bits_; }

private:
    double estimate_bits_;
};

}  // namespace critorb
