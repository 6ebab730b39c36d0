#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covroc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or violated precondition (bandwidth <= 0, empty grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

/// Fewer than p+1 observations carry positive kernel weight at z, or the
/// weighted local design is numerically singular there.
class InsufficientLocalData : public Error {
public:
    InsufficientLocalData(double z, std::size_t local_count, const std::string& context = {})
        : Error(make_message(z, local_count, context)), z_(z), local_count_(local_count) {}

    double z() const noexcept { return z_; }
    std::size_t local_count() const noexcept { return local_count_; }

private:
    static std::string make_message(double z, std::size_t count, const std::string& context) {
        std::string msg = "insufficient local data at z=" + std::to_string(z) +
                          " (points with positive weight: " + std::to_string(count) + ")";
        if (!context.empty()) msg = context + ": " + msg;
        return msg;
    }

    double z_;
    std::size_t local_count_;
};

class SingularMomentMatrix : public Error {
public:
    using Error::Error;
};

/// No (i, j) pair carries positive product weight in the bivariate kernel estimator.
class ZeroDenominator : public Error {
public:
    using Error::Error;
};

/// Every bandwidth candidate failed to produce a finite score.
class InfeasibleBandwidths : public Error {
public:
    using Error::Error;
};

/// Too many bootstrap replicates or Monte Carlo runs failed.
class FailureRateExceeded : public Error {
public:
    FailureRateExceeded(const std::string& what, std::size_t failures, std::size_t total)
        : Error(what + ": " + std::to_string(failures) + " of " + std::to_string(total) + " failed"),
          failures_(failures), total_(total) {}

    std::size_t failures() const noexcept { return failures_; }
    std::size_t total() const noexcept { return total_; }

private:
    std::size_t failures_;
    std::size_t total_;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace covroc
