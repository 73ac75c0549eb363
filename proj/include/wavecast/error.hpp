#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace wavecast {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Series too short for the requested operation.
class LengthError : public Error {
public:
    using Error::Error;
};

/// Inputs that violate a type invariant (non-finite values, mismatched sizes, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Out-of-range configuration value.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Zero spread under a normalisation or correlation that divides by it.
class DegenerateScaleError : public Error {
public:
    using Error::Error;
};

/// Singular or otherwise ill-posed numerical problem.
class NumericError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, int epoch) : Error(what), epoch_(epoch) {}
    int epoch() const noexcept { return epoch_; }

private:
    int epoch_;
};

/// Malformed input data; carries a 1-based line number when it came from a file.
class DataError : public Error {
public:
    explicit DataError(const std::string& what, long line = 0) : Error(what), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Wraps a failure inside the forecasting pipeline with where it happened.
class StageError : public Error {
public:
    StageError(std::string label, std::string stage, const std::string& what,
               std::exception_ptr cause = nullptr)
        : Error(label + "/" + stage + ": " + what), label_(std::move(label)),
          stage_(std::move(stage)), cause_(std::move(cause)) {}
    const std::string& label() const noexcept { return label_; }
    const std::string& stage() const noexcept { return stage_; }
    /// The original exception, for callers that need its type.
    std::exception_ptr cause() const noexcept { return cause_; }

private:
    std::string label_;
    std::string stage_;
    std::exception_ptr cause_;
};

}  // namespace wavecast
