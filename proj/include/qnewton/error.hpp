#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qnewton {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

class NoConvergenceError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Objective evaluated outside its domain (non-finite value, pole, overlapping beads).
class DomainError : public Error {
public:
    DomainError(const std::string& what, std::vector<double> point)
        : Error(what), point_(std::move(point)) {}

    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

class NoValidDeltaError : public Error {
public:
    using Error::Error;
};

class StalledLineSearchError : public Error {
public:
    using Error::Error;
};

class UnknownNameError : public Error {
public:
    using Error::Error;
};

} // namespace qnewton
