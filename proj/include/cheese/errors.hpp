#pragma once

#include <stdexcept>
#include <string>

namespace cheese {

enum class ErrorKind {
    EmbeddingInvalid,
    DegenerateMetric,
    InvalidObject,
    NotIndependent,
    InvalidCycle,
    Consistency,
    Budget,
    Parameter,
    Precondition,
    Generation,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

/// Internal-consistency checks. These firing means a structural theorem the
/// machinery relies on failed on a concrete input; tests surface them.
inline void check_consistency(bool ok, const std::string& what) {
    if (!ok) raise(ErrorKind::Consistency, what);
}

}  // namespace cheese
