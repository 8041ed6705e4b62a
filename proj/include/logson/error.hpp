#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace logson {

/// Input that makes a functional undefined (zero mass, non-positive scale, ...).
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A solver could not produce a result. `diagnostics` carries the history that led there.
class SolverError : public std::runtime_error {
public:
    enum class Kind {
        BracketFailure,
        NoConvergence,
        SingularLinearization,
        Divergence,
        StepCollapse,
        EigenNonConvergence,
    };

    SolverError(Kind kind, const std::string& what, std::vector<std::string> diagnostics = {})
        : std::runtime_error(what), kind_(kind), diagnostics_(std::move(diagnostics)) {}

    Kind kind() const noexcept { return kind_; }
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    Kind kind_;
    std::vector<std::string> diagnostics_;
};

/// Rejected configuration (CLI exit status 2).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace logson
