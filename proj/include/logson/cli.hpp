#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "logson/report.hpp"

namespace logson::cli {

enum ExitCode : int {
    kOk = 0,
    kComputationFailure = 1,
    kValidationFailure = 2,
    kInconclusive = 3,
};

/// One row of an identity table.
struct IdentityCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;

    bool operator==(const IdentityCheck&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IdentityCheck, name, measured, tolerance, passed)

struct CommandResult {
    ReportEnvelope envelope;
    std::string csv;
    int exit_code = kOk;
};

/// Each command validates the config (ValidationError) and may throw SolverError or
/// DegenerateInput; dispatch() maps those to exit codes.
CommandResult cmd_gausson(const RunConfig& config);
CommandResult cmd_solve(const RunConfig& config);
CommandResult cmd_sphere(const RunConfig& config);
CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);

/// The identity suite behind `verify`, on a given solution.
std::vector<IdentityCheck> identity_suite(const SolveReport& solution, std::uint64_t seed);

/// Pohozaev tolerance per unit mass: the identity is only O(h^2)-accurate on the grid
/// (about 0.2 h^2 on ground states, up to 0.7 h^2 on nodal ones).
double pohozaev_tolerance(double step);

int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logson::cli
