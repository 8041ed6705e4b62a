#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "logson/functionals.hpp"
#include "logson/gausson.hpp"
#include "logson/solvers.hpp"
#include "logson/spectral.hpp"

namespace logson {

inline constexpr const char* kReportSchema = "logson.report";
inline constexpr int kReportSchemaVersion = 1;

/// Everything a CLI run depends on. Defaults are echoed into every report.
struct RunConfig {
    std::string command;
    int dim = 3;
    double omega = 1.0;
    double r_max = 12.0;
    double step = 0.01;
    int node_target = 0;
    bool sweep = false;               // solve: all node targets 0..node_target
    std::optional<double> nu;         // sphere: default 2 m_omega = e^{omega+n} pi^{n/2}
    int k_max = 4;
    std::optional<double> zero_tol;   // spectrum: default scales with h^2
    std::string out;
    std::string format = "report";
    std::uint64_t seed = 1;
    bool perturb = false;             // verify: run the suite on a perturbed field

    /// Throws ValidationError naming the first offending field.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

struct ReportEnvelope {
    std::string schema = kReportSchema;
    int schema_version = kReportSchemaVersion;
    std::string tool_version;
    std::string command;
    RunConfig config;
    nlohmann::json results;
    double duration_seconds = 0.0;

    bool operator==(const ReportEnvelope&) const = default;
};

std::string emit(const ReportEnvelope& envelope);
/// Throws ValidationError on malformed text or a schema mismatch.
ReportEnvelope parse_report(const std::string& text);

/// CSV with header "r,value", one row per node.
std::string field_csv(const Field& field);

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);
/// Fields carry their grid as (dim, r_max, nodes).
void to_json(nlohmann::json& j, const Field& f);
void from_json(const nlohmann::json& j, Field& f);
void to_json(nlohmann::json& j, const ReportEnvelope& e);
void from_json(const nlohmann::json& j, ReportEnvelope& e);

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EnergyBreakdown, mass, kinetic, entropy, entropy_plus, entropy_minus, J_value,
                                   E_value, omega)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DefectReport, residual_norm, nehari_defect, pohozaev_defect)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GaussonInvariants, omega, dim, mass, kinetic, entropy, action_m, center_value)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SolveReport, field, omega, node_count, energy, defects, iterations, converged,
                                   center_value, residual_history, energy_history, floored_nodes, notes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HarmonicSector, k, dim, lambda, multiplicity)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SectorSpectrum, sector, values, vectors, sign_changes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(KernelCandidate, k, eigenvalue, multiplicity, eigenvector, mode_similarity)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SpectrumReport, dim, k_max, zero_tol, sectors, kernel_candidates, ambiguous,
                                   inconclusive, nondegenerate, kernel_dimension, ground_similarity, analytic_note)

}  // namespace logson
