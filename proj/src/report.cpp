#include "logson/report.hpp"

#include <cmath>
#include <sstream>

#include "logson/error.hpp"

namespace logson {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void RunConfig::validate() const {
    require(command == "gausson" || command == "solve" || command == "sphere" || command == "spectrum" ||
                command == "verify",
            "unknown command '" + command + "'");
    require(dim >= 3 && dim <= 10, "--dim must be in [3, 10]");
    require(finite(omega) && std::abs(omega) <= 50.0, "--omega must be finite with |omega| <= 50");
    require(finite(r_max) && r_max > 0.0 && r_max <= 1000.0, "--rmax must be in (0, 1000]");
    require(finite(step) && step > 0.0, "--step must be positive");
    const double cells = r_max / step;
    require(cells >= 17.0, "--step too large for --rmax (need at least 16 interior nodes)");
    require(cells <= 5e7, "--step too small (grid would exceed 5e7 nodes)");
    require(node_target >= 0 && node_target <= 8, "--nodes must be in [0, 8]");
    if (nu) require(finite(*nu) && *nu > 0.0, "--nu must be positive");
    require(k_max >= 2 && k_max <= 64, "--kmax must be in [2, 64]");
    if (zero_tol) require(finite(*zero_tol) && *zero_tol > 0.0, "--zero-tol must be positive");
    require(format == "report" || format == "csv", "--format must be 'report' or 'csv'");
}

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", c.command},
                       {"dim", c.dim},
                       {"omega", c.omega},
                       {"r_max", c.r_max},
                       {"step", c.step},
                       {"node_target", c.node_target},
                       {"sweep", c.sweep},
                       {"nu", c.nu ? nlohmann::json(*c.nu) : nlohmann::json(nullptr)},
                       {"k_max", c.k_max},
                       {"zero_tol", c.zero_tol ? nlohmann::json(*c.zero_tol) : nlohmann::json(nullptr)},
                       {"out", c.out},
                       {"format", c.format},
                       {"seed", c.seed},
                       {"perturb", c.perturb}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    j.at("command").get_to(c.command);
    j.at("dim").get_to(c.dim);
    j.at("omega").get_to(c.omega);
    j.at("r_max").get_to(c.r_max);
    j.at("step").get_to(c.step);
    j.at("node_target").get_to(c.node_target);
    j.at("sweep").get_to(c.sweep);
    c.nu = j.at("nu").is_null() ? std::nullopt : std::optional<double>(j.at("nu").get<double>());
    j.at("k_max").get_to(c.k_max);
    c.zero_tol = j.at("zero_tol").is_null() ? std::nullopt : std::optional<double>(j.at("zero_tol").get<double>());
    j.at("out").get_to(c.out);
    j.at("format").get_to(c.format);
    j.at("seed").get_to(c.seed);
    j.at("perturb").get_to(c.perturb);
}

void to_json(nlohmann::json& j, const Field& f) {
    if (!f.grid) {
        j = nullptr;
        return;
    }
    j = nlohmann::json{{"grid", {{"dim", f.grid->dim()}, {"r_max", f.grid->r_max()}, {"nodes", f.grid->size()}}},
                       {"values", f.values}};
}

void from_json(const nlohmann::json& j, Field& f) {
    if (j.is_null()) {
        f = Field();
        return;
    }
    const auto& g = j.at("grid");
    auto grid = std::make_shared<const RadialGrid>(g.at("dim").get<int>(), g.at("r_max").get<double>(),
                                                   g.at("nodes").get<std::size_t>());
    f = Field(std::move(grid), j.at("values").get<std::vector<double>>());
}

void to_json(nlohmann::json& j, const ReportEnvelope& e) {
    j = nlohmann::json{{"schema", e.schema},
                       {"schema_version", e.schema_version},
                       {"tool_version", e.tool_version},
                       {"command", e.command},
                       {"config", e.config},
                       {"results", e.results},
                       {"duration_seconds", e.duration_seconds}};
}

void from_json(const nlohmann::json& j, ReportEnvelope& e) {
    j.at("schema").get_to(e.schema);
    j.at("schema_version").get_to(e.schema_version);
    j.at("tool_version").get_to(e.tool_version);
    j.at("command").get_to(e.command);
    j.at("config").get_to(e.config);
    e.results = j.at("results");
    j.at("duration_seconds").get_to(e.duration_seconds);
}

std::string emit(const ReportEnvelope& envelope) { return nlohmann::json(envelope).dump(2) + "\n"; }

ReportEnvelope parse_report(const std::string& text) {
    ReportEnvelope e;
    try {
        nlohmann::json::parse(text).get_to(e);
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("malformed report: ") + ex.what());
    }
    if (e.schema != kReportSchema) throw ValidationError("not a logson report (schema '" + e.schema + "')");
    if (e.schema_version != kReportSchemaVersion)
        throw ValidationError("unsupported report schema version " + std::to_string(e.schema_version));
    return e;
}

std::string field_csv(const Field& field) {
    std::ostringstream s;
    s.precision(17);
    s << "r,value\n";
    for (std::size_t i = 0; i < field.size(); ++i) s << field.grid->node(i) << ',' << field.values[i] << '\n';
    return s.str();
}

}  // namespace logson
