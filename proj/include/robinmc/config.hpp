#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "robinmc/boundary.hpp"
#include "robinmc/estimators.hpp"
#include "robinmc/geometry.hpp"

namespace robinmc {

// schema violations carry the offending field path in what()
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProblemConfig {
    std::string id = "problem";
    Domain domain = Interval{0.0, 1.0};
    std::vector<ComponentBc> bcs;
    std::string f_name = "one";
    std::string kind = "semigroup";  // semigroup | resolvent
    double t = 0.0;
    double alpha = 0.0;
    std::vector<Point> points;

    RobinMeasure measure() const { return RobinMeasure(domain, bcs); }
};

struct OracleConfig {
    bool enabled = true;
    int m_nodes = 401;
    double dt = 2.5e-4;
    bool allowance = true;  // run h/4 to calibrate the discretization allowance
};

struct OutputConfig {
    std::string csv = "results.csv";
    std::string json_report = "report.json";
    std::string trace_csv;  // empty: no trace dump
    int verbosity = 1;
};

struct StudyConfig {
    std::vector<double> h_values{4e-4, 1e-4, 2.5e-5};
    std::vector<std::size_t> n_values{1000, 10000, 100000};
    std::vector<int> k_values{1, 2, 4, 8, 16};
};

struct RunConfig {
    ProblemConfig problem;
    SimConfig sim;
    std::size_t n_paths = 10000;
    OracleConfig oracle;
    OutputConfig output;
    StudyConfig study;

    nlohmann::ordered_json resolved() const;  // all defaults explicit
};

// Parses and schema-validates; unknown keys are rejected, errors name
// the field. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::ordered_json& j);
RunConfig load_run_config(const std::string& path);

const std::string& version_string();

// solve / study drivers; return process exit status (0 ok, 1 runtime
// failure). Artifacts land in out_dir.
int cmd_solve(const RunConfig& cfg, const std::string& out_dir);
int cmd_study(const std::string& kind, const RunConfig& cfg, const std::string& out_dir);

}  // namespace robinmc
