#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "robinmc/estimators.hpp"
#include "robinmc/oracle.hpp"

namespace robinmc {

using json = nlohmann::ordered_json;

struct CheckRecord {
    std::string name;
    json inputs;  // enough to replay: domain, measure, cfg, n, seeds
    double observed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    json config;
    std::vector<CheckRecord> checks;
    bool pass = true;

    void add(CheckRecord rec);
    json to_json() const;
};

// ---- sandwich: Dirichlet <= Robin <= Neumann, pathwise and in the mean

struct SandwichParams {
    Domain dom = Interval{0.0, 1.0};
    double beta = 1.0;
    std::string f_name = "one";
    double t = 0.25;
    Point x{0.5, 0.0};
    std::size_t n = 10000;
    SimConfig cfg{1e-4, Scheme::projection, 1e-2, false, 0.25, 1};
    int oracle_m = 401;
    double oracle_dt = 2.5e-4;
    std::size_t n_allow = 0;  // 0 -> n/4 (h/4 run for the discretization allowance)
};
SuiteReport check_sandwich(const SandwichParams& p);

// ---- monotonicity in the measure along a beta ladder (+ Dirichlet top)

struct MonotoneParams {
    Domain dom = Interval{0.0, 1.0};
    std::vector<double> betas{0.0, 0.5, 1.0, 2.0};
    bool dirichlet_top = true;
    std::string f_name = "one";
    double t = 0.25;
    Point x{0.5, 0.0};
    std::size_t n = 10000;
    SimConfig cfg{1e-4, Scheme::projection, 1e-2, false, 0.25, 2};
    int oracle_m = 401;
    double oracle_dt = 2.5e-4;
    std::size_t n_allow = 0;
};
SuiteReport check_monotone(const MonotoneParams& p);

// ---- weight vs killed estimator agreement (one problem per entry)

struct EquivalenceProblem {
    Domain dom = Interval{0.0, 1.0};
    double beta = 1.0;
    std::string f_name = "one";
    double t = 0.25;
    Point x{0.5, 0.0};
    std::size_t n = 100000;
};
struct EquivalenceParams {
    std::vector<EquivalenceProblem> problems;
    SimConfig cfg{1e-4, Scheme::projection, 1e-2, false, 0.25, 3};
    static EquivalenceParams defaults();
};
SuiteReport check_estimator_equivalence(const EquivalenceParams& p);

// ---- resolvent identity R^A f - R f + U^alpha(R^A f) = 0

struct ResolventIdentityParams {
    Domain dom = Interval{0.0, 1.0};
    double beta = 1.0;
    double alpha = 1.0;
    std::string f_name = "one";
    Point x{0.5, 0.0};
    std::size_t n = 100000;
    SimConfig cfg{4e-4, Scheme::projection, 1e-2, false, 6.0, 4};  // T = potential horizon
    int oracle_m = 2001;
    std::size_t n_allow = 0;
    // 1/sqrt(n) scaling sub-check (coarser h keeps it tractable)
    bool scaling = true;
    std::size_t n_small = 10000;
    std::size_t n_big = 1000000;
    double h_scale = 2e-3;
    double scale_T = 5.0;
};
SuiteReport check_resolvent_identity(const ResolventIdentityParams& p);

// ---- convergence in mu: beta/k to Neumann, k*beta to Dirichlet

struct MuConvergenceParams {
    Domain dom = Interval{0.0, 1.0};
    double beta = 1.0;
    double alpha = 1.0;
    std::string f_name = "one";
    Point x{0.5, 0.0};
    std::size_t n = 100000;
    std::vector<int> ks_decreasing{1, 2, 4, 8, 16};
    std::vector<int> ks_increasing{1, 10, 100, 1000};
    SimConfig cfg{1e-4, Scheme::projection, 1e-2, false, 1.0, 5};
    int oracle_m = 2001;
    std::size_t n_allow = 0;
};
SuiteReport check_mu_convergence(const MuConvergenceParams& p);

// ---- Revuz correspondence: rate extrapolation to c * integral(beta dsigma)

struct RevuzParams {
    double beta = 1.0;
    std::string f_name = "one";
    std::vector<double> t_ladder{4e-3, 2e-3, 1e-3};
    std::size_t n = 400000;
    SimConfig cfg{1e-5, Scheme::projection, 1e-2, false, 4e-3, 6};
    double consistency_rel = 0.05;
};
SuiteReport check_revuz(const RevuzParams& p);

// ---- MC semigroup vs FD oracle at spec scale (with self-calibrated allowance)

struct OracleMatchProblem {
    Domain dom = Interval{0.0, 1.0};
    double beta = 1.0;
    std::string f_name = "one";
    double t = 0.25;
    std::vector<Point> xs{{0.1, 0.0}, {0.5, 0.0}};
    std::size_t n = 200000;
    int oracle_m = 401;
    double oracle_dt = 2.5e-4;
};
struct OracleMatchParams {
    std::vector<OracleMatchProblem> problems;
    SimConfig cfg{1e-4, Scheme::projection, 1e-2, false, 0.25, 7};
    std::size_t n_allow = 0;
    double rel_target = 0.015;  // (3 se + allowance) / oracle must stay below this
    static OracleMatchParams defaults();
};
SuiteReport check_oracle_match(const OracleMatchParams& p);

// ---- Dirichlet absorption: bridge-on accuracy, bridge-off signed bias

struct DirichletBiasParams {
    Domain dom = Interval{0.0, 1.0};
    double t = 0.1;
    Point x{0.5, 0.0};
    std::size_t n = 200000;
    double h_bridge = 1e-4;              // bridge-on accuracy run
    std::vector<double> hs{4e-4, 1e-4, 2.5e-5};  // bridge-off bias ladder
    std::uint64_t seed = 8;
    std::size_t n_allow = 0;
};
SuiteReport check_dirichlet_bias(const DirichletBiasParams& p);

// ---- registry for the CLI

std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);
// Runs a suite with its default (full-scale) parameters; seed_override
// reseeds every internal SimConfig, threads stay as configured globally.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace robinmc
