#include <doctest.h>

#include "robinmc/verify.hpp"

using namespace robinmc;

namespace {

// unit-scale parameter shrinkage; acceptance runs the spec-scale defaults
SandwichParams small_sandwich() {
    SandwichParams p;
    p.n = 2000;
    p.cfg.h = 2.5e-4;
    p.cfg.seed = 101;
    p.oracle_m = 201;
    p.oracle_dt = 5e-4;
    return p;
}

}  // namespace

TEST_CASE("sandwich suite passes at unit scale") {
    const SuiteReport rep = check_sandwich(small_sandwich());
    CHECK(rep.pass);
    REQUIRE(!rep.checks.empty());
    CHECK(rep.checks[0].name == "pathwise-order-violations");
    CHECK(rep.checks[0].observed == 0.0);
}

TEST_CASE("sandwich suite with beta = 0: Robin and Neumann coincide per path") {
    SandwichParams p = small_sandwich();
    p.beta = 0.0;
    const SuiteReport rep = check_sandwich(p);
    CHECK(rep.pass);
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name == "zero-beta-robin-equals-neumann") {
            found = true;
            CHECK(c.observed == 0.0);
        }
    CHECK(found);
}

TEST_CASE("monotone suite passes at unit scale") {
    MonotoneParams p;
    p.n = 2000;
    p.cfg.h = 2.5e-4;
    p.cfg.seed = 102;
    p.oracle_m = 201;
    p.oracle_dt = 5e-4;
    const SuiteReport rep = check_monotone(p);
    CHECK(rep.pass);
    for (const auto& c : rep.checks)
        if (c.name == "pathwise-monotone-violations") CHECK(c.observed == 0.0);
}

TEST_CASE("equivalence suite at unit scale (interval only)") {
    EquivalenceParams p;
    p.problems.push_back({Interval{0.0, 1.0}, 1.0, "one", 0.25, {0.5, 0.0}, 20000});
    p.cfg.h = 2.5e-4;
    p.cfg.seed = 103;
    const SuiteReport rep = check_estimator_equivalence(p);
    CHECK(rep.pass);
}

TEST_CASE("resolvent identity suite at unit scale") {
    ResolventIdentityParams p;
    p.n = 20000;
    p.cfg.h = 1e-3;
    p.cfg.T = 5.0;
    p.cfg.seed = 104;
    p.oracle_m = 801;
    p.scaling = false;
    const SuiteReport rep = check_resolvent_identity(p);
    CHECK(rep.pass);
}

TEST_CASE("mu-convergence suite at unit scale") {
    MuConvergenceParams p;
    p.n = 20000;
    p.cfg.h = 5e-4;
    p.cfg.seed = 105;
    p.oracle_m = 801;
    const SuiteReport rep = check_mu_convergence(p);
    CHECK(rep.pass);
    for (const auto& c : rep.checks)
        if (c.name == "pathwise-chain-violations") CHECK(c.observed == 0.0);
}

TEST_CASE("dirichlet-bias suite at unit scale") {
    DirichletBiasParams p;
    p.n = 30000;
    p.hs = {8e-4, 1e-4};
    p.h_bridge = 2e-4;
    p.seed = 106;
    const SuiteReport rep = check_dirichlet_bias(p);
    CHECK(rep.pass);
}

TEST_CASE("oracle-match suite at unit scale") {
    OracleMatchParams p;
    p.problems.push_back({Interval{0.0, 1.0}, 1.0, "one", 0.25, {{0.5, 0.0}}, 20000, 201, 5e-4});
    p.cfg.h = 2e-4;
    p.cfg.seed = 107;
    p.rel_target = 0.04;  // unit-scale stderr needs a wider budget than spec scale
    const SuiteReport rep = check_oracle_match(p);
    CHECK(rep.pass);
}

TEST_CASE("revuz suite at unit scale") {
    RevuzParams p;
    p.n = 60000;
    p.cfg.seed = 108;
    p.consistency_rel = 0.1;  // unit-scale noise; spec scale uses 0.05
    const SuiteReport rep = check_revuz(p);
    CHECK(rep.pass);
    CHECK(rep.config.contains("fitted_c"));
    // the projection-scheme constant sits near 1/2
    const double c = rep.config["fitted_c"].get<double>();
    CHECK(c > 0.4);
    CHECK(c < 0.6);
}

TEST_CASE("suite reports are deterministic and auditable") {
    const SuiteReport a = check_sandwich(small_sandwich());
    const SuiteReport b = check_sandwich(small_sandwich());
    CHECK(a.to_json().dump(2) == b.to_json().dump(2));
    for (const auto& c : a.checks) {
        CHECK(c.inputs.is_object());  // replay data present
        CHECK(std::isfinite(c.observed));
        CHECK(std::isfinite(c.tolerance));
    }
}

TEST_CASE("suite registry") {
    CHECK(is_suite_name("sandwich"));
    CHECK(is_suite_name("revuz"));
    CHECK_FALSE(is_suite_name("nosuch"));
    CHECK(suite_names().size() == 8);
    CHECK_THROWS_AS(run_suite("nosuch", 1), std::invalid_argument);
}
