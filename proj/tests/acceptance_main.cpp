// Acceptance suite: one numbered criterion per run unit, each printing a
// single PASS/FAIL line with the quantities that decided it. Suite
// reports are dumped as JSON next to the binary for audit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "robinmc/estimators.hpp"
#include "robinmc/oracle.hpp"
#include "robinmc/testfuncs.hpp"
#include "robinmc/verify.hpp"

using namespace robinmc;

namespace {

std::string g_out_dir = "acceptance_reports";

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

void dump_report(const SuiteReport& rep, const std::string& tag) {
    std::filesystem::create_directories(g_out_dir);
    std::ofstream out(std::filesystem::path(g_out_dir) / (tag + ".json"), std::ios::binary);
    out << rep.to_json().dump(2) << "\n";
}

std::string failing_checks(const SuiteReport& rep) {
    std::string s;
    for (const auto& c : rep.checks)
        if (!c.pass)
            s += " [" + c.name + ": obs=" + std::to_string(c.observed) +
                 " ref=" + std::to_string(c.reference) + " tol=" + std::to_string(c.tolerance) +
                 "]";
    return s.empty() ? " all checks ok" : s;
}

CriterionResult from_suite(const SuiteReport& rep, const std::string& tag) {
    dump_report(rep, tag);
    return {rep.pass, std::to_string(rep.checks.size()) + " checks;" + failing_checks(rep)};
}

// 1. Neumann conservation: mean exactly 1, stderr exactly 0, under 1 s.
CriterionResult criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool exact = true;
    for (const Domain& dom : {Domain{Interval{0.0, 1.0}}, Domain{Rectangle{0.0, 1.0, 0.0, 1.0}},
                              Domain{Disk{{0.0, 0.0}, 1.0}}}) {
        const TestFunction f = make_test_function("one", dom);
        SimConfig cfg;
        cfg.h = 1e-3;
        cfg.T = 0.05;
        cfg.seed = 1;
        const Point x = dimension(dom) == 1 ? Point{0.5, 0.0} : Point{0.1, 0.2};
        const Estimate e = semigroup_weight(dom, RobinMeasure::neumann(dom), f, 0.05, x, 1000, cfg);
        exact = exact && e.mean == 1.0 && e.std_error == 0.0;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean==1.0 and stderr==0 on all domains: %s; runtime %.2fs",
                  exact ? "yes" : "NO", secs);
    return {exact && secs < 1.0, buf};
}

// 2. Robin oracle match at spec scale (interval x in {0.1, 0.5}; rectangle center).
CriterionResult criterion_2() {
    return from_suite(check_oracle_match(OracleMatchParams::defaults()), "criterion2_oracle_match");
}

// 3. Dirichlet absorption: bridge-on accuracy and bridge-off signed bias ladder.
CriterionResult criterion_3() {
    return from_suite(check_dirichlet_bias(DirichletBiasParams{}), "criterion3_dirichlet_bias");
}

// 4. Pathwise sandwich on 1e4 coupled paths, zero violations.
CriterionResult criterion_4() {
    return from_suite(check_sandwich(SandwichParams{}), "criterion4_sandwich");
}

// 5. Pathwise monotonicity along {0, 1/2, 1, 2, Dirichlet}, zero violations.
CriterionResult criterion_5() {
    return from_suite(check_monotone(MonotoneParams{}), "criterion5_monotone");
}

// 6. Weight vs killed estimator agreement on interval and disk problems.
CriterionResult criterion_6() {
    return from_suite(check_estimator_equivalence(EquivalenceParams::defaults()),
                      "criterion6_equivalence");
}

// 7. Resolvent identity residual plus 1/sqrt(n) contraction.
CriterionResult criterion_7() {
    return from_suite(check_resolvent_identity(ResolventIdentityParams{}),
                      "criterion7_resolvent_identity");
}

// 8. Revuz correspondence: one scheme constant across 1d and 2d within 5%.
CriterionResult criterion_8() {
    const SuiteReport rep = check_revuz(RevuzParams{});
    CriterionResult res = from_suite(rep, "criterion8_revuz");
    if (rep.config.contains("fitted_c"))
        res.detail += " fitted c = " + std::to_string(rep.config["fitted_c"].get<double>());
    return res;
}

// 9. Convergence in mu: beta/k gaps (exact monotone, ratio vs oracle) and
//    k*beta at k=1000 vs the Dirichlet oracle.
CriterionResult criterion_9() {
    return from_suite(check_mu_convergence(MuConvergenceParams{}), "criterion9_mu_convergence");
}

// 10. Oracle self-checks: observed order >= 1.9 everywhere, tensor identity.
CriterionResult criterion_10() {
    auto one1 = [](double) { return 1.0; };
    auto order = [](double e0, double e1) { return std::log2(e0 / e1); };
    std::string detail;
    bool pass = true;
    auto check_order = [&](const char* tag, double o) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " %s=%.2f", tag, o);
        detail += buf;
        pass = pass && o >= 1.9;
    };

    {  // elliptic 1d vs closed form
        const double exact = dirichlet_elliptic_interval_exact(1.0, 0.5);
        double err[3];
        int m = 41;
        for (int k = 0; k < 3; ++k, m = 2 * m - 1)
            err[k] = std::abs(
                fd_elliptic_1d(1.0, FdBc::dirichlet(), FdBc::dirichlet(), one1, m).value_at({0.5, 0.0}) -
                exact);
        check_order("elliptic1d", std::min(order(err[0], err[1]), order(err[1], err[2])));
    }
    {  // parabolic 1d vs the exact sine mode
        auto f0 = [](double x) { return std::sin(M_PI * x); };
        const double exact = std::exp(-M_PI * M_PI * 0.1 / 2.0);
        double err[3];
        int m = 41;
        double dt = 4e-3;
        for (int k = 0; k < 3; ++k, m = 2 * m - 1, dt /= 2.0)
            err[k] = std::abs(
                fd_parabolic_1d(0.1, FdBc::dirichlet(), FdBc::dirichlet(), f0, m, dt).value_at({0.5, 0.0}) -
                exact);
        check_order("parabolic1d", std::min(order(err[0], err[1]), order(err[1], err[2])));
    }
    {  // parabolic rect vs the series product
        const Domain rect{Rectangle{0.0, 1.0, 0.0, 1.0}};
        auto one2 = [](Point) { return 1.0; };
        const double s = dirichlet_heat_series_interval(0.1, 0.5);
        double err[3];
        int m = 21;
        double dt = 4e-3;
        for (int k = 0; k < 3; ++k, m = 2 * m - 1, dt /= 2.0)
            err[k] = std::abs(
                fd_parabolic_rect(0.1, RobinMeasure::all_dirichlet(rect), one2, m, m, dt).value_at({0.5, 0.5}) -
                s * s);
        check_order("parabolic2d", std::min(order(err[0], err[1]), order(err[1], err[2])));
    }
    {  // disk radial vs the Bessel closed form
        const double exact = dirichlet_elliptic_disk_center(1.0, 1.0);
        double err[3];
        int m = 51;
        for (int k = 0; k < 3; ++k, m = 2 * m - 1)
            err[k] = std::abs(
                disk_radial_elliptic(1.0, FdBc::dirichlet(), one1, m).value_at({0.0, 0.0}) - exact);
        check_order("disk", std::min(order(err[0], err[1]), order(err[1], err[2])));
    }
    {  // separable tensor-product identity
        const Domain rect{Rectangle{0.0, 1.0, 0.0, 1.0}};
        std::vector<ComponentBc> bcs{ComponentBc::robin(1.0), ComponentBc::robin(1.0),
                                     ComponentBc::neumann(), ComponentBc::neumann()};
        const RobinMeasure mu(rect, bcs);
        auto f2 = [](Point p) { return std::sin(M_PI * p.x) * std::cos(M_PI * p.y); };
        const int m = 101;
        const double dt = 1e-3;
        const FdSolution u2 = fd_parabolic_rect(0.1, mu, f2, m, m, dt);
        const FdSolution ux = fd_parabolic_1d(0.1, FdBc::robin(1.0), FdBc::robin(1.0),
                                              [](double x) { return std::sin(M_PI * x); }, m, dt);
        const FdSolution uy = fd_parabolic_1d(0.1, FdBc::neumann(), FdBc::neumann(),
                                              [](double y) { return std::cos(M_PI * y); }, m, dt);
        double worst = 0.0;
        for (Point p : {Point{0.5, 0.5}, Point{0.25, 0.75}, Point{0.1, 0.3}, Point{0.0, 1.0}})
            worst = std::max(worst, std::abs(u2.value_at(p) -
                                             ux.value_at({p.x, 0.0}) * uy.value_at({p.y, 0.0})));
        char buf[64];
        std::snprintf(buf, sizeof buf, " tensor=%.2e", worst);
        detail += buf;
        pass = pass && worst <= 1e-6;
    }
    return {pass, detail};
}

const char* kNames[] = {"neumann-conservation", "robin-oracle-match", "dirichlet-oracle-match",
                        "pathwise-sandwich",    "pathwise-monotonicity", "estimator-equivalence",
                        "resolvent-identity",   "revuz-correspondence",  "mu-convergence",
                        "oracle-self-checks"};

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return criterion_1();
        case 2: return criterion_2();
        case 3: return criterion_3();
        case 4: return criterion_4();
        case 5: return criterion_5();
        case 6: return criterion_6();
        case 7: return criterion_7();
        case 8: return criterion_8();
        case 9: return criterion_9();
        case 10: return criterion_10();
        default: return {false, "unknown criterion id"};
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
            g_out_dir = argv[++i];
            continue;
        }
        ids.push_back(std::atoi(argv[i]));
    }
    if (ids.empty())
        for (int i = 1; i <= 10; ++i) ids.push_back(i);

    bool all_pass = true;
    for (int id : ids) {
        if (id < 1 || id > 10) {
            std::fprintf(stderr, "criterion ids are 1..10\n");
            return 2;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const CriterionResult res = run_criterion(id);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d [%s]: %s (%.1fs)%s%s\n", id, kNames[id - 1],
                    res.pass ? "PASS" : "FAIL", secs, res.detail.empty() ? "" : " -- ",
                    res.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : 1;
}
