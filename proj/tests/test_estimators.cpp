#include <doctest.h>

#include <cmath>

#include "robinmc/estimators.hpp"
#include "robinmc/oracle.hpp"
#include "robinmc/parallel.hpp"
#include "robinmc/rng.hpp"
#include "robinmc/testfuncs.hpp"

using namespace robinmc;

namespace {

SimConfig cfg_of(double h, double T, std::uint64_t seed) {
    SimConfig cfg;
    cfg.h = h;
    cfg.T = T;
    cfg.seed = seed;
    return cfg;
}

double sample_variance(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("conservation: Neumann measure, f = 1 gives exactly 1 with zero stderr") {
    const Domain domains[] = {Interval{0.0, 1.0}, Rectangle{0.0, 1.0, 0.0, 1.0},
                              Disk{{0.0, 0.0}, 1.0}};
    for (const Domain& dom : domains) {
        const TestFunction f = make_test_function("one", dom);
        const SimConfig cfg = cfg_of(1e-3, 0.05, 1);
        const Point x = std::get_if<Interval>(&dom) ? Point{0.5, 0.0} : Point{0.1, 0.2};
        const Estimate e =
            semigroup_weight(dom, RobinMeasure::neumann(dom), f, 0.05, x, 128, cfg);
        CHECK(e.mean == 1.0);
        CHECK(e.std_error == 0.0);
        const Estimate k =
            semigroup_killed(dom, RobinMeasure::neumann(dom), f, 0.05, x, 128, cfg);
        CHECK(k.mean == 1.0);
        CHECK(k.std_error == 0.0);
    }
}

TEST_CASE("resolvent conservation: every path returns exactly 1/alpha") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    const SimConfig cfg = cfg_of(1e-3, 1.0, 2);
    const auto samples =
        resolvent_samples(dom, RobinMeasure::neumann(dom), f, 2.0, {0.5, 0.0}, 256, cfg);
    for (double s : samples) CHECK(s == 0.5);
    const Estimate e = resolvent(dom, RobinMeasure::neumann(dom), f, 2.0, {0.5, 0.0}, 256, cfg);
    CHECK(e.mean == 0.5);
    CHECK(e.std_error <= 1e-15);
}

TEST_CASE("pathwise sub-Markov bound: contributions stay in [0, sup f]") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("sin_pi_x", dom);
    const SimConfig cfg = cfg_of(5e-4, 0.1, 3);
    const RobinMeasure mu = RobinMeasure::uniform_robin(dom, 1.0);
    for (double s : semigroup_weight_samples(dom, mu, f, 0.1, {0.3, 0.0}, 2000, cfg)) {
        CHECK(s >= 0.0);
        CHECK(s <= f.sup_norm_bound);
    }
}

TEST_CASE("Dirichlet survival matches the odd-sine series") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    SimConfig cfg = cfg_of(1e-4, 0.1, 4);
    cfg.bridge_correction = true;
    const Estimate e = semigroup_weight(dom, RobinMeasure::all_dirichlet(dom), f, 0.1,
                                        {0.5, 0.0}, 20000, cfg);
    CHECK(e.kind == EstimatorKind::dirichlet);
    const double series = dirichlet_heat_series_interval(0.1, 0.5);
    CHECK(std::abs(e.mean - series) <= 4.0 * e.std_error + 0.004);
}

TEST_CASE("Robin semigroup matches the FD oracle (loose unit-scale check)") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    const RobinMeasure mu = RobinMeasure::uniform_robin(dom, 1.0);
    const SimConfig cfg = cfg_of(2e-4, 0.25, 5);
    const Estimate e = semigroup_weight(dom, mu, f, 0.25, {0.5, 0.0}, 20000, cfg);
    const double oracle = semigroup_oracle_value(dom, mu, f.eval, 0.25, {0.5, 0.0}, 401, 2.5e-4);
    CHECK(std::abs(e.mean - oracle) <= 4.0 * e.std_error + 0.01);
}

TEST_CASE("killed estimator carries more variance than the weight estimator") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    const RobinMeasure mu = RobinMeasure::uniform_robin(dom, 1.0);
    const SimConfig cfg = cfg_of(2e-4, 0.25, 6);
    auto [w, k] = weight_killed_samples(dom, mu, f, 0.25, {0.5, 0.0}, 20000, cfg);
    CHECK(sample_variance(k) > sample_variance(w));
}

TEST_CASE("resolvent matches the FD oracle, Robin and Dirichlet") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    const SimConfig cfg = cfg_of(2e-4, 1.0, 7);
    {
        const RobinMeasure mu = RobinMeasure::uniform_robin(dom, 1.0);
        const Estimate e = resolvent(dom, mu, f, 1.0, {0.5, 0.0}, 20000, cfg);
        const double oracle = resolvent_oracle_value(dom, mu, f.eval, 1.0, {0.5, 0.0}, 801);
        CHECK(std::abs(e.mean - oracle) <= 4.0 * e.std_error + 0.01);
    }
    {
        SimConfig bcfg = cfg;
        bcfg.bridge_correction = true;
        const RobinMeasure mu = RobinMeasure::all_dirichlet(dom);
        const Estimate e = resolvent(dom, mu, f, 1.0, {0.5, 0.0}, 20000, bcfg);
        const double oracle = dirichlet_elliptic_interval_exact(1.0, 0.5);
        CHECK(std::abs(e.mean - oracle) <= 4.0 * e.std_error + 0.01);
    }
}

TEST_CASE("potential_U vanishes without measure or integrand") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    const TestFunction zero{"zero", [](Point) { return 0.0; }, 0.0};
    const SimConfig cfg = cfg_of(5e-4, 2.0, 8);
    const Estimate a = potential_U(dom, RobinMeasure::neumann(dom), f, 1.0, {0.5, 0.0}, 512, cfg);
    CHECK(a.mean == 0.0);
    CHECK(a.std_error == 0.0);
    const Estimate b =
        potential_U(dom, RobinMeasure::uniform_robin(dom, 1.0), zero, 1.0, {0.5, 0.0}, 512, cfg);
    CHECK(b.mean == 0.0);
    CHECK(b.truncation_bound == 0.0);
}

TEST_CASE("revuz rate: zero without measure; half-line identity fixes the scale") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    SimConfig cfg = cfg_of(1e-5, 1e-3, 9);
    const Estimate zero = revuz_rate(dom, RobinMeasure::neumann(dom), f, 1e-3, 512, cfg);
    CHECK(zero.mean == 0.0);

    // E_Leb[ell_t] = t/2 per endpoint for the reflecting walk, so the
    // rate for beta = 1 on both ends extrapolates to 2 * (1/2) = 1.
    const Estimate rate =
        revuz_rate(dom, RobinMeasure::uniform_robin(dom, 1.0), f, 1e-3, 50000, cfg);
    CHECK(std::abs(rate.mean - 1.0) <= std::max(0.04, 5.0 * rate.std_error));
}

TEST_CASE("deterministic replay: thread count does not change the bits") {
    const Domain dom{Disk{{0.0, 0.0}, 1.0}};
    const TestFunction f = make_test_function("radial_bump", dom);
    const RobinMeasure mu = RobinMeasure::uniform_robin(dom, 1.0);
    const SimConfig cfg = cfg_of(1e-3, 0.1, 10);

    const unsigned before = max_threads();
    set_max_threads(1);
    const Estimate a = semigroup_weight(dom, mu, f, 0.1, {0.2, 0.1}, 4000, cfg);
    set_max_threads(2);
    const Estimate b = semigroup_weight(dom, mu, f, 0.1, {0.2, 0.1}, 4000, cfg);
    set_max_threads(7);
    const Estimate c = semigroup_weight(dom, mu, f, 0.1, {0.2, 0.1}, 4000, cfg);
    set_max_threads(before);

    CHECK(a.mean == b.mean);
    CHECK(b.mean == c.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(b.std_error == c.std_error);
}

TEST_CASE("coupled ladders preserve exact pathwise order") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    SimConfig cfg = cfg_of(5e-4, 0.1, 11);
    std::vector<RobinMeasure> rungs{
        RobinMeasure::neumann(dom), RobinMeasure::uniform_robin(dom, 0.5),
        RobinMeasure::uniform_robin(dom, 1.0), RobinMeasure::uniform_robin(dom, 2.0),
        RobinMeasure::all_dirichlet(dom)};
    const auto samples = coupled_semigroup_samples(dom, rungs, f, 0.1, {0.2, 0.0}, 3000, cfg);
    for (std::size_t i = 0; i < 3000; ++i)
        for (std::size_t k = 1; k < rungs.size(); ++k) CHECK(samples[k][i] <= samples[k - 1][i]);

    const auto res = coupled_resolvent_samples(dom, rungs, f, 1.0, {0.2, 0.0}, 1000, cfg);
    for (std::size_t i = 0; i < 1000; ++i)
        for (std::size_t k = 1; k < rungs.size(); ++k) CHECK(res[k][i] <= res[k - 1][i]);
}

TEST_CASE("estimator input validation") {
    const Domain dom{Interval{0.0, 1.0}};
    const TestFunction f = make_test_function("one", dom);
    const RobinMeasure mu = RobinMeasure::neumann(dom);
    const SimConfig cfg = cfg_of(1e-3, 0.1, 12);
    CHECK_THROWS_AS(semigroup_weight(dom, mu, f, 0.1, {0.5, 0.0}, 1, cfg), std::invalid_argument);
    CHECK_THROWS_AS(semigroup_weight(dom, mu, f, 0.2, {0.5, 0.0}, 16, cfg),
                    std::invalid_argument);  // t beyond the horizon
    CHECK_THROWS_AS(semigroup_weight(dom, mu, f, 0.1, {1.5, 0.0}, 16, cfg),
                    std::invalid_argument);  // start outside
    CHECK_THROWS_AS(resolvent(dom, mu, f, 0.0, {0.5, 0.0}, 16, cfg), std::invalid_argument);
    CHECK_THROWS_AS(resolvent(dom, mu, f, -1.0, {0.5, 0.0}, 16, cfg), std::invalid_argument);
    CHECK_THROWS_AS(revuz_rate(dom, mu, f, 0.0, 16, cfg), std::invalid_argument);
    CHECK_THROWS_AS(potential_U(dom, mu, f, 0.0, {0.5, 0.0}, 16, cfg), std::invalid_argument);
}

TEST_CASE("registry functions respect their sup-norm bounds on a grid") {
    const Domain domains[] = {Interval{0.0, 1.0}, Rectangle{0.0, 2.0, -1.0, 1.0},
                              Disk{{0.5, -0.5}, 1.5}};
    for (const Domain& dom : domains) {
        for (const auto& name : test_function_names()) {
            const TestFunction f = make_test_function(name, dom);
            RngStream rng(3, 1, 0);
            for (int i = 0; i < 500; ++i) {
                // rejection-sample interior grid points
                Point p{-2.0 + 6.0 * rng.uniform(), -3.0 + 6.0 * rng.uniform()};
                if (dimension(dom) == 1) p.y = 0.0;
                if (!contains(dom, p)) continue;
                CHECK(std::abs(f.eval(p)) <= f.sup_norm_bound + 1e-12);
            }
        }
    }
}

TEST_CASE("occupation scheme requires a positive bandwidth") {
    SimConfig cfg;
    cfg.h = 1e-3;
    cfg.scheme = Scheme::occupation;
    cfg.eps = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.eps = 1e-3;
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("pairwise sum is exact on integers and order-stable") {
    std::vector<double> v(1000, 1.0);
    CHECK(pairwise_sum(v) == 1000.0);
    std::vector<double> w;
    for (int i = 0; i < 1234; ++i) w.push_back(i % 7 == 0 ? 1e16 : 1.0);
    const double s1 = pairwise_sum(w);
    const double s2 = pairwise_sum(w);
    CHECK(s1 == s2);
}
