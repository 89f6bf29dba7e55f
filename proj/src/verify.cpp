#include "robinmc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "robinmc/testfuncs.hpp"

namespace robinmc {

void SuiteReport::add(CheckRecord rec) {
    pass = pass && rec.pass;
    checks.push_back(std::move(rec));
}

json SuiteReport::to_json() const {
    json j;
    j["suite"] = suite;
    j["pass"] = pass;
    j["config"] = config;
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["observed"] = c.observed;
        jc["reference"] = c.reference;
        jc["tolerance"] = c.tolerance;
        jc["inputs"] = c.inputs;
        if (!c.note.empty()) jc["note"] = c.note;
        j["checks"].push_back(jc);
    }
    return j;
}

namespace {

CheckRecord abs_check(std::string name, json inputs, double observed, double reference,
                      double tolerance, std::string note = "") {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.inputs = std::move(inputs);
    rec.observed = observed;
    rec.reference = reference;
    // roundoff floor so exact cases (stderr = 0) survive oracle arithmetic
    rec.tolerance = tolerance + 1e-10 * (1.0 + std::abs(reference));
    rec.pass = std::abs(observed - reference) <= rec.tolerance;
    rec.note = std::move(note);
    return rec;
}

CheckRecord count_check(std::string name, json inputs, double count, std::string note = "") {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.inputs = std::move(inputs);
    rec.observed = count;
    rec.reference = 0.0;
    rec.tolerance = 0.0;
    rec.pass = (count == 0.0);
    rec.note = std::move(note);
    return rec;
}

json sim_json(const SimConfig& cfg) {
    return json{{"h", cfg.h},
                {"scheme", cfg.scheme == Scheme::projection ? "projection" : "occupation"},
                {"eps", cfg.eps},
                {"bridge_correction", cfg.bridge_correction},
                {"T", cfg.T},
                {"seed", cfg.seed}};
}

json point_json(Point p) { return json::array({p.x, p.y}); }

std::size_t allowance_paths(std::size_t n, std::size_t n_allow) {
    return n_allow ? n_allow : std::max<std::size_t>(n / 2, 2);
}

SimConfig refined(SimConfig cfg) {
    cfg.h /= 4.0;
    return cfg;
}

// Discretization allowance from an (h, h/4) pair. The projection scheme
// is weak order 1/2, so the observed difference is about half the bias
// at h; tripling it reconstructs the bias with a 1.5x margin, and the
// 2-sigma term covers the calibration runs' own sampling noise.
double calibrated_allowance(double mean_h, double se_h, double mean_fine, double se_fine) {
    return 3.0 * (std::abs(mean_h - mean_fine) + 2.0 * std::hypot(se_h, se_fine));
}

struct Rung {
    std::string label;
    RobinMeasure measure;
};

std::vector<RobinMeasure> measures_of(const std::vector<Rung>& rungs) {
    std::vector<RobinMeasure> out;
    out.reserve(rungs.size());
    for (const auto& r : rungs) out.push_back(r.measure);
    return out;
}

// per-rung estimates from a coupled run at the given (cfg, n)
std::vector<Estimate> coupled_estimates(const Domain& dom, const std::vector<Rung>& rungs,
                                        const TestFunction& f, double t, Point x, std::size_t n,
                                        const SimConfig& cfg) {
    auto samples = coupled_semigroup_samples(dom, measures_of(rungs), f, t, x, n, cfg);
    std::vector<Estimate> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(summarize(s, cfg, EstimatorKind::weight));
    return out;
}

}  // namespace

// --------------------------------------------------------------- sandwich

SuiteReport check_sandwich(const SandwichParams& p) {
    SuiteReport rep;
    rep.suite = "sandwich";
    const TestFunction f = make_test_function(p.f_name, p.dom);
    SimConfig cfg = p.cfg;
    cfg.T = p.t;

    std::vector<Rung> rungs{{"neumann", RobinMeasure::neumann(p.dom)},
                            {"robin", RobinMeasure::uniform_robin(p.dom, p.beta)},
                            {"dirichlet", RobinMeasure::all_dirichlet(p.dom)}};

    rep.config = json{{"domain", describe(p.dom)}, {"beta", p.beta}, {"f", f.name},
                      {"t", p.t},                  {"x", point_json(p.x)}, {"n", p.n},
                      {"sim", sim_json(cfg)}};

    const auto samples = coupled_semigroup_samples(p.dom, measures_of(rungs), f, p.t, p.x, p.n, cfg);
    const auto& N = samples[0];
    const auto& R = samples[1];
    const auto& D = samples[2];

    std::size_t violations = 0;
    for (std::size_t i = 0; i < p.n; ++i)
        if (!(D[i] <= R[i] && R[i] <= N[i])) ++violations;
    rep.add(count_check("pathwise-order-violations", rep.config, static_cast<double>(violations),
                        "exact per-path D <= R <= N on shared noise"));

    if (p.beta == 0.0) {
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < p.n; ++i)
            if (R[i] != N[i]) ++mismatches;
        rep.add(count_check("zero-beta-robin-equals-neumann", rep.config,
                            static_cast<double>(mismatches)));
    }

    // means vs FD oracle, with h/4 self-calibrated allowance
    const std::size_t na = allowance_paths(p.n, p.n_allow);
    const auto fine = coupled_estimates(p.dom, rungs, f, p.t, p.x, na, refined(cfg));
    for (std::size_t k = 0; k < rungs.size(); ++k) {
        const Estimate est = summarize(samples[k], cfg, EstimatorKind::weight);
        const double oracle =
            semigroup_oracle_value(p.dom, rungs[k].measure, f.eval, p.t, p.x, p.oracle_m, p.oracle_dt);
        const double allowance =
            calibrated_allowance(est.mean, est.std_error, fine[k].mean, fine[k].std_error);
        json inputs = rep.config;
        inputs["rung"] = rungs[k].label;
        inputs["stderr"] = est.std_error;
        inputs["allowance"] = allowance;
        rep.add(abs_check("mean-vs-oracle-" + rungs[k].label, inputs, est.mean, oracle,
                          3.0 * est.std_error + allowance));
    }
    return rep;
}

// --------------------------------------------------------------- monotone

SuiteReport check_monotone(const MonotoneParams& p) {
    SuiteReport rep;
    rep.suite = "monotone";
    const TestFunction f = make_test_function(p.f_name, p.dom);
    SimConfig cfg = p.cfg;
    cfg.T = p.t;

    std::vector<double> betas = p.betas;
    std::sort(betas.begin(), betas.end());
    std::vector<Rung> rungs;
    for (double b : betas) rungs.push_back({"beta=" + std::to_string(b),
                                            RobinMeasure::uniform_robin(p.dom, b)});
    if (p.dirichlet_top) rungs.push_back({"dirichlet", RobinMeasure::all_dirichlet(p.dom)});

    json ladder = json::array();
    for (const auto& r : rungs) ladder.push_back(r.label);
    rep.config = json{{"domain", describe(p.dom)}, {"ladder", ladder},      {"f", f.name},
                      {"t", p.t},                  {"x", point_json(p.x)},  {"n", p.n},
                      {"sim", sim_json(cfg)}};

    const auto samples = coupled_semigroup_samples(p.dom, measures_of(rungs), f, p.t, p.x, p.n, cfg);

    std::size_t violations = 0;
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t k = 1; k < rungs.size(); ++k)
            if (samples[k][i] > samples[k - 1][i]) {
                ++violations;
                break;
            }
    rep.add(count_check("pathwise-monotone-violations", rep.config, static_cast<double>(violations),
                        "weights nonincreasing along the measure ladder, per path"));

    const std::size_t na = allowance_paths(p.n, p.n_allow);
    const auto fine = coupled_estimates(p.dom, rungs, f, p.t, p.x, na, refined(cfg));
    double prev_mean = std::numeric_limits<double>::infinity();
    std::size_t mean_violations = 0;
    for (std::size_t k = 0; k < rungs.size(); ++k) {
        const Estimate est = summarize(samples[k], cfg, EstimatorKind::weight);
        if (est.mean > prev_mean) ++mean_violations;
        prev_mean = est.mean;
        const double oracle =
            semigroup_oracle_value(p.dom, rungs[k].measure, f.eval, p.t, p.x, p.oracle_m, p.oracle_dt);
        const double allowance =
            calibrated_allowance(est.mean, est.std_error, fine[k].mean, fine[k].std_error);
        json inputs = rep.config;
        inputs["rung"] = rungs[k].label;
        inputs["stderr"] = est.std_error;
        inputs["allowance"] = allowance;
        rep.add(abs_check("mean-vs-oracle-" + rungs[k].label, inputs, est.mean, oracle,
                          3.0 * est.std_error + allowance));
    }
    rep.add(count_check("mean-monotone-violations", rep.config,
                        static_cast<double>(mean_violations)));
    return rep;
}

// ------------------------------------------------------------ equivalence

EquivalenceParams EquivalenceParams::defaults() {
    EquivalenceParams p;
    p.problems.push_back({Interval{0.0, 1.0}, 1.0, "one", 0.25, {0.5, 0.0}, 100000});
    p.problems.push_back({Disk{{0.0, 0.0}, 1.0}, 1.0, "radial_bump", 0.1, {0.0, 0.0}, 100000});
    return p;
}

SuiteReport check_estimator_equivalence(const EquivalenceParams& p) {
    SuiteReport rep;
    rep.suite = "equivalence";
    rep.config = json{{"sim", sim_json(p.cfg)}};
    for (const auto& prob : p.problems) {
        const TestFunction f = make_test_function(prob.f_name, prob.dom);
        SimConfig cfg = p.cfg;
        cfg.T = prob.t;
        const RobinMeasure mu = RobinMeasure::uniform_robin(prob.dom, prob.beta);
        auto [w, k] = weight_killed_samples(prob.dom, mu, f, prob.t, prob.x, prob.n, cfg);
        const Estimate ew = summarize(w, cfg, EstimatorKind::weight);
        const Estimate ek = summarize(k, cfg, EstimatorKind::killed);
        const double combined = std::hypot(ew.std_error, ek.std_error);
        json inputs{{"domain", describe(prob.dom)}, {"beta", prob.beta}, {"f", f.name},
                    {"t", prob.t},                  {"x", point_json(prob.x)}, {"n", prob.n},
                    {"weight_mean", ew.mean},       {"killed_mean", ek.mean},
                    {"weight_stderr", ew.std_error}, {"killed_stderr", ek.std_error},
                    {"sim", sim_json(cfg)}};
        rep.add(abs_check("weight-vs-killed-" + describe(prob.dom), inputs, ew.mean, ek.mean,
                          4.0 * combined));
    }
    return rep;
}

// ----------------------------------------------------- resolvent identity

namespace {

struct IdentityRun {
    double r_neumann, r_robin, u_term;
    double se_neumann, se_robin, se_u;
    double truncation;
    double residual() const { return r_robin - r_neumann + u_term; }
    double combined_se() const {
        return std::sqrt(se_neumann * se_neumann + se_robin * se_robin + se_u * se_u);
    }
};

IdentityRun run_identity(const Domain& dom, double beta, double alpha, const TestFunction& f,
                         const TestFunction& g, Point x, std::size_t n, const SimConfig& cfg) {
    const RobinMeasure mu = RobinMeasure::uniform_robin(dom, beta);
    std::vector<Rung> rungs{{"neumann", RobinMeasure::neumann(dom)}, {"robin", mu}};
    auto samples = coupled_resolvent_samples(dom, measures_of(rungs), f, alpha, x, n, cfg);
    const Estimate en = summarize(samples[0], cfg, EstimatorKind::weight);
    const Estimate er = summarize(samples[1], cfg, EstimatorKind::weight);
    const Estimate eu = potential_U(dom, mu, g, alpha, x, n, cfg);
    return {en.mean, er.mean, eu.mean, en.std_error, er.std_error, eu.std_error,
            eu.truncation_bound};
}

}  // namespace

SuiteReport check_resolvent_identity(const ResolventIdentityParams& p) {
    SuiteReport rep;
    rep.suite = "resolvent-identity";
    const auto* iv = std::get_if<Interval>(&p.dom);
    if (!iv) throw std::invalid_argument("resolvent-identity suite runs on the interval domain");
    const TestFunction f = make_test_function(p.f_name, p.dom);

    // g: deterministic reference for R_alpha^A f (drives the U term)
    auto f1 = [&](double xx) { return f.eval({xx, 0.0}); };
    auto sol = std::make_shared<FdSolution>(fd_elliptic_1d(
        p.alpha, FdBc::robin(p.beta), FdBc::robin(p.beta), f1, p.oracle_m, iv->a, iv->b));
    const TestFunction g{"oracle_resolvent", [sol](Point q) { return sol->value_at(q); },
                         sol->max_abs()};

    rep.config = json{{"domain", describe(p.dom)}, {"beta", p.beta},   {"alpha", p.alpha},
                      {"f", f.name},               {"x", point_json(p.x)}, {"n", p.n},
                      {"sim", sim_json(p.cfg)},    {"oracle_m", p.oracle_m}};

    const IdentityRun main = run_identity(p.dom, p.beta, p.alpha, f, g, p.x, p.n, p.cfg);
    const std::size_t na = allowance_paths(p.n, p.n_allow);
    const IdentityRun fine = run_identity(p.dom, p.beta, p.alpha, f, g, p.x, na, refined(p.cfg));
    const double allowance = calibrated_allowance(main.residual(), main.combined_se(),
                                                  fine.residual(), fine.combined_se());

    json inputs = rep.config;
    inputs["R_neumann"] = main.r_neumann;
    inputs["R_robin"] = main.r_robin;
    inputs["U_term"] = main.u_term;
    inputs["combined_stderr"] = main.combined_se();
    inputs["allowance"] = allowance;
    inputs["truncation_bound"] = main.truncation;
    rep.add(abs_check("identity-residual", inputs, main.residual(), 0.0,
                      3.0 * main.combined_se() + allowance + main.truncation,
                      "R_alpha^A f - R_alpha f + U_A^alpha(R_alpha^A f) = 0"));

    if (p.scaling) {
        SimConfig cfg_s = p.cfg;
        cfg_s.h = p.h_scale;
        cfg_s.T = p.scale_T;
        const IdentityRun fine_s =
            run_identity(p.dom, p.beta, p.alpha, f, g, p.x, na, refined(cfg_s));
        const IdentityRun coarse_ref = run_identity(p.dom, p.beta, p.alpha, f, g, p.x, na, cfg_s);
        const double allowance_s = calibrated_allowance(coarse_ref.residual(), coarse_ref.combined_se(),
                                                        fine_s.residual(), fine_s.combined_se());

        std::vector<std::size_t> ns{p.n_small, p.n_big};
        std::vector<IdentityRun> runs;
        for (std::size_t nn : ns) runs.push_back(run_identity(p.dom, p.beta, p.alpha, f, g, p.x, nn, cfg_s));
        for (std::size_t i = 0; i < ns.size(); ++i) {
            json in{{"n", ns[i]},
                    {"h", cfg_s.h},
                    {"combined_stderr", runs[i].combined_se()},
                    {"allowance", allowance_s}};
            rep.add(abs_check("identity-residual-n" + std::to_string(ns[i]), in, runs[i].residual(),
                              0.0, 3.0 * runs[i].combined_se() + allowance_s + runs[i].truncation));
        }
        const double ratio = runs[0].combined_se() / runs[1].combined_se();
        const double expect = std::sqrt(static_cast<double>(p.n_big) / p.n_small);
        json in{{"n_small", p.n_small}, {"n_big", p.n_big}, {"h", cfg_s.h}};
        rep.add(abs_check("stderr-scaling-1-over-sqrt-n", in, ratio, expect, 0.2 * expect,
                          "combined stderr contracts like 1/sqrt(n)"));
    }
    return rep;
}

// ---------------------------------------------------------- mu-convergence

SuiteReport check_mu_convergence(const MuConvergenceParams& p) {
    SuiteReport rep;
    rep.suite = "mu-convergence";
    const auto* iv = std::get_if<Interval>(&p.dom);
    if (!iv) throw std::invalid_argument("mu-convergence suite runs on the interval domain");
    const TestFunction f = make_test_function(p.f_name, p.dom);

    // one fully ordered chain: Neumann, beta/k (k desc), then k*beta (k asc)
    std::vector<Rung> rungs{{"neumann", RobinMeasure::neumann(p.dom)}};
    std::vector<int> ks_dec = p.ks_decreasing;
    std::sort(ks_dec.begin(), ks_dec.end(), std::greater<int>());
    for (int k : ks_dec)
        rungs.push_back({"beta.div." + std::to_string(k),
                         RobinMeasure::uniform_robin(p.dom, p.beta / k)});
    std::vector<int> ks_inc = p.ks_increasing;
    std::sort(ks_inc.begin(), ks_inc.end());
    for (int k : ks_inc) {
        if (k == 1) continue;  // beta itself is already the tail of the decreasing family
        rungs.push_back({"beta.times." + std::to_string(k),
                         RobinMeasure::uniform_robin(p.dom, p.beta * k)});
    }

    json ladder = json::array();
    for (const auto& r : rungs) ladder.push_back(r.label);
    rep.config = json{{"domain", describe(p.dom)}, {"beta", p.beta},   {"alpha", p.alpha},
                      {"ladder", ladder},          {"f", f.name},      {"x", point_json(p.x)},
                      {"n", p.n},                  {"sim", sim_json(p.cfg)}};

    const auto samples =
        coupled_resolvent_samples(p.dom, measures_of(rungs), f, p.alpha, p.x, p.n, p.cfg);

    std::size_t violations = 0;
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t k = 1; k < rungs.size(); ++k)
            if (samples[k][i] > samples[k - 1][i]) {
                ++violations;
                break;
            }
    rep.add(count_check("pathwise-chain-violations", rep.config, static_cast<double>(violations),
                        "resolvent contributions nonincreasing as the measure grows"));

    // FD oracle ladder
    auto f1 = [&](double xx) { return f.eval({xx, 0.0}); };
    auto fd_value = [&](double beta_val) {
        return fd_elliptic_1d(p.alpha, FdBc::robin(beta_val), FdBc::robin(beta_val), f1,
                              p.oracle_m, iv->a, iv->b)
            .value_at(p.x);
    };
    const double u_neumann_fd = fd_value(0.0);

    // gap-to-Neumann agreement for the decreasing family (coupled gaps)
    const std::size_t na = allowance_paths(p.n, p.n_allow);
    const auto fine =
        coupled_resolvent_samples(p.dom, measures_of(rungs), f, p.alpha, p.x, na, refined(p.cfg));
    auto gap_summary = [&](const auto& set, std::size_t idx, std::size_t nn) {
        std::vector<double> diff(nn);
        for (std::size_t i = 0; i < nn; ++i) diff[i] = set[0][i] - set[idx][i];
        return summarize(diff, p.cfg, EstimatorKind::weight);
    };

    double gap_first = 0.0, gap_last = 0.0, or_first = 0.0, or_last = 0.0;
    for (std::size_t j = 0; j < ks_dec.size(); ++j) {
        const std::size_t idx = 1 + j;
        const int k = ks_dec[j];
        const Estimate gap = gap_summary(samples, idx, p.n);
        const Estimate gap_fine = gap_summary(fine, idx, na);
        const double oracle_gap = u_neumann_fd - fd_value(p.beta / k);
        const double allowance =
            calibrated_allowance(gap.mean, gap.std_error, gap_fine.mean, gap_fine.std_error);
        json inputs{{"k", k}, {"stderr", gap.std_error}, {"allowance", allowance}};
        rep.add(abs_check("neumann-gap-beta-div-" + std::to_string(k), inputs, gap.mean, oracle_gap,
                          3.0 * gap.std_error + allowance));
        if (k == ks_dec.front()) {  // largest k
            gap_last = gap.mean;
            or_last = oracle_gap;
        }
        if (k == ks_dec.back()) {  // k = 1
            gap_first = gap.mean;
            or_first = oracle_gap;
        }
    }
    {
        const double obs_ratio = gap_last / gap_first;
        const double ref_ratio = or_last / or_first;
        json inputs{{"k_small", ks_dec.back()}, {"k_large", ks_dec.front()},
                    {"gap_small_k", gap_first}, {"gap_large_k", gap_last}};
        rep.add(abs_check("gap-ratio-vs-oracle", inputs, obs_ratio, ref_ratio, 0.2 * ref_ratio,
                          "k=max vs k=1 Neumann-gap ratio within 20% of the FD ladder"));
    }

    // increasing family top vs the Dirichlet oracle
    {
        const std::size_t top = rungs.size() - 1;
        const Estimate est = summarize(samples[top], p.cfg, EstimatorKind::weight);
        const Estimate est_fine = summarize(fine[top], p.cfg, EstimatorKind::weight);
        const double u_dirichlet_fd =
            fd_elliptic_1d(p.alpha, FdBc::dirichlet(), FdBc::dirichlet(), f1, p.oracle_m, iv->a,
                           iv->b)
                .value_at(p.x);
        const double allowance =
            calibrated_allowance(est.mean, est.std_error, est_fine.mean, est_fine.std_error);
        json inputs{{"rung", rungs[top].label}, {"stderr", est.std_error}, {"allowance", allowance}};
        rep.add(abs_check("increasing-top-vs-dirichlet-oracle", inputs, est.mean, u_dirichlet_fd,
                          3.0 * est.std_error + allowance));
    }
    return rep;
}

// -------------------------------------------------------------------- revuz

namespace {

struct Extrapolation {
    double intercept;
    double se;
};

// least-squares line through (t_i, r_i), intercept at t = 0 with the
// propagated standard error of the fitted value
Extrapolation extrapolate_to_zero(const std::vector<double>& ts, const std::vector<double>& rs,
                                  const std::vector<double>& ses) {
    const std::size_t m = ts.size();
    double tbar = 0.0;
    for (double t : ts) tbar += t;
    tbar /= static_cast<double>(m);
    double S = 0.0;
    for (double t : ts) S += (t - tbar) * (t - tbar);
    double intercept = 0.0, var = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = 1.0 / static_cast<double>(m) - tbar * (ts[i] - tbar) / S;
        intercept += w * rs[i];
        var += w * w * ses[i] * ses[i];
    }
    return {intercept, std::sqrt(var)};
}

Extrapolation revuz_extrapolated(const Domain& dom, double beta, const TestFunction& f,
                                 const std::vector<double>& ts, std::size_t n, SimConfig cfg) {
    const RobinMeasure mu = RobinMeasure::uniform_robin(dom, beta);
    std::vector<double> rates, ses;
    for (double t : ts) {
        cfg.T = t;
        const Estimate est = revuz_rate(dom, mu, f, t, n, cfg);
        rates.push_back(est.mean);
        ses.push_back(est.std_error);
    }
    return extrapolate_to_zero(ts, rates, ses);
}

}  // namespace

SuiteReport check_revuz(const RevuzParams& p) {
    SuiteReport rep;
    rep.suite = "revuz";
    const Domain interval = Interval{0.0, 1.0};
    const Domain rect = Rectangle{0.0, 1.0, 0.0, 1.0};
    const TestFunction f_int = make_test_function(p.f_name, interval);
    const TestFunction f_rect = make_test_function(p.f_name, rect);

    json tl = json::array();
    for (double t : p.t_ladder) tl.push_back(t);
    rep.config = json{{"beta", p.beta}, {"f", p.f_name}, {"t_ladder", tl},
                      {"n", p.n},       {"sim", sim_json(p.cfg)}};

    // zero measure -> rate identically zero
    {
        SimConfig cfg = p.cfg;
        cfg.T = p.t_ladder.front();
        const Estimate zero = revuz_rate(interval, RobinMeasure::neumann(interval), f_int,
                                         p.t_ladder.front(), std::min<std::size_t>(p.n, 1000), cfg);
        json inputs{{"domain", describe(interval)}, {"beta", 0.0}};
        rep.add(count_check("zero-beta-rate", inputs, std::abs(zero.mean) + zero.std_error,
                            "A vanishes without boundary measure"));
    }

    const Extrapolation e_int =
        revuz_extrapolated(interval, p.beta, f_int, p.t_ladder, p.n, p.cfg);
    const Extrapolation e_rect =
        revuz_extrapolated(rect, p.beta, f_rect, p.t_ladder, p.n, p.cfg);

    const double mu_int =
        mu_integral(RobinMeasure::uniform_robin(interval, p.beta), f_int.eval);
    const double mu_rect = mu_integral(RobinMeasure::uniform_robin(rect, p.beta), f_rect.eval);
    const double c_int = e_int.intercept / mu_int;
    const double c_rect = e_rect.intercept / mu_rect;
    const double c_mean = 0.5 * (c_int + c_rect);
    rep.config["fitted_c_interval"] = c_int;
    rep.config["fitted_c_rectangle"] = c_rect;
    rep.config["fitted_c"] = c_mean;

    {
        json inputs{{"c_interval", c_int},
                    {"c_rectangle", c_rect},
                    {"se_interval", e_int.se / mu_int},
                    {"se_rectangle", e_rect.se / mu_rect}};
        rep.add(abs_check("scheme-constant-consistency", inputs, c_int, c_rect,
                          p.consistency_rel * std::max(std::abs(c_int), std::abs(c_rect)),
                          "one local-time normalization across 1d and 2d domains"));
    }

    // doubling beta doubles the extrapolated rate (independent seed)
    {
        SimConfig cfg2 = p.cfg;
        cfg2.seed = p.cfg.seed + 1;
        const Extrapolation e_double =
            revuz_extrapolated(interval, 2.0 * p.beta, f_int, p.t_ladder, p.n, cfg2);
        const double se = std::sqrt(e_double.se * e_double.se + 4.0 * e_int.se * e_int.se);
        json inputs{{"rate_beta", e_int.intercept}, {"rate_2beta", e_double.intercept}};
        rep.add(abs_check("beta-doubling-linearity", inputs, e_double.intercept,
                          2.0 * e_int.intercept, 3.0 * se));
    }
    return rep;
}

// ------------------------------------------------------------ oracle-match

OracleMatchParams OracleMatchParams::defaults() {
    OracleMatchParams p;
    p.problems.push_back({Interval{0.0, 1.0}, 1.0, "one", 0.25,
                          {{0.1, 0.0}, {0.5, 0.0}}, 200000, 401, 2.5e-4});
    p.problems.push_back({Rectangle{0.0, 1.0, 0.0, 1.0}, 1.0, "one", 0.1,
                          {{0.5, 0.5}}, 200000, 201, 2.5e-4});
    return p;
}

SuiteReport check_oracle_match(const OracleMatchParams& p) {
    SuiteReport rep;
    rep.suite = "oracle-match";
    rep.config = json{{"sim", sim_json(p.cfg)}, {"rel_target", p.rel_target}};
    for (const auto& prob : p.problems) {
        const TestFunction f = make_test_function(prob.f_name, prob.dom);
        const RobinMeasure mu = RobinMeasure::uniform_robin(prob.dom, prob.beta);
        SimConfig cfg = p.cfg;
        cfg.T = prob.t;
        for (Point x : prob.xs) {
            // step-size pair on shared noise: the coarse leg is the
            // estimate, coarse-minus-fine calibrates the allowance
            const auto [coarse, fine_leg] =
                semigroup_weight_pair_samples(prob.dom, mu, f, prob.t, x, prob.n, cfg);
            const Estimate est = summarize(coarse, cfg, EstimatorKind::weight);
            std::vector<double> diff(prob.n);
            for (std::size_t i = 0; i < prob.n; ++i) diff[i] = coarse[i] - fine_leg[i];
            const Estimate dstat = summarize(diff, cfg, EstimatorKind::weight);
            const double allowance =
                3.0 * (std::abs(dstat.mean) + 2.0 * dstat.std_error);
            const double oracle =
                semigroup_oracle_value(prob.dom, mu, f.eval, prob.t, x, prob.oracle_m, prob.oracle_dt);
            const double tol = 3.0 * est.std_error + allowance;
            json inputs{{"domain", describe(prob.dom)}, {"beta", prob.beta},
                        {"t", prob.t},                  {"x", point_json(x)},
                        {"n", prob.n},                  {"stderr", est.std_error},
                        {"allowance", allowance},       {"sim", sim_json(cfg)}};
            std::string tag = describe(prob.dom) + "-x" + std::to_string(x.x);
            rep.add(abs_check("mc-vs-oracle-" + tag, inputs, est.mean, oracle, tol));
            rep.add(abs_check("tolerance-rel-budget-" + tag, inputs, tol / std::abs(oracle), 0.0,
                              p.rel_target, "total tolerance as a fraction of the oracle value"));
        }
    }
    return rep;
}

// ---------------------------------------------------------- dirichlet-bias

SuiteReport check_dirichlet_bias(const DirichletBiasParams& p) {
    SuiteReport rep;
    rep.suite = "dirichlet-bias";
    const auto* iv = std::get_if<Interval>(&p.dom);
    if (!iv) throw std::invalid_argument("dirichlet-bias suite runs on the interval domain");
    const TestFunction f = make_test_function("one", p.dom);
    const RobinMeasure mu = RobinMeasure::all_dirichlet(p.dom);
    const double series = dirichlet_heat_series_interval(p.t, p.x.x, iv->a, iv->b);

    json hs = json::array();
    for (double h : p.hs) hs.push_back(h);
    rep.config = json{{"domain", describe(p.dom)}, {"t", p.t}, {"x", point_json(p.x)},
                      {"n", p.n},                  {"h_bridge", p.h_bridge}, {"hs", hs},
                      {"seed", p.seed},            {"series", series}};

    SimConfig cfg;
    cfg.scheme = Scheme::projection;
    cfg.T = p.t;
    cfg.seed = p.seed;

    // bridge on: matches the series within 3 stderr + allowance
    {
        cfg.bridge_correction = true;
        cfg.h = p.h_bridge;
        const Estimate est = semigroup_weight(p.dom, mu, f, p.t, p.x, p.n, cfg);
        const std::size_t na = allowance_paths(p.n, p.n_allow);
        const Estimate est_fine = semigroup_weight(p.dom, mu, f, p.t, p.x, na, refined(cfg));
        const double allowance =
            calibrated_allowance(est.mean, est.std_error, est_fine.mean, est_fine.std_error);
        json inputs{{"h", cfg.h}, {"stderr", est.std_error}, {"allowance", allowance}};
        rep.add(abs_check("bridge-on-vs-series", inputs, est.mean, series,
                          3.0 * est.std_error + allowance));
    }

    // bridge off: signed bias positive and shrinking with h
    cfg.bridge_correction = false;
    std::vector<double> biases, ses;
    for (double h : p.hs) {
        cfg.h = h;
        const Estimate est = semigroup_weight(p.dom, mu, f, p.t, p.x, p.n, cfg);
        biases.push_back(est.mean - series);
        ses.push_back(est.std_error);
    }
    {
        json inputs{{"h", p.hs.front()}, {"bias", biases.front()}, {"stderr", ses.front()}};
        CheckRecord rec;
        rec.name = "bridge-off-bias-positive";
        rec.inputs = inputs;
        rec.observed = biases.front();
        rec.reference = 0.0;
        rec.tolerance = 3.0 * ses.front();
        rec.pass = biases.front() > 3.0 * ses.front();
        rec.note = "under-detected contacts inflate survival at the coarsest h";
        rep.add(std::move(rec));
    }
    {
        std::size_t order_violations = 0;
        for (std::size_t i = 1; i < biases.size(); ++i)
            if (biases[i] >= biases[i - 1]) ++order_violations;
        json inputs{{"hs", hs}, {"biases", json(biases)}};
        rep.add(count_check("bridge-off-bias-shrinks", inputs,
                            static_cast<double>(order_violations),
                            "point-estimate bias decreases down the h ladder"));
    }
    {
        json inputs{{"h", p.hs.back()}, {"bias", biases.back()}, {"stderr", ses.back()}};
        CheckRecord rec;
        rec.name = "bridge-off-bias-nonnegative-at-finest";
        rec.inputs = inputs;
        rec.observed = biases.back();
        rec.reference = 0.0;
        rec.tolerance = 2.0 * ses.back();
        rec.pass = biases.back() >= -2.0 * ses.back();
        rep.add(std::move(rec));
    }
    return rep;
}

// ---------------------------------------------------------------- registry

std::vector<std::string> suite_names() {
    return {"sandwich",       "monotone",      "equivalence", "resolvent-identity",
            "mu-convergence", "oracle-match",  "dirichlet-bias", "revuz"};
}

bool is_suite_name(const std::string& name) {
    const auto names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "sandwich") {
        SandwichParams p;
        p.cfg.seed = seed;
        return check_sandwich(p);
    }
    if (name == "monotone") {
        MonotoneParams p;
        p.cfg.seed = seed;
        return check_monotone(p);
    }
    if (name == "equivalence") {
        EquivalenceParams p = EquivalenceParams::defaults();
        p.cfg.seed = seed;
        return check_estimator_equivalence(p);
    }
    if (name == "resolvent-identity") {
        ResolventIdentityParams p;
        p.cfg.seed = seed;
        return check_resolvent_identity(p);
    }
    if (name == "mu-convergence") {
        MuConvergenceParams p;
        p.cfg.seed = seed;
        return check_mu_convergence(p);
    }
    if (name == "oracle-match") {
        OracleMatchParams p = OracleMatchParams::defaults();
        p.cfg.seed = seed;
        return check_oracle_match(p);
    }
    if (name == "dirichlet-bias") {
        DirichletBiasParams p;
        p.seed = seed;
        return check_dirichlet_bias(p);
    }
    if (name == "revuz") {
        RevuzParams p;
        p.cfg.seed = seed;
        return check_revuz(p);
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace robinmc
