#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "robinmc/sampler.hpp"

namespace robinmc {

enum class EstimatorKind { weight, killed, dirichlet };

std::string to_string(EstimatorKind k);

struct TestFunction {
    std::string name = "f";
    std::function<double(Point)> eval;
    double sup_norm_bound = 1.0;
};

// Monte Carlo estimate with plain sample statistics. Reproducible given
// (cfg.seed, n_paths): path i draws from streams keyed by (seed, i), and
// all reductions are pairwise, so worker count never changes the bits.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    SimConfig cfg{};
    EstimatorKind kind = EstimatorKind::weight;
    double truncation_bound = 0.0;  // potential_U horizon-truncation bound
};

// Deterministic pairwise reduction (order-independent of threading).
double pairwise_sum(std::span<const double> v);

Estimate summarize(std::span<const double> samples, const SimConfig& cfg, EstimatorKind kind);

// --- per-path sample vectors (exposed for coupled/pathwise checks) ---

std::vector<double> semigroup_weight_samples(const Domain& dom, const RobinMeasure& mu,
                                             const TestFunction& f, double t, Point x,
                                             std::size_t n, const SimConfig& cfg);
std::vector<double> semigroup_killed_samples(const Domain& dom, const RobinMeasure& mu,
                                             const TestFunction& f, double t, Point x,
                                             std::size_t n, const SimConfig& cfg);
std::vector<double> resolvent_samples(const Domain& dom, const RobinMeasure& mu,
                                      const TestFunction& f, double alpha, Point x, std::size_t n,
                                      const SimConfig& cfg);

// --- the estimators ---

// P_t f(x) ~ mean of f(X_t) exp(-A_t); absorbed paths contribute 0.
Estimate semigroup_weight(const Domain& dom, const RobinMeasure& mu, const TestFunction& f,
                          double t, Point x, std::size_t n, const SimConfig& cfg);

// subprocess form: mean of f(X_t) 1{A_t < Z}, Z ~ Exp(1) per path.
Estimate semigroup_killed(const Domain& dom, const RobinMeasure& mu, const TestFunction& f,
                          double t, Point x, std::size_t n, const SimConfig& cfg);

// R_alpha f(x) ~ f(X_tau) exp(-A_tau)/alpha with tau ~ Exp(alpha) per
// path (horizon-free in time; the only bias left is the step size).
Estimate resolvent(const Domain& dom, const RobinMeasure& mu, const TestFunction& f, double alpha,
                   Point x, std::size_t n, const SimConfig& cfg);

// U^alpha g(x) ~ sum over steps of exp(-alpha t_k) g(X_k) dA_k up to
// horizon cfg.T; the reported truncation_bound covers the discarded tail.
Estimate potential_U(const Domain& dom, const RobinMeasure& mu, const TestFunction& g, double alpha,
                     Point x, std::size_t n, const SimConfig& cfg);

// (1/t_small) E_uniform[ sum f(X_k) dA_k over [0, t_small] ]; start
// points drawn uniformly from the domain (Lebesgue).
Estimate revuz_rate(const Domain& dom, const RobinMeasure& mu, const TestFunction& f,
                    double t_small, std::size_t n, const SimConfig& cfg);

// --- coupled ladders (one reflecting trajectory drives every rung) ---
//
// Returns contributions[rung][path]. All rungs share the path's driving
// noise; a rung with a Dirichlet component treats the first (detected)
// contact with that component as absorption and contributes 0 from then
// on. For an all-Dirichlet rung the contribution is exactly
// f(X_t) 1{no detected contact}, the Dirichlet semigroup term.
std::vector<std::vector<double>> coupled_semigroup_samples(const Domain& dom,
                                                           const std::vector<RobinMeasure>& rungs,
                                                           const TestFunction& f, double t, Point x,
                                                           std::size_t n, const SimConfig& cfg);

// Same coupling for the resolvent; tau ~ Exp(alpha) is shared by rungs.
std::vector<std::vector<double>> coupled_resolvent_samples(const Domain& dom,
                                                           const std::vector<RobinMeasure>& rungs,
                                                           const TestFunction& f, double alpha,
                                                           Point x, std::size_t n,
                                                           const SimConfig& cfg);

// Weight/killed pair on shared paths (for the equivalence check):
// first = weight contributions, second = killed contributions.
std::pair<std::vector<double>, std::vector<double>> weight_killed_samples(
    const Domain& dom, const RobinMeasure& mu, const TestFunction& f, double t, Point x,
    std::size_t n, const SimConfig& cfg);

// Step-size pair on a shared Brownian path: the cfg.h trajectory consumes
// the sums of four h/4 increments of the same stream, so the difference
// of the two legs isolates the discretization bias with little noise
// (used to calibrate discretization allowances). Projection scheme only.
// first = contributions at cfg.h, second = contributions at cfg.h/4.
std::pair<std::vector<double>, std::vector<double>> semigroup_weight_pair_samples(
    const Domain& dom, const RobinMeasure& mu, const TestFunction& f, double t, Point x,
    std::size_t n, const SimConfig& cfg);

}  // namespace robinmc
