#include "robinmc/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "robinmc/parallel.hpp"

namespace robinmc {

std::string to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::weight: return "weight";
        case EstimatorKind::killed: return "killed";
        case EstimatorKind::dirichlet: return "dirichlet";
    }
    return "?";
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 64) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Estimate summarize(std::span<const double> samples, const SimConfig& cfg, EstimatorKind kind) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("estimator needs n >= 2 paths");
    Estimate e;
    e.n_paths = n;
    e.cfg = cfg;
    e.kind = kind;
    e.mean = pairwise_sum(samples) / static_cast<double>(n);
    std::vector<double> dev2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = samples[i] - e.mean;
        dev2[i] = d * d;
    }
    const double var = pairwise_sum(dev2) / static_cast<double>(n - 1);
    e.std_error = std::sqrt(var / static_cast<double>(n));
    return e;
}

namespace {

void check_start(const Domain& dom, Point x) {
    if (signed_distance(dom, x) < -1e-12 * diameter(dom))
        throw std::invalid_argument("evaluation point outside the closed domain");
}

void check_fn(const TestFunction& f) {
    if (!f.eval) throw std::invalid_argument("test function has no evaluator");
}

Point uniform_interior_point(const Domain& dom, RngStream& rng) {
    struct V {
        RngStream& r;
        Point operator()(const Interval& d) { return {d.a + (d.b - d.a) * r.uniform(), 0.0}; }
        Point operator()(const Rectangle& d) {
            return {d.x0 + (d.x1 - d.x0) * r.uniform(), d.y0 + (d.y1 - d.y0) * r.uniform()};
        }
        Point operator()(const Disk& d) {
            const double rad = d.radius * std::sqrt(r.uniform());
            const double ang = 2.0 * M_PI * r.uniform();
            return {d.center.x + rad * std::cos(ang), d.center.y + rad * std::sin(ang)};
        }
    };
    return std::visit(V{rng}, dom);
}

}  // namespace

std::vector<double> semigroup_weight_samples(const Domain& dom, const RobinMeasure& mu,
                                             const TestFunction& f, double t, Point x,
                                             std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    if (t > cfg.T + 1e-12 * (1.0 + cfg.T))
        throw std::invalid_argument("semigroup time exceeds cfg.T horizon");
    std::vector<double> out(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                PathState s;
                s.x = x;
                advance(d, mu, cfg, t, s, rng.noise, rng.aux, NoOpStep{});
                out[i] = s.alive ? f.eval(s.x) * std::exp(-s.A) : 0.0;
            });
        },
        dom);
    return out;
}

std::vector<double> semigroup_killed_samples(const Domain& dom, const RobinMeasure& mu,
                                             const TestFunction& f, double t, Point x,
                                             std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    if (t > cfg.T + 1e-12 * (1.0 + cfg.T))
        throw std::invalid_argument("semigroup time exceeds cfg.T horizon");
    std::vector<double> out(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                const double Z = rng.aux.exponential(1.0);
                PathState s;
                s.x = x;
                advance(d, mu, cfg, t, s, rng.noise, rng.aux, NoOpStep{});
                out[i] = (s.alive && s.A < Z) ? f.eval(s.x) : 0.0;
            });
        },
        dom);
    return out;
}

std::vector<double> resolvent_samples(const Domain& dom, const RobinMeasure& mu,
                                      const TestFunction& f, double alpha, Point x, std::size_t n,
                                      const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    if (!(alpha > 0.0)) throw std::invalid_argument("resolvent needs alpha > 0");
    std::vector<double> out(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                const double tau = rng.aux.exponential(alpha);
                PathState s;
                s.x = x;
                advance(d, mu, cfg, tau, s, rng.noise, rng.aux, NoOpStep{});
                out[i] = s.alive ? f.eval(s.x) * std::exp(-s.A) / alpha : 0.0;
            });
        },
        dom);
    return out;
}

Estimate semigroup_weight(const Domain& dom, const RobinMeasure& mu, const TestFunction& f,
                          double t, Point x, std::size_t n, const SimConfig& cfg) {
    return summarize(semigroup_weight_samples(dom, mu, f, t, x, n, cfg), cfg,
                     mu.has_dirichlet() && mu.beta_sup() == 0.0 ? EstimatorKind::dirichlet
                                                                : EstimatorKind::weight);
}

Estimate semigroup_killed(const Domain& dom, const RobinMeasure& mu, const TestFunction& f,
                          double t, Point x, std::size_t n, const SimConfig& cfg) {
    return summarize(semigroup_killed_samples(dom, mu, f, t, x, n, cfg), cfg, EstimatorKind::killed);
}

Estimate resolvent(const Domain& dom, const RobinMeasure& mu, const TestFunction& f, double alpha,
                   Point x, std::size_t n, const SimConfig& cfg) {
    return summarize(resolvent_samples(dom, mu, f, alpha, x, n, cfg), cfg, EstimatorKind::weight);
}

Estimate potential_U(const Domain& dom, const RobinMeasure& mu, const TestFunction& g, double alpha,
                     Point x, std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(g);
    if (!(alpha > 0.0)) throw std::invalid_argument("potential_U needs alpha > 0");
    if (n < 2) throw std::invalid_argument("estimator needs n >= 2 paths");
    std::vector<double> out(n), a_final(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                PathState s;
                s.x = x;
                double acc = 0.0;
                advance(d, mu, cfg, cfg.T, s, rng.noise, rng.aux, [&](const StepRecord& rec) {
                    if (rec.dA != 0.0) acc += std::exp(-alpha * rec.t) * g.eval(rec.x) * rec.dA;
                });
                out[i] = acc;
                a_final[i] = s.A;
            });
        },
        dom);
    Estimate e = summarize(out, cfg, EstimatorKind::weight);
    // tail bound: sup|g| * (observed mean dA/dt) * exp(-alpha T)/alpha
    const double rate = pairwise_sum(a_final) / static_cast<double>(n) / std::max(cfg.T, 1e-300);
    e.truncation_bound = g.sup_norm_bound * rate * std::exp(-alpha * cfg.T) / alpha;
    return e;
}

Estimate revuz_rate(const Domain& dom, const RobinMeasure& mu, const TestFunction& f,
                    double t_small, std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_fn(f);
    if (!(t_small > 0.0)) throw std::invalid_argument("revuz_rate needs t_small > 0");
    if (t_small > cfg.T + 1e-12) throw std::invalid_argument("revuz_rate: t_small exceeds cfg.T");
    if (n < 2) throw std::invalid_argument("estimator needs n >= 2 paths");
    std::vector<double> out(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                PathState s;
                s.x = uniform_interior_point(dom, rng.aux);
                double acc = 0.0;
                advance(d, mu, cfg, t_small, s, rng.noise, rng.aux, [&](const StepRecord& rec) {
                    if (rec.dA != 0.0) acc += f.eval(rec.x) * rec.dA;
                });
                out[i] = acc / t_small;
            });
        },
        dom);
    return summarize(out, cfg, EstimatorKind::weight);
}

namespace {

// Shared-trajectory ladder bookkeeping: per-rung PCAF accumulation plus
// first-detected-contact absorption for rungs with Dirichlet components.
struct LadderPathTracker {
    const std::vector<RobinMeasure>* rungs;
    const Domain* dom;
    bool bridge = false;
    std::array<bool, kMaxComponents> any_dirichlet{};  // component -> Dirichlet in some rung

    std::vector<double> A;      // per rung
    std::vector<bool> dead;     // per rung

    LadderPathTracker(const Domain& d, const std::vector<RobinMeasure>& r, bool bridge_on)
        : rungs(&r), dom(&d), bridge(bridge_on), A(r.size(), 0.0), dead(r.size(), false) {
        for (const auto& m : r)
            for (int c = 0; c < m.n_components(); ++c)
                if (m.component(c).kind == BcKind::dirichlet) any_dirichlet[c] = true;
    }

    void on_step(const StepRecord& rec, RngStream& aux) {
        if (rec.dell > 0.0) {
            for (std::size_t k = 0; k < rungs->size(); ++k) {
                if (dead[k]) continue;
                const BetaValue bv = (*rungs)[k].beta_at({rec.x, rec.component, {}});
                if (bv.dirichlet)
                    dead[k] = true;
                else
                    A[k] += bv.value * rec.dell;
            }
        }
        if (bridge) {
            for (int c = 0; c < kMaxComponents; ++c) {
                if (!any_dirichlet[c]) continue;
                const double d0 = component_distance(*dom, rec.x_prev, c);
                const double d1 = component_distance(*dom, rec.x, c);
                const double u = aux.uniform();  // one shared draw per component
                if (u < bridge_exit_probability(d0, d1, rec.dt)) {
                    for (std::size_t k = 0; k < rungs->size(); ++k)
                        if ((*rungs)[k].component(c).kind == BcKind::dirichlet) dead[k] = true;
                }
            }
        }
    }
};

void check_rungs(const Domain& dom, const std::vector<RobinMeasure>& rungs) {
    if (rungs.empty()) throw std::invalid_argument("coupled sampler needs at least one rung");
    for (const auto& m : rungs)
        if (m.n_components() != n_components(dom))
            throw std::invalid_argument("coupled sampler: rung measure does not match domain");
}

}  // namespace

std::vector<std::vector<double>> coupled_semigroup_samples(const Domain& dom,
                                                           const std::vector<RobinMeasure>& rungs,
                                                           const TestFunction& f, double t, Point x,
                                                           std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    check_rungs(dom, rungs);
    if (t > cfg.T + 1e-12 * (1.0 + cfg.T))
        throw std::invalid_argument("semigroup time exceeds cfg.T horizon");
    const RobinMeasure neutral = RobinMeasure::neumann(dom);
    std::vector<std::vector<double>> out(rungs.size(), std::vector<double>(n));
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                LadderPathTracker trk(dom, rungs, cfg.bridge_correction);
                PathState s;
                s.x = x;
                advance(d, neutral, cfg, t, s, rng.noise, rng.aux,
                        [&](const StepRecord& rec) { trk.on_step(rec, rng.aux); });
                const double fx = f.eval(s.x);
                for (std::size_t k = 0; k < rungs.size(); ++k)
                    out[k][i] = trk.dead[k] ? 0.0 : fx * std::exp(-trk.A[k]);
            });
        },
        dom);
    return out;
}

std::vector<std::vector<double>> coupled_resolvent_samples(const Domain& dom,
                                                           const std::vector<RobinMeasure>& rungs,
                                                           const TestFunction& f, double alpha,
                                                           Point x, std::size_t n,
                                                           const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    check_rungs(dom, rungs);
    if (!(alpha > 0.0)) throw std::invalid_argument("resolvent needs alpha > 0");
    const RobinMeasure neutral = RobinMeasure::neumann(dom);
    std::vector<std::vector<double>> out(rungs.size(), std::vector<double>(n));
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                const double tau = rng.aux.exponential(alpha);
                LadderPathTracker trk(dom, rungs, cfg.bridge_correction);
                PathState s;
                s.x = x;
                advance(d, neutral, cfg, tau, s, rng.noise, rng.aux,
                        [&](const StepRecord& rec) { trk.on_step(rec, rng.aux); });
                const double fx = f.eval(s.x);
                for (std::size_t k = 0; k < rungs.size(); ++k)
                    out[k][i] = trk.dead[k] ? 0.0 : fx * std::exp(-trk.A[k]) / alpha;
            });
        },
        dom);
    return out;
}

namespace {

// One leg of the step-size pair: measure bookkeeping identical to the
// core loop (Robin accrual, Dirichlet absorption, optional bridge kill).
struct PairLeg {
    Point x;
    double A = 0.0;
    bool alive = true;

    template <class DomainT>
    void step(const DomainT& dom, const RobinMeasure& mu, Point dw, double dt, bool bridge,
              const std::array<int, kMaxComponents>& dirichlet_comps, int n_dirichlet,
              RngStream& aux) {
        if (!alive) return;
        const Point x_prev = x;
        const StepOutcome out = step_project(dom, x, dw);
        if (out.dell > 0.0) {
            const BetaValue beta = mu.beta_at({out.x, out.component, {}});
            if (beta.dirichlet) {
                alive = false;
                x = out.x;
                return;
            }
            A += beta.value * out.dell;
        }
        x = out.x;
        for (int k = 0; k < n_dirichlet; ++k) {
            const int c = dirichlet_comps[k];
            const double p = bridge_exit_probability(component_distance(dom, x_prev, c),
                                                     component_distance(dom, x, c), dt);
            if (bridge && aux.uniform() < p) {
                alive = false;
                x = project_to_component(dom, x, c).position;
                return;
            }
        }
    }
};

}  // namespace

std::pair<std::vector<double>, std::vector<double>> semigroup_weight_pair_samples(
    const Domain& dom, const RobinMeasure& mu, const TestFunction& f, double t, Point x,
    std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    if (cfg.scheme != Scheme::projection)
        throw std::invalid_argument("step-size pair sampler supports the projection scheme only");
    if (t > cfg.T + 1e-12 * (1.0 + cfg.T))
        throw std::invalid_argument("semigroup time exceeds cfg.T horizon");

    std::array<int, kMaxComponents> dirichlet_comps{};
    int n_dirichlet = 0;
    if (cfg.bridge_correction && mu.has_dirichlet()) {
        for (int c = 0; c < mu.n_components(); ++c)
            if (mu.component(c).kind == BcKind::dirichlet) dirichlet_comps[n_dirichlet++] = c;
    }
    const bool bridge = n_dirichlet > 0;

    std::vector<double> coarse(n), fine(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                RngStream noise(cfg.seed, i, 0);
                RngStream aux_fine(cfg.seed, i, 1);
                RngStream aux_coarse(cfg.seed, i, 2);
                PairLeg cl{x}, fl{x};
                double elapsed = 0.0;
                const double t_tol = 1e-12 * (1.0 + t);
                while (elapsed < t - t_tol) {
                    const double dtc = std::min(cfg.h, t - elapsed);
                    Point sum{};
                    for (int sub = 0; sub < 4; ++sub) {
                        const double dtf = dtc / 4.0;
                        const Point dw = detail::draw_increment(d, noise, std::sqrt(dtf));
                        sum = sum + dw;
                        fl.step(d, mu, dw, dtf, bridge, dirichlet_comps, n_dirichlet, aux_fine);
                    }
                    cl.step(d, mu, sum, dtc, bridge, dirichlet_comps, n_dirichlet, aux_coarse);
                    elapsed += dtc;
                }
                coarse[i] = cl.alive ? f.eval(cl.x) * std::exp(-cl.A) : 0.0;
                fine[i] = fl.alive ? f.eval(fl.x) * std::exp(-fl.A) : 0.0;
            });
        },
        dom);
    return {std::move(coarse), std::move(fine)};
}

std::pair<std::vector<double>, std::vector<double>> weight_killed_samples(
    const Domain& dom, const RobinMeasure& mu, const TestFunction& f, double t, Point x,
    std::size_t n, const SimConfig& cfg) {
    validate(cfg);
    check_start(dom, x);
    check_fn(f);
    if (t > cfg.T + 1e-12 * (1.0 + cfg.T))
        throw std::invalid_argument("semigroup time exceeds cfg.T horizon");
    std::vector<double> w(n), k(n);
    std::visit(
        [&](const auto& d) {
            parallel_for(n, [&](std::size_t i) {
                PathRng rng(cfg.seed, i);
                const double Z = rng.aux.exponential(1.0);
                PathState s;
                s.x = x;
                advance(d, mu, cfg, t, s, rng.noise, rng.aux, NoOpStep{});
                const double fx = s.alive ? f.eval(s.x) : 0.0;
                w[i] = s.alive ? fx * std::exp(-s.A) : 0.0;
                k[i] = (s.alive && s.A < Z) ? fx : 0.0;
            });
        },
        dom);
    return {std::move(w), std::move(k)};
}

}  // namespace robinmc
