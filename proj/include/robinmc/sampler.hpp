#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "robinmc/boundary.hpp"
#include "robinmc/geometry.hpp"
#include "robinmc/rng.hpp"

namespace robinmc {

enum class Scheme { projection, occupation };

struct SimConfig {
    double h = 1e-3;                 // time step
    Scheme scheme = Scheme::projection;
    double eps = 1e-2;               // occupation bandwidth (occupation scheme only)
    bool bridge_correction = false;  // Brownian-bridge kill between steps (Dirichlet components)
    double T = 1.0;                  // horizon
    std::uint64_t seed = 1;
};

void validate(const SimConfig& cfg);

// One trajectory's running state. ell accumulates the per-component
// Skorohod pushes (projection scheme) or band occupation (occupation
// scheme); A accumulates beta * dell. noise_sum tracks the driving
// Brownian increments, so x - x0 - noise_sum is the total reflection push.
struct PathState {
    double t = 0.0;
    Point x{};
    std::array<double, kMaxComponents> ell{};
    double A = 0.0;
    bool alive = true;
    bool touched = false;  // ever had boundary contact (incl. absorbing contact)
    Point noise_sum{};

    double ell_total() const { return ell[0] + ell[1] + ell[2] + ell[3]; }
};

// One-step outcome of a reflection scheme.
struct StepOutcome {
    Point x;
    double dell = 0.0;
    int component = -1;  // -1: no boundary attribution this step
};

// Discrete Skorohod map, one step: propose y = x + dw; inside keeps y,
// outside projects back and books the overshoot as local time.
template <class DomainT>
StepOutcome step_project(const DomainT& dom, Point x, Point dw) {
    const Point y = x + dw;
    const double sd = signed_distance(dom, y);
    if (sd >= 0.0) return {y, 0.0, -1};
    const BoundaryPoint bp = project(dom, y);
    return {bp.position, -sd, bp.component_id};
}

// Mirror-reflection step with occupation-density local time: dell =
// dt/(2*eps) whenever the reflected point sits within eps of the
// boundary, attributed to the nearest component.
StepOutcome step_occupation(const Interval& dom, Point x, Point dw, double eps, double dt);
StepOutcome step_occupation(const Rectangle& dom, Point x, Point dw, double eps, double dt);
StepOutcome step_occupation(const Disk& dom, Point x, Point dw, double eps, double dt);

// Half-space Brownian-bridge crossing probability exp(-2*d0*d1/h) for
// interior distances d0 (step start) and d1 (step end).
double bridge_exit_probability(double d_start, double d_end, double h);

// Per-step callback record for the core loop.
struct StepRecord {
    double t;        // time after the step
    double dt;
    Point x_prev;
    Point x;
    double dell;
    int component;   // -1 when no boundary attribution
    double dA;
};

namespace detail {

template <class DomainT>
Point draw_increment(const DomainT&, RngStream& noise, double sqrt_dt) {
    if constexpr (DomainT::dim == 1) {
        return {sqrt_dt * noise.normal(), 0.0};
    } else {
        const double gx = sqrt_dt * noise.normal();
        const double gy = sqrt_dt * noise.normal();
        return {gx, gy};
    }
}

}  // namespace detail

// Advances one trajectory to t_target. Noise consumption is independent
// of the measure: one Gaussian increment per coordinate per step while
// the path is alive, so runs sharing (seed, path) stay coupled. Auxiliary
// randomness (bridge kills) comes from the separate aux stream.
// An absorbed path freezes (position and functionals stop, time jumps).
template <class DomainT, class OnStep>
void advance(const DomainT& dom, const RobinMeasure& mu, const SimConfig& cfg, double t_target,
             PathState& s, RngStream& noise, RngStream& aux, OnStep&& on_step) {
    std::array<int, kMaxComponents> dirichlet_comps{};
    int n_dirichlet = 0;
    if (cfg.bridge_correction && mu.has_dirichlet()) {
        for (int c = 0; c < mu.n_components(); ++c)
            if (mu.component(c).kind == BcKind::dirichlet) dirichlet_comps[n_dirichlet++] = c;
    }

    // relative slack so that t_target is hit in one final step
    const double t_tol = 1e-12 * (1.0 + std::abs(t_target));
    while (s.t < t_target - t_tol) {
        if (!s.alive) {
            s.t = t_target;
            break;
        }
        const double dt = std::min(cfg.h, t_target - s.t);
        const Point x_prev = s.x;
        const Point dw = detail::draw_increment(dom, noise, std::sqrt(dt));
        s.noise_sum = s.noise_sum + dw;

        StepOutcome out = (cfg.scheme == Scheme::projection)
                              ? step_project(dom, s.x, dw)
                              : step_occupation(dom, s.x, dw, cfg.eps, dt);
        double dA = 0.0;
        if (out.dell > 0.0) {
            s.touched = true;
            const BetaValue beta = mu.beta_at({out.x, out.component, {}});
            if (beta.dirichlet) {
                // instant absorption: freeze at the hit boundary point
                s.alive = false;
                s.x = (cfg.scheme == Scheme::projection)
                          ? out.x
                          : project_to_component(dom, out.x, out.component).position;
                s.t += dt;
                on_step(StepRecord{s.t, dt, x_prev, s.x, 0.0, out.component, 0.0});
                continue;
            }
            s.ell[out.component] += out.dell;
            dA = beta.value * out.dell;
            s.A += dA;
        }
        s.x = out.x;
        s.t += dt;

        for (int k = 0; k < n_dirichlet; ++k) {
            const int c = dirichlet_comps[k];
            const double d0 = component_distance(dom, x_prev, c);
            const double d1 = component_distance(dom, s.x, c);
            const double p = bridge_exit_probability(d0, d1, dt);
            if (aux.uniform() < p) {
                s.alive = false;
                s.touched = true;
                s.x = project_to_component(dom, s.x, c).position;
                break;
            }
        }
        on_step(StepRecord{s.t, dt, x_prev, s.x, out.dell, out.component, dA});
    }
}

struct NoOpStep {
    void operator()(const StepRecord&) const {}
};

// Dispatches advance() over the domain variant.
template <class OnStep>
void advance(const Domain& dom, const RobinMeasure& mu, const SimConfig& cfg, double t_target,
             PathState& s, RngStream& noise, RngStream& aux, OnStep&& on_step) {
    std::visit([&](const auto& d) { advance(d, mu, cfg, t_target, s, noise, aux, on_step); }, dom);
}

// RNG streams for one path: substream 0 drives the noise, substream 1
// everything else.
struct PathRng {
    RngStream noise;
    RngStream aux;
    PathRng(std::uint64_t seed, std::uint64_t path)
        : noise(seed, path, 0), aux(seed, path, 1) {}
};

struct TraceRecord {
    double t = 0.0;
    Point x{};
    std::array<double, kMaxComponents> ell{};
    double A = 0.0;
    bool alive = true;
};

struct Trace {
    int n_components = 0;
    bool touched = false;
    Point noise_sum{};  // at the last record
    std::vector<TraceRecord> records;
};

// Simulates one trajectory, recording state at the requested observation
// times (nondecreasing, all <= cfg.T; the horizon itself is appended when
// the list is empty). Path randomness derives from (cfg.seed, path_index).
Trace simulate(const Domain& dom, const RobinMeasure& mu, Point x0, const SimConfig& cfg,
               std::uint64_t path_index, std::span<const double> obs_times);

inline constexpr double kNeverKilled = std::numeric_limits<double>::infinity();

// First time A_t >= Z along the trace, linearly interpolating A between
// records (A is continuous); +infinity if the trace never accumulates Z.
double kill_time(const Trace& trace, double Z);

}  // namespace robinmc
