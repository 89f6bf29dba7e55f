#include "robinmc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robinmc {

void validate(const SimConfig& cfg) {
    if (!(cfg.h > 0.0)) throw std::invalid_argument("sim: h must be > 0");
    if (cfg.scheme == Scheme::occupation && !(cfg.eps > 0.0))
        throw std::invalid_argument("sim: eps must be > 0 for the occupation scheme");
    if (!(cfg.T >= 0.0)) throw std::invalid_argument("sim: T must be >= 0");
}

double bridge_exit_probability(double d_start, double d_end, double h) {
    if (d_start < 0.0 || d_end < 0.0 || !(h > 0.0))
        throw std::invalid_argument("bridge_exit_probability: need d_start,d_end >= 0 and h > 0");
    return std::exp(-2.0 * d_start * d_end / h);
}

namespace {

double fold_segment(double y, double lo, double hi) {
    const double L = hi - lo;
    double z = std::fmod(y - lo, 2.0 * L);
    if (z < 0.0) z += 2.0 * L;
    return lo + (z <= L ? z : 2.0 * L - z);
}

}  // namespace

StepOutcome step_occupation(const Interval& dom, Point x, Point dw, double eps, double dt) {
    Point y = x + dw;
    if (signed_distance(dom, y) < 0.0) y.x = fold_segment(y.x, dom.a, dom.b);
    if (signed_distance(dom, y) < eps) {
        return {y, dt / (2.0 * eps), project(dom, y).component_id};
    }
    return {y, 0.0, -1};
}

StepOutcome step_occupation(const Rectangle& dom, Point x, Point dw, double eps, double dt) {
    Point y = x + dw;
    if (signed_distance(dom, y) < 0.0) {
        y.x = fold_segment(y.x, dom.x0, dom.x1);
        y.y = fold_segment(y.y, dom.y0, dom.y1);
    }
    if (signed_distance(dom, y) < eps) {
        return {y, dt / (2.0 * eps), project(dom, y).component_id};
    }
    return {y, 0.0, -1};
}

StepOutcome step_occupation(const Disk& dom, Point x, Point dw, double eps, double dt) {
    Point y = x + dw;
    Point v = y - dom.center;
    double r = norm(v);
    if (r > dom.radius) {
        const Point dir{v.x / r, v.y / r};
        // radial mirror; repeated fold for (rare) large excursions
        while (r > dom.radius) {
            r = 2.0 * dom.radius - r;
            if (r < 0.0) r = -r;
        }
        y = dom.center + r * dir;
    }
    if (signed_distance(dom, y) < eps) {
        return {y, dt / (2.0 * eps), project(dom, y).component_id};
    }
    return {y, 0.0, -1};
}

Trace simulate(const Domain& dom, const RobinMeasure& mu, Point x0, const SimConfig& cfg,
               std::uint64_t path_index, std::span<const double> obs_times) {
    validate(cfg);
    const double tol = 1e-12 * diameter(dom);
    if (signed_distance(dom, x0) < -tol)
        throw std::invalid_argument("simulate: x0 outside the closed domain");

    std::vector<double> times(obs_times.begin(), obs_times.end());
    if (times.empty()) times.push_back(cfg.T);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > cfg.T + 1e-12 * (1.0 + cfg.T))
            throw std::invalid_argument("simulate: observation time outside [0, T]");
        if (i > 0 && times[i] < times[i - 1])
            throw std::invalid_argument("simulate: observation times must be nondecreasing");
    }

    PathRng rng(cfg.seed, path_index);
    PathState s;
    s.x = x0;

    Trace trace;
    trace.n_components = n_components(dom);
    trace.records.reserve(times.size());
    NoOpStep no_op;
    for (double t_obs : times) {
        std::visit([&](const auto& d) { advance(d, mu, cfg, t_obs, s, rng.noise, rng.aux, no_op); },
                   dom);
        trace.records.push_back({s.t, s.x, s.ell, s.A, s.alive});
    }
    trace.touched = s.touched;
    trace.noise_sum = s.noise_sum;
    return trace;
}

double kill_time(const Trace& trace, double Z) {
    if (!(Z > 0.0)) throw std::invalid_argument("kill_time: Z must be > 0");
    double t_prev = 0.0, a_prev = 0.0;  // A_0 = 0 by definition
    for (const auto& rec : trace.records) {
        if (rec.A >= Z) {
            const double da = rec.A - a_prev;
            if (da <= 0.0) return t_prev;  // flat segment already at Z
            return t_prev + (Z - a_prev) * (rec.t - t_prev) / da;
        }
        t_prev = rec.t;
        a_prev = rec.A;
    }
    return kNeverKilled;
}

}  // namespace robinmc
