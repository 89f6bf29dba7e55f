#pragma once

#include <functional>
#include <vector>

#include "robinmc/geometry.hpp"

namespace robinmc {

enum class BcKind { neumann, robin, dirichlet };

// beta as a function of the component's arc-length/edge parameter:
// either a single constant, or piecewise-constant on half-open cells
// [s_i, s_{i+1}) with s_0 = 0 and the last cell extending to the
// component end.
struct BetaProfile {
    std::vector<double> breaks;  // ascending, breaks[0] == 0
    std::vector<double> values;  // same size as breaks; constant profile has one entry

    static BetaProfile constant(double beta) { return {{0.0}, {beta}}; }
    bool is_constant() const { return values.size() == 1; }
};

struct ComponentBc {
    BcKind kind = BcKind::neumann;
    BetaProfile beta = BetaProfile::constant(0.0);

    static ComponentBc neumann() { return {BcKind::neumann, BetaProfile::constant(0.0)}; }
    static ComponentBc robin(double beta) { return {BcKind::robin, BetaProfile::constant(beta)}; }
    static ComponentBc robin(BetaProfile profile) { return {BcKind::robin, std::move(profile)}; }
    static ComponentBc dirichlet() { return {BcKind::dirichlet, BetaProfile::constant(0.0)}; }
};

// beta_at result: a finite rate, or the Dirichlet marker.
struct BetaValue {
    double value = 0.0;
    bool dirichlet = false;
};

// The boundary measure mu = beta * sigma, with per-component Neumann /
// Robin / Dirichlet regimes. Dirichlet is a symbolic flag (instant
// absorption on contact), never a large float. Immutable after
// construction; carries a copy of the domain so piecewise profiles can
// be validated and evaluated against component parameter ranges.
class RobinMeasure {
public:
    RobinMeasure(const Domain& dom, std::vector<ComponentBc> components);

    static RobinMeasure neumann(const Domain& dom);
    static RobinMeasure uniform_robin(const Domain& dom, double beta);
    static RobinMeasure all_dirichlet(const Domain& dom);

    const Domain& domain() const { return domain_; }
    int n_components() const { return static_cast<int>(components_.size()); }
    const ComponentBc& component(int id) const;

    bool has_dirichlet() const { return has_dirichlet_; }
    bool all_neumann() const;

    // beta value (or Dirichlet marker) at a boundary point; piecewise
    // lookup is half-open on [s_i, s_{i+1}). Throws if the point's
    // parameter falls outside the component range.
    BetaValue beta_at(const BoundaryPoint& bp) const;

    // Fast path used by the sampler: component id + precomputed parameter.
    BetaValue beta_at(int component, double parameter) const;

    // Upper bound of beta over all non-Dirichlet components.
    double beta_sup() const;

private:
    Domain domain_;
    std::vector<ComponentBc> components_;
    std::vector<double> lengths_;
    bool has_dirichlet_ = false;
};

// c >= 0; beta -> c*beta componentwise. c == 0 yields all-Neumann;
// for c > 0 Dirichlet components stay Dirichlet.
RobinMeasure scale(const RobinMeasure& m, double c);

// Integral over the boundary of f * beta dsigma (sigma: counting measure
// on interval endpoints, arc length in 2D). Throws if any component is
// Dirichlet. Piecewise cells are integrated separately with composite
// Simpson quadrature.
double mu_integral(const RobinMeasure& m, const std::function<double(Point)>& f);

}  // namespace robinmc
