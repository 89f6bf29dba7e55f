#include "robinmc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robinmc {

namespace {

void validate_profile(const BetaProfile& p, double component_length) {
    if (p.values.empty() || p.breaks.size() != p.values.size())
        throw std::invalid_argument("beta profile needs matching breaks/values, at least one cell");
    if (p.breaks.front() != 0.0)
        throw std::invalid_argument("beta profile must start at parameter 0");
    for (std::size_t i = 0; i < p.breaks.size(); ++i) {
        if (!std::isfinite(p.breaks[i]) || !std::isfinite(p.values[i]) || p.values[i] < 0.0)
            throw std::invalid_argument("beta profile requires finite breaks and beta >= 0");
        if (i > 0 && p.breaks[i] <= p.breaks[i - 1])
            throw std::invalid_argument("beta profile breaks must be strictly increasing");
        if (p.breaks[i] >= component_length && i > 0)
            throw std::invalid_argument("beta profile break outside component range");
    }
}

}  // namespace

RobinMeasure::RobinMeasure(const Domain& dom, std::vector<ComponentBc> components)
    : domain_(dom), components_(std::move(components)) {
    validate(domain_);
    const int nc = robinmc::n_components(domain_);
    if (static_cast<int>(components_.size()) != nc)
        throw std::invalid_argument("measure needs exactly " + std::to_string(nc) +
                                    " component specs for this domain");
    lengths_.resize(components_.size());
    for (int c = 0; c < nc; ++c) {
        // Parameter range: endpoint atoms use a degenerate [0,0] range.
        lengths_[c] = dimension(domain_) == 1 ? 0.0 : surface_measure_total(domain_, c);
        const auto& bc = components_[c];
        if (bc.kind == BcKind::robin)
            validate_profile(bc.beta, lengths_[c] > 0.0 ? lengths_[c] : 1.0);
        if (bc.kind == BcKind::dirichlet) has_dirichlet_ = true;
    }
}

RobinMeasure RobinMeasure::neumann(const Domain& dom) {
    return RobinMeasure(dom, std::vector<ComponentBc>(robinmc::n_components(dom), ComponentBc::neumann()));
}

RobinMeasure RobinMeasure::uniform_robin(const Domain& dom, double beta) {
    return RobinMeasure(dom, std::vector<ComponentBc>(robinmc::n_components(dom), ComponentBc::robin(beta)));
}

RobinMeasure RobinMeasure::all_dirichlet(const Domain& dom) {
    return RobinMeasure(dom, std::vector<ComponentBc>(robinmc::n_components(dom), ComponentBc::dirichlet()));
}

const ComponentBc& RobinMeasure::component(int id) const {
    if (id < 0 || id >= n_components()) throw std::out_of_range("bad component id");
    return components_[id];
}

bool RobinMeasure::all_neumann() const {
    return std::all_of(components_.begin(), components_.end(), [](const ComponentBc& c) {
        return c.kind == BcKind::neumann || (c.kind == BcKind::robin && c.beta.is_constant() &&
                                             c.beta.values[0] == 0.0);
    });
}

BetaValue RobinMeasure::beta_at(int component, double parameter) const {
    const ComponentBc& bc = this->component(component);
    switch (bc.kind) {
        case BcKind::neumann: return {0.0, false};
        case BcKind::dirichlet: return {0.0, true};
        case BcKind::robin: {
            if (bc.beta.is_constant()) return {bc.beta.values[0], false};
            const double len = lengths_[component];
            if (parameter < 0.0 || parameter > len)
                throw std::out_of_range("boundary parameter outside component range");
            // last cell whose break <= parameter (cells are [s_i, s_{i+1}))
            auto it = std::upper_bound(bc.beta.breaks.begin(), bc.beta.breaks.end(), parameter);
            const auto idx = static_cast<std::size_t>(it - bc.beta.breaks.begin()) - 1;
            return {bc.beta.values[idx], false};
        }
    }
    throw std::logic_error("unreachable");
}

BetaValue RobinMeasure::beta_at(const BoundaryPoint& bp) const {
    const ComponentBc& bc = component(bp.component_id);
    if (bc.kind == BcKind::robin && !bc.beta.is_constant())
        return beta_at(bp.component_id, boundary_parameter(domain_, bp.position, bp.component_id));
    return beta_at(bp.component_id, 0.0);
}

double RobinMeasure::beta_sup() const {
    double sup = 0.0;
    for (const auto& bc : components_)
        if (bc.kind == BcKind::robin)
            for (double v : bc.beta.values) sup = std::max(sup, v);
    return sup;
}

RobinMeasure scale(const RobinMeasure& m, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("scale factor must be >= 0");
    std::vector<ComponentBc> comps;
    comps.reserve(m.n_components());
    for (int i = 0; i < m.n_components(); ++i) {
        const ComponentBc& bc = m.component(i);
        if (c == 0.0) {
            comps.push_back(ComponentBc::neumann());
        } else if (bc.kind == BcKind::robin) {
            BetaProfile p = bc.beta;
            for (double& v : p.values) v *= c;
            comps.push_back(ComponentBc::robin(std::move(p)));
        } else {
            comps.push_back(bc);
        }
    }
    return RobinMeasure(m.domain(), std::move(comps));
}

namespace {

// Composite Simpson on [s0,s1] for g(parameter).
double simpson(const std::function<double(double)>& g, double s0, double s1, int panels) {
    const double h = (s1 - s0) / (2.0 * panels);
    double sum = g(s0) + g(s1);
    for (int i = 1; i < 2 * panels; ++i) sum += g(s0 + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

Point point_at_parameter(const Domain& dom, int component, double s) {
    struct V {
        int c;
        double s;
        Point operator()(const Interval& d) const { return {c == 0 ? d.a : d.b, 0.0}; }
        Point operator()(const Rectangle& d) const {
            switch (c) {
                case 0: return {d.x0, d.y0 + s};
                case 1: return {d.x1, d.y0 + s};
                case 2: return {d.x0 + s, d.y0};
                default: return {d.x0 + s, d.y1};
            }
        }
        Point operator()(const Disk& d) const {
            const double ang = s / d.radius;
            return {d.center.x + d.radius * std::cos(ang), d.center.y + d.radius * std::sin(ang)};
        }
    };
    return std::visit(V{component, s}, dom);
}

}  // namespace

double mu_integral(const RobinMeasure& m, const std::function<double(Point)>& f) {
    const Domain& dom = m.domain();
    double total = 0.0;
    for (int c = 0; c < m.n_components(); ++c) {
        const ComponentBc& bc = m.component(c);
        if (bc.kind == BcKind::dirichlet)
            throw std::invalid_argument("mu_integral undefined for Dirichlet components");
        if (bc.kind == BcKind::neumann) continue;
        if (dimension(dom) == 1) {
            total += bc.beta.values[0] * f(point_at_parameter(dom, c, 0.0));
            continue;
        }
        const double len = surface_measure_total(dom, c);
        const auto& breaks = bc.beta.breaks;
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            const double s0 = breaks[i];
            const double s1 = (i + 1 < breaks.size()) ? breaks[i + 1] : len;
            const double beta = bc.beta.values[i];
            if (beta == 0.0 || s1 <= s0) continue;
            total += beta * simpson([&](double s) { return f(point_at_parameter(dom, c, s)); },
                                    s0, s1, 256);
        }
    }
    return total;
}

}  // namespace robinmc
