#include "robinmc/geometry.hpp"

#include <algorithm>
#include <limits>

namespace robinmc {

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

[[noreturn]] void bad_component(int component, int count) {
    throw std::out_of_range("unknown boundary component id " + std::to_string(component) +
                            " (domain has " + std::to_string(count) + ")");
}

}  // namespace

// ---------------------------------------------------------------- Interval

double signed_distance(const Interval& d, Point p) {
    return std::min(p.x - d.a, d.b - p.x);
}

BoundaryPoint project(const Interval& d, Point p) {
    // Nearest endpoint; midpoint tie goes to component 0.
    const double da = std::abs(p.x - d.a);
    const double db = std::abs(d.b - p.x);
    if (da <= db) return {{d.a, 0.0}, 0, {1.0, 0.0}};
    return {{d.b, 0.0}, 1, {-1.0, 0.0}};
}

double component_distance(const Interval& d, Point p, int component) {
    if (component == 0) return std::abs(p.x - d.a);
    if (component == 1) return std::abs(d.b - p.x);
    bad_component(component, 2);
}

BoundaryPoint project_to_component(const Interval& d, Point, int component) {
    if (component == 0) return {{d.a, 0.0}, 0, {1.0, 0.0}};
    if (component == 1) return {{d.b, 0.0}, 1, {-1.0, 0.0}};
    bad_component(component, 2);
}

double boundary_parameter(const Interval&, Point, int component) {
    if (component != 0 && component != 1) bad_component(component, 2);
    return 0.0;  // endpoint atoms have a single parameter value
}

double component_length(const Interval&, int component) {
    if (component != 0 && component != 1) bad_component(component, 2);
    return 1.0;  // counting measure
}

// --------------------------------------------------------------- Rectangle

double signed_distance(const Rectangle& d, Point p) {
    const double qx = std::max(d.x0 - p.x, p.x - d.x1);
    const double qy = std::max(d.y0 - p.y, p.y - d.y1);
    if (qx <= 0.0 && qy <= 0.0) return -std::max(qx, qy);  // inside: nearest edge
    const double ox = std::max(qx, 0.0);
    const double oy = std::max(qy, 0.0);
    return -std::hypot(ox, oy);
}

namespace {

Point rect_edge_normal(int component) {
    switch (component) {
        case 0: return {1.0, 0.0};
        case 1: return {-1.0, 0.0};
        case 2: return {0.0, 1.0};
        default: return {0.0, -1.0};
    }
}

Point rect_edge_point(const Rectangle& d, int component, Point p) {
    switch (component) {
        case 0: return {d.x0, clamp(p.y, d.y0, d.y1)};
        case 1: return {d.x1, clamp(p.y, d.y0, d.y1)};
        case 2: return {clamp(p.x, d.x0, d.x1), d.y0};
        default: return {clamp(p.x, d.x0, d.x1), d.y1};
    }
}

}  // namespace

BoundaryPoint project(const Rectangle& d, Point p) {
    // Distances to the four edge planes; largest negative = violated side.
    const std::array<double, 4> dist = {p.x - d.x0, d.x1 - p.x, p.y - d.y0, d.y1 - p.y};
    const bool inside = dist[0] >= 0 && dist[1] >= 0 && dist[2] >= 0 && dist[3] >= 0;
    if (inside) {
        // Nearest edge; ties (corner diagonals) go to the lowest component id.
        int best = 0;
        for (int c = 1; c < 4; ++c)
            if (dist[c] < dist[best]) best = c;
        return {rect_edge_point(d, best, p), best, rect_edge_normal(best)};
    }
    // Outside: clamped point; among violated sides the lowest id wins at corners.
    for (int c = 0; c < 4; ++c) {
        if (dist[c] < 0.0) return {rect_edge_point(d, c, p), c, rect_edge_normal(c)};
    }
    return {rect_edge_point(d, 0, p), 0, rect_edge_normal(0)};  // unreachable
}

double component_distance(const Rectangle& d, Point p, int component) {
    switch (component) {
        case 0: return std::abs(p.x - d.x0);
        case 1: return std::abs(d.x1 - p.x);
        case 2: return std::abs(p.y - d.y0);
        case 3: return std::abs(d.y1 - p.y);
        default: bad_component(component, 4);
    }
}

BoundaryPoint project_to_component(const Rectangle& d, Point p, int component) {
    if (component < 0 || component >= 4) bad_component(component, 4);
    return {rect_edge_point(d, component, p), component, rect_edge_normal(component)};
}

double boundary_parameter(const Rectangle& d, Point pos, int component) {
    switch (component) {
        case 0:
        case 1: return pos.y - d.y0;
        case 2:
        case 3: return pos.x - d.x0;
        default: bad_component(component, 4);
    }
}

double component_length(const Rectangle& d, int component) {
    switch (component) {
        case 0:
        case 1: return d.y1 - d.y0;
        case 2:
        case 3: return d.x1 - d.x0;
        default: bad_component(component, 4);
    }
}

// -------------------------------------------------------------------- Disk

double signed_distance(const Disk& d, Point p) {
    return d.radius - norm(p - d.center);
}

BoundaryPoint project(const Disk& d, Point p) {
    const Point v = p - d.center;
    const double r = norm(v);
    if (r == 0.0) {
        // Center is equidistant from the whole circle; pick angle 0.
        return {{d.center.x + d.radius, d.center.y}, 0, {-1.0, 0.0}};
    }
    const Point dir{v.x / r, v.y / r};
    return {{d.center.x + d.radius * dir.x, d.center.y + d.radius * dir.y},
            0,
            {-dir.x, -dir.y}};
}

double component_distance(const Disk& d, Point p, int component) {
    if (component != 0) bad_component(component, 1);
    return std::abs(d.radius - norm(p - d.center));
}

BoundaryPoint project_to_component(const Disk& d, Point p, int component) {
    if (component != 0) bad_component(component, 1);
    return project(d, p);
}

double boundary_parameter(const Disk& d, Point pos, int component) {
    if (component != 0) bad_component(component, 1);
    double ang = std::atan2(pos.y - d.center.y, pos.x - d.center.x);
    if (ang < 0.0) ang += 2.0 * M_PI;
    return d.radius * ang;
}

double component_length(const Disk& d, int component) {
    if (component != 0) bad_component(component, 1);
    return 2.0 * M_PI * d.radius;
}

// ----------------------------------------------------------- variant layer

int dimension(const Domain& dom) {
    return std::visit([](const auto& d) { return d.dim; }, dom);
}

int n_components(const Domain& dom) {
    return std::visit([](const auto& d) { return d.n_components; }, dom);
}

double diameter(const Domain& dom) {
    struct V {
        double operator()(const Interval& d) const { return d.b - d.a; }
        double operator()(const Rectangle& d) const { return std::hypot(d.x1 - d.x0, d.y1 - d.y0); }
        double operator()(const Disk& d) const { return 2.0 * d.radius; }
    };
    return std::visit(V{}, dom);
}

double signed_distance(const Domain& dom, Point p) {
    return std::visit([&](const auto& d) { return signed_distance(d, p); }, dom);
}

BoundaryPoint project(const Domain& dom, Point p) {
    return std::visit([&](const auto& d) { return project(d, p); }, dom);
}

double component_distance(const Domain& dom, Point p, int component) {
    return std::visit([&](const auto& d) { return component_distance(d, p, component); }, dom);
}

BoundaryPoint project_to_component(const Domain& dom, Point p, int component) {
    return std::visit([&](const auto& d) { return project_to_component(d, p, component); }, dom);
}

double boundary_parameter(const Domain& dom, Point pos, int component) {
    return std::visit([&](const auto& d) { return boundary_parameter(d, pos, component); }, dom);
}

double surface_measure_total(const Domain& dom, int component) {
    return std::visit([&](const auto& d) { return component_length(d, component); }, dom);
}

void validate(const Domain& dom) {
    struct V {
        void operator()(const Interval& d) const {
            if (!(std::isfinite(d.a) && std::isfinite(d.b) && d.a < d.b))
                throw std::invalid_argument("interval requires finite a < b");
        }
        void operator()(const Rectangle& d) const {
            if (!(std::isfinite(d.x0) && std::isfinite(d.x1) && d.x0 < d.x1 &&
                  std::isfinite(d.y0) && std::isfinite(d.y1) && d.y0 < d.y1))
                throw std::invalid_argument("rectangle requires finite x0 < x1 and y0 < y1");
        }
        void operator()(const Disk& d) const {
            if (!(std::isfinite(d.center.x) && std::isfinite(d.center.y) &&
                  std::isfinite(d.radius) && d.radius > 0.0))
                throw std::invalid_argument("disk requires finite center and radius > 0");
        }
    };
    std::visit(V{}, dom);
}

std::string describe(const Domain& dom) {
    struct V {
        std::string operator()(const Interval& d) const {
            return "interval[" + std::to_string(d.a) + "," + std::to_string(d.b) + "]";
        }
        std::string operator()(const Rectangle& d) const {
            return "rectangle[" + std::to_string(d.x0) + "," + std::to_string(d.x1) + "]x[" +
                   std::to_string(d.y0) + "," + std::to_string(d.y1) + "]";
        }
        std::string operator()(const Disk& d) const {
            return "disk(c=(" + std::to_string(d.center.x) + "," + std::to_string(d.center.y) +
                   "),r=" + std::to_string(d.radius) + ")";
        }
    };
    return std::visit(V{}, dom);
}

}  // namespace robinmc
