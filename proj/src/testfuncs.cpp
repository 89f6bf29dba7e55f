#include "robinmc/testfuncs.hpp"

#include <cmath>
#include <stdexcept>

namespace robinmc {

namespace {

Point centroid(const Domain& dom) {
    struct V {
        Point operator()(const Interval& d) const { return {0.5 * (d.a + d.b), 0.0}; }
        Point operator()(const Rectangle& d) const {
            return {0.5 * (d.x0 + d.x1), 0.5 * (d.y0 + d.y1)};
        }
        Point operator()(const Disk& d) const { return d.center; }
    };
    return std::visit(V{}, dom);
}

double max_abs_coord_x(const Domain& dom) {
    struct V {
        double operator()(const Interval& d) const { return std::max(std::abs(d.a), std::abs(d.b)); }
        double operator()(const Rectangle& d) const {
            return std::max(std::abs(d.x0), std::abs(d.x1));
        }
        double operator()(const Disk& d) const { return std::abs(d.center.x) + d.radius; }
    };
    return std::visit(V{}, dom);
}

double max_abs_coord_y(const Domain& dom) {
    struct V {
        double operator()(const Interval&) const { return 0.0; }
        double operator()(const Rectangle& d) const {
            return std::max(std::abs(d.y0), std::abs(d.y1));
        }
        double operator()(const Disk& d) const { return std::abs(d.center.y) + d.radius; }
    };
    return std::visit(V{}, dom);
}

}  // namespace

TestFunction make_test_function(const std::string& name, const Domain& dom) {
    if (name == "one") return {"one", [](Point) { return 1.0; }, 1.0};
    if (name == "x") return {"x", [](Point p) { return p.x; }, max_abs_coord_x(dom)};
    if (name == "y") return {"y", [](Point p) { return p.y; }, max_abs_coord_y(dom)};
    if (name == "sin_pi_x")
        return {"sin_pi_x", [](Point p) { return std::sin(M_PI * p.x); }, 1.0};
    if (name == "sin_pi_x_sin_pi_y")
        return {"sin_pi_x_sin_pi_y",
                [](Point p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); }, 1.0};
    if (name == "radial_bump") {
        const Point c = centroid(dom);
        const double w = 0.5 * diameter(dom);
        return {"radial_bump",
                [c, w](Point p) {
                    const double r2 = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
                    return std::exp(-r2 / (w * w));
                },
                1.0};
    }
    throw std::invalid_argument("unknown test function '" + name + "'");
}

std::vector<std::string> test_function_names() {
    return {"one", "x", "y", "sin_pi_x", "sin_pi_x_sin_pi_y", "radial_bump"};
}

}  // namespace robinmc
