#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace robinmc {

// 2D point; 1D domains use .x and keep .y == 0.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double c, Point p) { return {c * p.x, c * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }

// A point on the boundary with its component id and unit inward normal.
struct BoundaryPoint {
    Point position{};
    int component_id = -1;
    Point inward_normal{};
};

struct Interval {
    double a = 0.0;
    double b = 1.0;
    static constexpr int dim = 1;
    static constexpr int n_components = 2;  // 0 -> {a}, 1 -> {b}
};

struct Rectangle {
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    static constexpr int dim = 2;
    // Components: 0 = left (x=x0), 1 = right (x=x1), 2 = bottom (y=y0), 3 = top (y=y1).
    static constexpr int n_components = 4;
};

struct Disk {
    Point center{0.0, 0.0};
    double radius = 1.0;
    static constexpr int dim = 2;
    static constexpr int n_components = 1;  // 0 = circle
};

using Domain = std::variant<Interval, Rectangle, Disk>;

// Hard cap used for fixed-size per-component accumulators.
inline constexpr int kMaxComponents = 4;

// --- per-variant queries (hot path uses these directly, monomorphized) ---

double signed_distance(const Interval& d, Point p);
double signed_distance(const Rectangle& d, Point p);
double signed_distance(const Disk& d, Point p);

BoundaryPoint project(const Interval& d, Point p);
BoundaryPoint project(const Rectangle& d, Point p);
BoundaryPoint project(const Disk& d, Point p);

// Perpendicular distance from p to the plane/point of one boundary component
// (half-space distance, used by the Brownian-bridge correction).
double component_distance(const Interval& d, Point p, int component);
double component_distance(const Rectangle& d, Point p, int component);
double component_distance(const Disk& d, Point p, int component);

// Nearest point of p on a given component.
BoundaryPoint project_to_component(const Interval& d, Point p, int component);
BoundaryPoint project_to_component(const Rectangle& d, Point p, int component);
BoundaryPoint project_to_component(const Disk& d, Point p, int component);

// Arc-length / edge parameter of a boundary position within its component,
// measured from the component's start (edges: lower corner; circle: angle 0).
double boundary_parameter(const Interval& d, Point pos, int component);
double boundary_parameter(const Rectangle& d, Point pos, int component);
double boundary_parameter(const Disk& d, Point pos, int component);

double component_length(const Interval& d, int component);   // counting measure: 1
double component_length(const Rectangle& d, int component);  // edge length
double component_length(const Disk& d, int component);       // 2*pi*R

// --- variant-level API ---

int dimension(const Domain& dom);
int n_components(const Domain& dom);
double diameter(const Domain& dom);

double signed_distance(const Domain& dom, Point p);
BoundaryPoint project(const Domain& dom, Point p);
double component_distance(const Domain& dom, Point p, int component);
BoundaryPoint project_to_component(const Domain& dom, Point p, int component);
double boundary_parameter(const Domain& dom, Point pos, int component);

// Total surface measure of one component: counting measure on interval
// endpoints, edge length / circumference in 2D. Throws on bad id.
double surface_measure_total(const Domain& dom, int component);

inline bool contains(const Domain& dom, Point p) { return signed_distance(dom, p) >= 0.0; }

// Throws std::invalid_argument if the variant's fields are degenerate
// (a >= b, x0 >= x1, y0 >= y1, radius <= 0, non-finite values).
void validate(const Domain& dom);

std::string describe(const Domain& dom);

}  // namespace robinmc
