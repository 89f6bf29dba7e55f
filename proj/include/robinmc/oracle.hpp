#pragma once

#include <functional>
#include <string>
#include <vector>

#include "robinmc/boundary.hpp"
#include "robinmc/geometry.hpp"

namespace robinmc {

// Boundary condition for one endpoint/edge of an FD solve.
struct FdBc {
    bool is_dirichlet = false;
    double beta = 0.0;  // Robin rate; 0 = Neumann

    static FdBc neumann() { return {false, 0.0}; }
    static FdBc robin(double b) { return {false, b}; }
    static FdBc dirichlet() { return {true, 0.0}; }
    std::string to_string() const;
};

// Finite-difference solution on a uniform grid. All solvers discretize
// the half-Laplacian convention: alpha*u - (1/2)lap(u) = f (elliptic) or
// du/dt = (1/2)lap(u) (parabolic), with the Robin closure
// du/dn_outward + beta*u = 0 applied through ghost nodes (second order).
struct FdSolution {
    int dim = 1;
    std::vector<int> shape;        // {m} or {mx, my}
    std::vector<double> origin;    // {a} or {x0, y0}
    std::vector<double> spacing;   // {dx} or {dx, dy}
    std::vector<double> values;    // row-major for 2d: values[j*mx + i]
    std::string convention = "half-laplacian";
    std::vector<std::string> bc_record;

    // linear (1d) / bilinear (2d) interpolation; radial solutions are
    // dim == 1 grids in r queried via p.x
    double value_at(Point p) const;
    double max_abs() const;
};

// alpha*u - u''/2 = f on (a,b), u'(a) = beta0*u(a), -u'(b) = beta1*u(b).
FdSolution fd_elliptic_1d(double alpha, FdBc b0, FdBc b1, const std::function<double(double)>& f,
                          int m_nodes, double a = 0.0, double b = 1.0);

// Crank-Nicolson for du/dt = u''/2 with the same closures; returns u(t,.).
FdSolution fd_parabolic_1d(double t, FdBc b0, FdBc b1, const std::function<double(double)>& f_init,
                           int m_nodes, double dt, double a = 0.0, double b = 1.0);

// Peaceman-Rachford ADI (tridiagonal sweeps per direction, second order)
// for du/dt = lap(u)/2 on the measure's rectangle. Edge conditions come
// from the measure; piecewise beta profiles are sampled at boundary nodes.
FdSolution fd_parabolic_rect(double t, const RobinMeasure& measure,
                             const std::function<double(Point)>& f_init, int mx, int my, double dt);

// Radially symmetric disk problem alpha*u - (u'' + u'/r)/2 = f on (0,R)
// with regularity u'(0) = 0 and -u'(R) = beta*u(R).
FdSolution disk_radial_elliptic(double alpha, FdBc bc, const std::function<double(double)>& f_radial,
                                int m_nodes, double R = 1.0);

// max-norm difference on matched grids; throws on shape/convention mismatch
double max_norm_diff(const FdSolution& a, const FdSolution& b);

// FD reference for the semigroup mean  E_x[f(X_t) e^{-A_t}] on interval
// and rectangle domains; throws for domains without a parabolic oracle.
double semigroup_oracle_value(const Domain& dom, const RobinMeasure& mu,
                              const std::function<double(Point)>& f, double t, Point x, int m,
                              double dt);

// FD reference for the resolvent on the interval (any measure) and on the
// disk (constant beta, radial f); throws otherwise.
double resolvent_oracle_value(const Domain& dom, const RobinMeasure& mu,
                              const std::function<double(Point)>& f, double alpha, Point x, int m);

// --- closed forms (ground truth for the solvers themselves) ---

// u(t,x) for du/dt = u''/2, u(0,.) = 1, u = 0 at both ends of (a,b):
// sum over odd k of (4/(k*pi)) sin(k*pi*(x-a)/L) exp(-k^2 pi^2 t / (2 L^2)).
double dirichlet_heat_series_interval(double t, double x, double a = 0.0, double b = 1.0);

// u(x) solving alpha*u - u''/2 = 1 on (0,1), u(0) = u(1) = 0.
double dirichlet_elliptic_interval_exact(double alpha, double x);

// u(0) solving alpha*u - lap(u)/2 = 1 on the disk of radius R, u = 0 on
// the circle: (1/alpha)(1 - 1/I0(sqrt(2 alpha) R)).
double dirichlet_elliptic_disk_center(double alpha, double R = 1.0);

}  // namespace robinmc
