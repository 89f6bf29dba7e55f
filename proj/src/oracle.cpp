#include "robinmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robinmc {

std::string FdBc::to_string() const {
    if (is_dirichlet) return "dirichlet";
    if (beta == 0.0) return "neumann";
    return "robin(beta=" + std::to_string(beta) + ")";
}

namespace {

// Thomas algorithm; overwrites rhs with the solution.
void tridiag_solve(std::vector<double>& lower, std::vector<double>& diag,
                   std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t m = diag.size();
    for (std::size_t i = 1; i < m; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[m - 1] /= diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

// Coefficient rows of L = (1/2) d^2/dx^2 with ghost-node Robin closure.
// Row 0:    (L u)_0     = (u_1 - (1 + dx*beta0) u_0) / dx^2
// interior: (L u)_j     = (u_{j+1} - 2 u_j + u_{j-1}) / (2 dx^2)
// Row m-1:  (L u)_{m-1} = (u_{m-2} - (1 + dx*beta1) u_{m-1}) / dx^2
struct Lap1d {
    int m;
    double dx;
    FdBc b0, b1;

    double diag(int j) const {
        if (j == 0) return b0.is_dirichlet ? 0.0 : -(1.0 + dx * b0.beta) / (dx * dx);
        if (j == m - 1) return b1.is_dirichlet ? 0.0 : -(1.0 + dx * b1.beta) / (dx * dx);
        return -1.0 / (dx * dx);
    }
    double off(int j) const {  // coefficient of the single/els neighbours
        if (j == 0 || j == m - 1) return 1.0 / (dx * dx);
        return 1.0 / (2.0 * dx * dx);
    }
    bool pinned(int j) const {
        return (j == 0 && b0.is_dirichlet) || (j == m - 1 && b1.is_dirichlet);
    }

    // y = (I + c L) u, with pinned rows forced to zero
    void apply_shifted(double c, const std::vector<double>& u, std::vector<double>& y) const {
        for (int j = 0; j < m; ++j) {
            if (pinned(j)) {
                y[j] = 0.0;
                continue;
            }
            double lu;
            if (j == 0)
                lu = off(0) * u[1] + diag(0) * u[0];
            else if (j == m - 1)
                lu = off(m - 1) * u[m - 2] + diag(m - 1) * u[m - 1];
            else
                lu = off(j) * (u[j + 1] + u[j - 1]) + diag(j) * u[j];
            y[j] = u[j] + c * lu;
        }
    }

    // fills tridiagonal bands of (s I - c L); pinned rows become identity
    void bands_shifted(double s, double c, std::vector<double>& lo, std::vector<double>& di,
                       std::vector<double>& up) const {
        lo.assign(m, 0.0);
        di.assign(m, 0.0);
        up.assign(m, 0.0);
        for (int j = 0; j < m; ++j) {
            if (pinned(j)) {
                di[j] = 1.0;
                continue;
            }
            di[j] = s - c * diag(j);
            if (j == 0)
                up[0] = -c * off(0);
            else if (j == m - 1)
                lo[m - 1] = -c * off(m - 1);
            else {
                lo[j] = -c * off(j);
                up[j] = -c * off(j);
            }
        }
        // neighbours of pinned rows keep their coefficient; the pinned value is 0
    }
};

void check_nodes(int m) {
    if (m < 3) throw std::invalid_argument("fd solver needs m_nodes >= 3");
}

}  // namespace

double FdSolution::value_at(Point p) const {
    auto locate = [](double v, double o, double dx, int m) {
        double s = (v - o) / dx;
        int i = static_cast<int>(std::floor(s));
        i = std::clamp(i, 0, m - 2);
        double w = std::clamp(s - i, 0.0, 1.0);
        return std::pair<int, double>{i, w};
    };
    if (dim == 1) {
        auto [i, w] = locate(p.x, origin[0], spacing[0], shape[0]);
        return (1.0 - w) * values[i] + w * values[i + 1];
    }
    const int mx = shape[0];
    auto [i, wx] = locate(p.x, origin[0], spacing[0], mx);
    auto [j, wy] = locate(p.y, origin[1], spacing[1], shape[1]);
    const double v00 = values[j * mx + i], v10 = values[j * mx + i + 1];
    const double v01 = values[(j + 1) * mx + i], v11 = values[(j + 1) * mx + i + 1];
    return (1.0 - wy) * ((1.0 - wx) * v00 + wx * v10) + wy * ((1.0 - wx) * v01 + wx * v11);
}

double FdSolution::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

FdSolution fd_elliptic_1d(double alpha, FdBc b0, FdBc b1, const std::function<double(double)>& f,
                          int m_nodes, double a, double b) {
    if (!(alpha > 0.0)) throw std::invalid_argument("fd_elliptic_1d: alpha must be > 0");
    check_nodes(m_nodes);
    const double dx = (b - a) / (m_nodes - 1);
    Lap1d L{m_nodes, dx, b0, b1};

    std::vector<double> lo, di, up, rhs(m_nodes);
    L.bands_shifted(alpha, 1.0, lo, di, up);  // alpha I - L
    for (int j = 0; j < m_nodes; ++j) rhs[j] = L.pinned(j) ? 0.0 : f(a + j * dx);
    tridiag_solve(lo, di, up, rhs);

    FdSolution sol;
    sol.dim = 1;
    sol.shape = {m_nodes};
    sol.origin = {a};
    sol.spacing = {dx};
    sol.values = std::move(rhs);
    sol.bc_record = {b0.to_string(), b1.to_string()};
    return sol;
}

FdSolution fd_parabolic_1d(double t, FdBc b0, FdBc b1, const std::function<double(double)>& f_init,
                           int m_nodes, double dt, double a, double b) {
    if (t < 0.0 || !(dt > 0.0)) throw std::invalid_argument("fd_parabolic_1d: need t >= 0, dt > 0");
    check_nodes(m_nodes);
    const double dx = (b - a) / (m_nodes - 1);
    Lap1d L{m_nodes, dx, b0, b1};

    std::vector<double> u(m_nodes);
    for (int j = 0; j < m_nodes; ++j) u[j] = f_init(a + j * dx);
    // t = 0 returns the nodal initial data untouched (no Dirichlet pinning)
    if (t > 0.0) {
        for (int j = 0; j < m_nodes; ++j)
            if (L.pinned(j)) u[j] = 0.0;

        std::vector<double> lo, di, up, rhs(m_nodes);
        double elapsed = 0.0;
        const double t_tol = 1e-12 * (1.0 + t);
        while (elapsed < t - t_tol) {
            const double step = std::min(dt, t - elapsed);
            L.bands_shifted(1.0, 0.5 * step, lo, di, up);
            L.apply_shifted(0.5 * step, u, rhs);
            tridiag_solve(lo, di, up, rhs);
            u = rhs;
            elapsed += step;
        }
    }

    FdSolution sol;
    sol.dim = 1;
    sol.shape = {m_nodes};
    sol.origin = {a};
    sol.spacing = {dx};
    sol.values = std::move(u);
    sol.bc_record = {b0.to_string(), b1.to_string()};
    return sol;
}

namespace {

FdBc bc_from_measure(const RobinMeasure& measure, int component, double parameter) {
    const BetaValue bv = measure.beta_at(component, parameter);
    return bv.dirichlet ? FdBc::dirichlet() : FdBc::robin(bv.value);
}

}  // namespace

FdSolution fd_parabolic_rect(double t, const RobinMeasure& measure,
                             const std::function<double(Point)>& f_init, int mx, int my,
                             double dt) {
    if (t < 0.0 || !(dt > 0.0)) throw std::invalid_argument("fd_parabolic_rect: need t >= 0, dt > 0");
    check_nodes(mx);
    check_nodes(my);
    const auto* rect = std::get_if<Rectangle>(&measure.domain());
    if (!rect) throw std::invalid_argument("fd_parabolic_rect: measure must live on a rectangle");

    const double dx = (rect->x1 - rect->x0) / (mx - 1);
    const double dy = (rect->y1 - rect->y0) / (my - 1);

    // Per-line boundary conditions sampled from the measure (components:
    // 0 = left, 1 = right, 2 = bottom, 3 = top; edge parameter measured
    // from the lower corner).
    std::vector<FdBc> left(my), right(my), bottom(mx), top(mx);
    for (int j = 0; j < my; ++j) {
        const double s = std::min(j * dy, rect->y1 - rect->y0);
        left[j] = bc_from_measure(measure, 0, s);
        right[j] = bc_from_measure(measure, 1, s);
    }
    for (int i = 0; i < mx; ++i) {
        const double s = std::min(i * dx, rect->x1 - rect->x0);
        bottom[i] = bc_from_measure(measure, 2, s);
        top[i] = bc_from_measure(measure, 3, s);
    }

    std::vector<double> u(static_cast<std::size_t>(mx) * my);
    for (int j = 0; j < my; ++j)
        for (int i = 0; i < mx; ++i)
            u[static_cast<std::size_t>(j) * mx + i] = f_init({rect->x0 + i * dx, rect->y0 + j * dy});

    auto pinned = [&](int i, int j) {
        return (i == 0 && left[j].is_dirichlet) || (i == mx - 1 && right[j].is_dirichlet) ||
               (j == 0 && bottom[i].is_dirichlet) || (j == my - 1 && top[i].is_dirichlet);
    };

    if (t > 0.0) {
        for (int j = 0; j < my; ++j)
            for (int i = 0; i < mx; ++i)
                if (pinned(i, j)) u[static_cast<std::size_t>(j) * mx + i] = 0.0;

        std::vector<double> ustar(u.size());
        std::vector<double> lo, di, up, rhs, line;
        double elapsed = 0.0;
        const double t_tol = 1e-12 * (1.0 + t);
        while (elapsed < t - t_tol) {
            const double step = std::min(dt, t - elapsed);
            const double c = 0.5 * step;

            // sweep 1: (I - c Lx) u* = (I + c Ly) u, line by line in y
            for (int j = 0; j < my; ++j) {
                Lap1d Lx{mx, dx, left[j], right[j]};
                rhs.assign(mx, 0.0);
                for (int i = 0; i < mx; ++i) {
                    if (pinned(i, j)) continue;
                    // (I + c Ly) at column i
                    Lap1d Ly{my, dy, bottom[i], top[i]};
                    const std::size_t idx = static_cast<std::size_t>(j) * mx + i;
                    double lyu;
                    if (j == 0)
                        lyu = Ly.off(0) * u[idx + mx] + Ly.diag(0) * u[idx];
                    else if (j == my - 1)
                        lyu = Ly.off(my - 1) * u[idx - mx] + Ly.diag(my - 1) * u[idx];
                    else
                        lyu = Ly.off(j) * (u[idx + mx] + u[idx - mx]) + Ly.diag(j) * u[idx];
                    rhs[i] = u[idx] + c * lyu;
                }
                Lx.bands_shifted(1.0, c, lo, di, up);
                for (int i = 0; i < mx; ++i)
                    if (pinned(i, j)) {
                        lo[i] = up[i] = 0.0;
                        di[i] = 1.0;
                        rhs[i] = 0.0;
                    }
                tridiag_solve(lo, di, up, rhs);
                for (int i = 0; i < mx; ++i) ustar[static_cast<std::size_t>(j) * mx + i] = rhs[i];
            }

            // sweep 2: (I - c Ly) u' = (I + c Lx) u*, line by line in x
            for (int i = 0; i < mx; ++i) {
                Lap1d Ly{my, dy, bottom[i], top[i]};
                rhs.assign(my, 0.0);
                for (int j = 0; j < my; ++j) {
                    if (pinned(i, j)) continue;
                    Lap1d Lx{mx, dx, left[j], right[j]};
                    const std::size_t idx = static_cast<std::size_t>(j) * mx + i;
                    double lxu;
                    if (i == 0)
                        lxu = Lx.off(0) * ustar[idx + 1] + Lx.diag(0) * ustar[idx];
                    else if (i == mx - 1)
                        lxu = Lx.off(mx - 1) * ustar[idx - 1] + Lx.diag(mx - 1) * ustar[idx];
                    else
                        lxu = Lx.off(i) * (ustar[idx + 1] + ustar[idx - 1]) + Lx.diag(i) * ustar[idx];
                    rhs[j] = ustar[idx] + c * lxu;
                }
                Ly.bands_shifted(1.0, c, lo, di, up);
                for (int j = 0; j < my; ++j)
                    if (pinned(i, j)) {
                        lo[j] = up[j] = 0.0;
                        di[j] = 1.0;
                        rhs[j] = 0.0;
                    }
                tridiag_solve(lo, di, up, rhs);
                for (int j = 0; j < my; ++j) u[static_cast<std::size_t>(j) * mx + i] = rhs[j];
            }
            elapsed += step;
        }
    }

    FdSolution sol;
    sol.dim = 2;
    sol.shape = {mx, my};
    sol.origin = {rect->x0, rect->y0};
    sol.spacing = {dx, dy};
    sol.values = std::move(u);
    sol.bc_record = {bc_from_measure(measure, 0, 0.0).to_string(),
                     bc_from_measure(measure, 1, 0.0).to_string(),
                     bc_from_measure(measure, 2, 0.0).to_string(),
                     bc_from_measure(measure, 3, 0.0).to_string()};
    return sol;
}

FdSolution disk_radial_elliptic(double alpha, FdBc bc, const std::function<double(double)>& f_radial,
                                int m_nodes, double R) {
    if (!(alpha > 0.0)) throw std::invalid_argument("disk_radial_elliptic: alpha must be > 0");
    check_nodes(m_nodes);
    const double dr = R / (m_nodes - 1);
    const int m = m_nodes;

    std::vector<double> lo(m, 0.0), di(m, 0.0), up(m, 0.0), rhs(m, 0.0);
    // r = 0: lap(u) = 2 u''(0), ghost u_{-1} = u_1
    di[0] = alpha + 2.0 / (dr * dr);
    up[0] = -2.0 / (dr * dr);
    rhs[0] = f_radial(0.0);
    for (int j = 1; j < m - 1; ++j) {
        const double r = j * dr;
        lo[j] = -0.5 * (1.0 / (dr * dr) - 1.0 / (2.0 * dr * r));
        di[j] = alpha + 1.0 / (dr * dr);
        up[j] = -0.5 * (1.0 / (dr * dr) + 1.0 / (2.0 * dr * r));
        rhs[j] = f_radial(r);
    }
    if (bc.is_dirichlet) {
        di[m - 1] = 1.0;
        rhs[m - 1] = 0.0;
    } else {
        // ghost u_m = u_{m-2} - 2 dr beta u_{m-1}
        di[m - 1] = alpha + (1.0 + dr * bc.beta) / (dr * dr) + bc.beta / (2.0 * R);
        lo[m - 1] = -1.0 / (dr * dr);
        rhs[m - 1] = f_radial(R);
    }
    tridiag_solve(lo, di, up, rhs);

    FdSolution sol;
    sol.dim = 1;
    sol.shape = {m};
    sol.origin = {0.0};
    sol.spacing = {dr};
    sol.values = std::move(rhs);
    sol.bc_record = {"regular-center", bc.to_string()};
    return sol;
}

double max_norm_diff(const FdSolution& a, const FdSolution& b) {
    if (a.convention != b.convention)
        throw std::invalid_argument("max_norm_diff: convention tags differ");
    if (a.shape != b.shape || a.values.size() != b.values.size())
        throw std::invalid_argument("max_norm_diff: grids differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

namespace {

FdBc endpoint_bc(const RobinMeasure& mu, int component) {
    const BetaValue bv = mu.beta_at(component, 0.0);
    return bv.dirichlet ? FdBc::dirichlet() : FdBc::robin(bv.value);
}

}  // namespace

double semigroup_oracle_value(const Domain& dom, const RobinMeasure& mu,
                              const std::function<double(Point)>& f, double t, Point x, int m,
                              double dt) {
    if (const auto* iv = std::get_if<Interval>(&dom)) {
        auto f1 = [&](double xx) { return f({xx, 0.0}); };
        return fd_parabolic_1d(t, endpoint_bc(mu, 0), endpoint_bc(mu, 1), f1, m, dt, iv->a, iv->b)
            .value_at(x);
    }
    if (std::get_if<Rectangle>(&dom)) return fd_parabolic_rect(t, mu, f, m, m, dt).value_at(x);
    throw std::invalid_argument("no parabolic oracle for this domain variant");
}

double resolvent_oracle_value(const Domain& dom, const RobinMeasure& mu,
                              const std::function<double(Point)>& f, double alpha, Point x, int m) {
    if (const auto* iv = std::get_if<Interval>(&dom)) {
        auto f1 = [&](double xx) { return f({xx, 0.0}); };
        return fd_elliptic_1d(alpha, endpoint_bc(mu, 0), endpoint_bc(mu, 1), f1, m, iv->a, iv->b)
            .value_at(x);
    }
    if (const auto* disk = std::get_if<Disk>(&dom)) {
        const ComponentBc& bc = mu.component(0);
        if (bc.kind == BcKind::robin && !bc.beta.is_constant())
            throw std::invalid_argument("disk oracle needs a constant beta");
        auto fr = [&](double r) { return f({disk->center.x + r, disk->center.y}); };
        const FdBc edge = endpoint_bc(mu, 0);
        const double r_query = norm(x - disk->center);
        return disk_radial_elliptic(alpha, edge, fr, m, disk->radius).value_at({r_query, 0.0});
    }
    throw std::invalid_argument("no elliptic oracle for this domain variant");
}

double dirichlet_heat_series_interval(double t, double x, double a, double b) {
    const double L = b - a;
    const double xi = (x - a) / L;
    double sum = 0.0;
    for (int k = 1; k < 4001; k += 2) {
        const double lam = 0.5 * k * k * M_PI * M_PI * t / (L * L);
        const double term = (4.0 / (k * M_PI)) * std::sin(k * M_PI * xi) * std::exp(-lam);
        sum += term;
        if (lam > 40.0) break;  // exp underflow: tail is zero
    }
    return sum;
}

double dirichlet_elliptic_interval_exact(double alpha, double x) {
    const double k = std::sqrt(2.0 * alpha);
    return (1.0 - std::cosh(k * (x - 0.5)) / std::cosh(0.5 * k)) / alpha;
}

double dirichlet_elliptic_disk_center(double alpha, double R) {
    const double k = std::sqrt(2.0 * alpha);
    return (1.0 - 1.0 / std::cyl_bessel_i(0.0, k * R)) / alpha;
}

}  // namespace robinmc
