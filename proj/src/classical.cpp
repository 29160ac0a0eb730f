#include "burgers/classical.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace burgers::classical {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

StepOptions step_options_from(const SimConfig& config) {
    StepOptions o;
    o.bc_left = config.bc_left;
    o.bc_right = config.bc_right;
    return o;
}

FdOperators make_fd_operators(int n, double dx, Boundary boundary, bool upwind) {
    if (n < 2) throw std::invalid_argument("make_fd_operators: need n >= 2");
    if (!(dx > 0.0)) throw std::invalid_argument("make_fd_operators: dx must be > 0");
    FdOperators ops;
    ops.n = n;
    ops.dx = dx;
    ops.boundary = boundary;
    ops.upwind = upwind;
    return ops;
}

VectorXd FdOperators::diffusion(const VectorXd& u) const {
    VectorXd out = VectorXd::Zero(n);
    const double inv = 1.0 / (dx * dx);
    for (int i = 1; i < n - 1; ++i) out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv;
    if (boundary == Boundary::periodic) {
        out[0] = (u[n - 1] - 2.0 * u[0] + u[1]) * inv;
        out[n - 1] = (u[n - 2] - 2.0 * u[n - 1] + u[0]) * inv;
    }
    // Dirichlet rows stay zero
    return out;
}

VectorXd FdOperators::convection(const VectorXd& u) const {
    VectorXd grad = VectorXd::Zero(n);
    if (upwind) {
        for (int i = 0; i < n; ++i) {
            const int im = i > 0 ? i - 1 : (boundary == Boundary::periodic ? n - 1 : 0);
            const int ip = i < n - 1 ? i + 1 : (boundary == Boundary::periodic ? 0 : n - 1);
            grad[i] = u[i] >= 0.0 ? (u[i] - u[im]) / dx : (u[ip] - u[i]) / dx;
        }
        if (boundary != Boundary::periodic) {
            grad[0] = (u[1] - u[0]) / dx;
            grad[n - 1] = (u[n - 1] - u[n - 2]) / dx;
        }
    } else {
        const double inv2 = 1.0 / (2.0 * dx);
        for (int i = 1; i < n - 1; ++i) grad[i] = (u[i + 1] - u[i - 1]) * inv2;
        if (boundary == Boundary::periodic) {
            grad[0] = (u[1] - u[n - 1]) * inv2;
            grad[n - 1] = (u[0] - u[n - 2]) * inv2;
        } else {
            grad[0] = (u[1] - u[0]) / dx;
            grad[n - 1] = (u[n - 1] - u[n - 2]) / dx;
        }
    }
    return u.cwiseProduct(grad);
}

MatrixXd FdOperators::diffusion_matrix() const {
    MatrixXd m = MatrixXd::Zero(n, n);
    const double inv = 1.0 / (dx * dx);
    for (int i = 1; i < n - 1; ++i) {
        m(i, i - 1) = inv;
        m(i, i) = -2.0 * inv;
        m(i, i + 1) = inv;
    }
    if (boundary == Boundary::periodic) {
        m(0, n - 1) = inv;
        m(0, 0) = -2.0 * inv;
        m(0, 1) = inv;
        m(n - 1, n - 2) = inv;
        m(n - 1, n - 1) = -2.0 * inv;
        m(n - 1, 0) = inv;
    }
    return m;
}

MatrixXd FdOperators::gradient_matrix() const {
    MatrixXd m = MatrixXd::Zero(n, n);
    const double inv2 = 1.0 / (2.0 * dx);
    for (int i = 1; i < n - 1; ++i) {
        m(i, i - 1) = -inv2;
        m(i, i + 1) = inv2;
    }
    if (boundary == Boundary::periodic) {
        m(0, n - 1) = -inv2;
        m(0, 1) = inv2;
        m(n - 1, n - 2) = -inv2;
        m(n - 1, 0) = inv2;
    } else {
        m(0, 0) = -1.0 / dx;
        m(0, 1) = 1.0 / dx;
        m(n - 1, n - 2) = -1.0 / dx;
        m(n - 1, n - 1) = 1.0 / dx;
    }
    return m;
}

namespace {

double periodic_dx(int n) { return 1.0 / n; }

double cfl_dt(double dx, double umax, double nu, double c) {
    const double adv = umax > 0.0 ? dx / umax : std::numeric_limits<double>::infinity();
    return c * std::min(adv, dx * dx / nu);
}

VectorXd fd_rhs(const FdOperators& ops, const VectorXd& u, double nu, bool convection) {
    VectorXd r = nu * ops.diffusion(u);
    if (convection) r -= ops.convection(u);
    return r;
}

}  // namespace

SemiImplicitResult semi_implicit_step(const VelocityField& u, double dt, double nu,
                                      const StepOptions& options) {
    if (!(dt > 0.0)) throw std::invalid_argument("semi_implicit_step: dt must be > 0");
    const int n = u.grid.n_points;
    const double dx = options.boundary == Boundary::periodic ? periodic_dx(n) : u.grid.spacing;
    const FdOperators ops = make_fd_operators(n, dx, options.boundary, options.upwind);

    VectorXd rhs = u.values;
    if (options.convection) rhs -= dt * ops.convection(u.values);

    const auto apply = [&](const VectorXd& x) -> VectorXd {
        return x - nu * dt * ops.diffusion(x);
    };
    kernels::GmresOptions gopt;
    gopt.tol = 1e-10;
    gopt.restart = std::min(30, n);
    gopt.max_iter = 500;
    const kernels::GmresResult sol = kernels::gmres_solve(apply, rhs, gopt);

    SemiImplicitResult result;
    result.field.grid = u.grid;
    result.field.values = sol.x;
    result.converged = sol.converged;
    result.residual = sol.residual_norm;
    if (options.boundary == Boundary::dirichlet) {
        result.field.values[0] = options.bc_left;
        result.field.values[n - 1] = options.bc_right;
    }
    return result;
}

VelocityField explicit_rk4_step(const VelocityField& u, double dt, double nu,
                                const StepOptions& options) {
    const int n = u.grid.n_points;
    const double dx = options.boundary == Boundary::periodic ? periodic_dx(n) : u.grid.spacing;
    const FdOperators ops = make_fd_operators(n, dx, options.boundary, options.upwind);

    const VectorXd& v = u.values;
    const VectorXd k1 = fd_rhs(ops, v, nu, options.convection);
    const VectorXd k2 = fd_rhs(ops, v + 0.5 * dt * k1, nu, options.convection);
    const VectorXd k3 = fd_rhs(ops, v + 0.5 * dt * k2, nu, options.convection);
    const VectorXd k4 = fd_rhs(ops, v + dt * k3, nu, options.convection);

    VelocityField out;
    out.grid = u.grid;
    out.values = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.values.allFinite()) {
        throw std::runtime_error("explicit_rk4_step: non-finite intermediate state");
    }
    if (options.boundary == Boundary::dirichlet) {
        out.values[0] = options.bc_left;
        out.values[n - 1] = options.bc_right;
    }
    return out;
}

VelocityField spectral_step(const VelocityField& u, double dt, double nu, bool convection) {
    const int n = u.grid.n_points;
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("spectral_step: N must be a power of two");
    }
    VectorXd k(n);
    for (int m = 0; m < n; ++m) k[m] = 2.0 * M_PI * (m <= n / 2 ? m : m - n);
    const int kmax = n / 3;  // 2/3 rule

    const auto rhs = [&](const VectorXd& v) -> VectorXd {
        VectorXcd vh = kernels::fft(v.cast<std::complex<double>>(), kernels::FftDirection::forward);
        VectorXcd diff(n);
        for (int m = 0; m < n; ++m) diff[m] = -k[m] * k[m] * vh[m];
        VectorXd out =
            nu * kernels::fft(diff, kernels::FftDirection::inverse).real();
        if (convection) {
            VectorXcd dv(n);
            for (int m = 0; m < n; ++m) dv[m] = std::complex<double>(0.0, k[m]) * vh[m];
            const VectorXd ux = kernels::fft(dv, kernels::FftDirection::inverse).real();
            VectorXd w = v.cwiseProduct(ux);
            VectorXcd wh =
                kernels::fft(w.cast<std::complex<double>>(), kernels::FftDirection::forward);
            for (int m = 0; m < n; ++m) {
                const int ms = m <= n / 2 ? m : m - n;
                if (std::abs(ms) > kmax) wh[m] = 0.0;
            }
            out -= kernels::fft(wh, kernels::FftDirection::inverse).real();
        }
        return out;
    };

    const VectorXd& v = u.values;
    const VectorXd k1 = rhs(v);
    const VectorXd k2 = rhs(v + 0.5 * dt * k1);
    const VectorXd k3 = rhs(v + 0.5 * dt * k2);
    const VectorXd k4 = rhs(v + dt * k3);

    VelocityField out;
    out.grid = u.grid;
    out.values = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return out;
}

VelocityField initial_condition_periodic(IcKind kind, int n, const SimConfig& config) {
    VelocityField f;
    f.grid = make_grid(n);
    f.values.resize(n);
    for (int i = 0; i < n; ++i) f.values[i] = ic_value(kind, config, static_cast<double>(i) / n);
    return f;
}

RunResult semi_implicit_run(const SimConfig& config, int n) {
    config.validate();
    const Grid1D grid = make_grid(n);
    VelocityField u = initial_condition(config.ic_kind, grid, config);
    StepOptions opts = step_options_from(config);

    RunResult r;
    double t = 0.0;
    const double T = config.total_time;
    while (t < T * (1.0 - 1e-12)) {
        double dt = cfl_timestep(u, config.viscosity, config.cfl_coefficient);
        dt = std::min(dt, T - t);
        if (r.steps == 0) r.first_dt = dt;
        SemiImplicitResult s = semi_implicit_step(u, dt, config.viscosity, opts);
        if (!s.converged) r.converged = false;
        r.max_residual = std::max(r.max_residual, s.residual);
        u = std::move(s.field);
        t += dt;
        ++r.steps;
    }
    r.field = std::move(u);
    return r;
}

RunResult rk4_run(const SimConfig& config, int n, Boundary boundary, double dt_cap) {
    config.validate();
    RunResult r;
    VelocityField u;
    double dx;
    if (boundary == Boundary::periodic) {
        u = initial_condition_periodic(config.ic_kind, n, config);
        dx = periodic_dx(n);
    } else {
        u = initial_condition(config.ic_kind, make_grid(n), config);
        dx = u.grid.spacing;
    }
    StepOptions opts = step_options_from(config);
    opts.boundary = boundary;

    double t = 0.0;
    const double T = config.total_time;
    while (t < T * (1.0 - 1e-12)) {
        const double umax = u.values.cwiseAbs().maxCoeff();
        double dt = cfl_dt(dx, umax, config.viscosity, config.cfl_coefficient);
        if (dt_cap > 0.0) dt = std::min(dt, dt_cap);
        dt = std::min(dt, T - t);
        if (r.steps == 0) r.first_dt = dt;
        u = explicit_rk4_step(u, dt, config.viscosity, opts);
        t += dt;
        ++r.steps;
    }
    r.field = std::move(u);
    return r;
}

RunResult spectral_run(const SimConfig& config, int n) {
    config.validate();
    if (config.ic_kind == IcKind::step) {
        throw std::invalid_argument(
            "spectral_run: step initial condition is unsupported (discontinuous data "
            "is Gibbs-dominated in the Fourier basis)");
    }
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("spectral_run: N must be a power of two");
    }
    VelocityField u = initial_condition_periodic(config.ic_kind, n, config);
    const double dx = periodic_dx(n);

    RunResult r;
    double t = 0.0;
    const double T = config.total_time;
    while (t < T * (1.0 - 1e-12)) {
        const double umax = u.values.cwiseAbs().maxCoeff();
        double dt = cfl_dt(dx, umax, config.viscosity, config.cfl_coefficient);
        dt = std::min(dt, T - t);
        if (r.steps == 0) r.first_dt = dt;
        u = spectral_step(u, dt, config.viscosity);
        t += dt;
        ++r.steps;
    }
    r.field = std::move(u);
    return r;
}

VelocityField reference_solution(const SimConfig& config, int n_target, int n_ref,
                                 Boundary boundary) {
    if (n_target < 2) throw std::invalid_argument("reference_solution: n_target < 2");
    int stride = std::max(1, n_ref / n_target);

    if (boundary == Boundary::periodic) {
        const int fine_n = stride * n_target;
        SimConfig fine = config;
        RunResult run = rk4_run(fine, fine_n, Boundary::periodic, 0.0);
        VelocityField out;
        out.grid = make_grid(n_target);
        out.values.resize(n_target);
        for (int i = 0; i < n_target; ++i) out.values[i] = run.field.values[i * stride];
        return out;
    }

    if (stride % 2 == 0) ++stride;  // parity: keep the interval count odd
    const int fine_n = stride * (n_target - 1) + 1;
    RunResult run = rk4_run(config, fine_n, Boundary::dirichlet, 0.0);
    VelocityField out;
    out.grid = make_grid(n_target);
    out.values.resize(n_target);
    for (int i = 0; i < n_target; ++i) out.values[i] = run.field.values[i * stride];
    return out;
}

}  // namespace burgers::classical
