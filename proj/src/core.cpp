#include "burgers/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace burgers {

Grid1D make_grid(int n_points) {
    if (n_points < 2) {
        throw std::invalid_argument("make_grid: need at least 2 points, got " +
                                    std::to_string(n_points));
    }
    Grid1D g;
    g.n_points = n_points;
    g.spacing = 1.0 / (n_points - 1);
    g.coords.resize(n_points);
    for (int i = 0; i < n_points; ++i) g.coords[i] = i * g.spacing;
    g.coords.front() = 0.0;
    g.coords.back() = 1.0;
    return g;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("log2_exact: " + std::to_string(n) +
                                    " is not a power of two");
    }
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

IcKind ic_kind_from_string(const std::string& s) {
    if (s == "step") return IcKind::step;
    if (s == "sine") return IcKind::sine;
    if (s == "gaussian") return IcKind::gaussian;
    throw std::invalid_argument("unknown initial condition kind: " + s);
}

std::string to_string(IcKind kind) {
    switch (kind) {
        case IcKind::step: return "step";
        case IcKind::sine: return "sine";
        case IcKind::gaussian: return "gaussian";
    }
    return "?";
}

void SimConfig::validate() const {
    if (!(viscosity > 0.0)) throw std::invalid_argument("SimConfig: viscosity must be > 0");
    if (!(total_time > 0.0)) throw std::invalid_argument("SimConfig: total_time must be > 0");
    if (!(cfl_coefficient > 0.0 && cfl_coefficient <= 1.0)) {
        throw std::invalid_argument("SimConfig: cfl_coefficient must be in (0, 1]");
    }
}

double ic_value(IcKind kind, const SimConfig& config, double x) {
    switch (kind) {
        case IcKind::step:
            return x <= 0.5 ? config.step_left : config.step_right;
        case IcKind::sine:
            return std::sin(2.0 * M_PI * x);
        case IcKind::gaussian: {
            const double sigma = 0.1;
            const double d = x - 0.5;
            return std::exp(-d * d / (2.0 * sigma * sigma));
        }
    }
    throw std::invalid_argument("ic_value: unknown kind");
}

VelocityField initial_condition(IcKind kind, const Grid1D& grid, const SimConfig& config) {
    VelocityField f;
    f.grid = grid;
    f.values.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) f.values[i] = ic_value(kind, config, grid.coords[i]);
    return f;
}

double cfl_timestep(const VelocityField& field, double viscosity, double cfl_coefficient) {
    const double dx = field.grid.spacing;
    const double umax = field.values.size() > 0 ? field.values.cwiseAbs().maxCoeff() : 0.0;
    const double advective =
        umax > 0.0 ? dx / umax : std::numeric_limits<double>::infinity();
    const double diffusive = dx * dx / viscosity;
    return cfl_coefficient * std::min(advective, diffusive);
}

L2Error relative_l2_error(const VelocityField& pred, const VelocityField& ref) {
    if (!(pred.grid == ref.grid) || pred.values.size() != ref.values.size()) {
        throw std::invalid_argument("relative_l2_error: mismatched grids");
    }
    const double num = (pred.values - ref.values).norm();
    const double den = ref.values.norm();
    if (den == 0.0) return {pred.values.norm(), true};
    return {num / den, false};
}

ConservationReport conservation_diagnostics(const VelocityField& field, double time) {
    const auto& u = field.values;
    const int n = static_cast<int>(u.size());
    const double dx = field.grid.spacing;
    double m = 0.0, p = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        m += w * u[i];
        p += w * u[i] * u[i];
    }
    ConservationReport r;
    r.mass = m * dx;
    r.momentum = 0.5 * p * dx;
    r.energy = p * dx;
    r.time = time;
    return r;
}

double reynolds_number(double viscosity) {
    if (!(viscosity > 0.0)) throw std::invalid_argument("reynolds_number: nu must be > 0");
    return 1.0 / (2.0 * viscosity);
}

}  // namespace burgers
