// Shared domain types for the Burgers solver benchmark: grid, fields,
// configuration, CFL policy, error metric and conservation diagnostics.
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace burgers {

struct Grid1D {
    int n_points = 0;
    double spacing = 0.0;          // 1/(N-1) on [0,1], endpoints included
    std::vector<double> coords;    // x_i = i * spacing

    bool operator==(const Grid1D& other) const { return n_points == other.n_points; }
};

/// Uniform node-centered grid on [0,1]. Throws for N < 2.
Grid1D make_grid(int n_points);

bool is_power_of_two(int n);

/// log2(n) for exact powers of two; throws otherwise.
int log2_exact(int n);

enum class IcKind { step, sine, gaussian };

IcKind ic_kind_from_string(const std::string& s);
std::string to_string(IcKind kind);

struct SimConfig {
    double viscosity = 0.01;
    double total_time = 0.1;
    double cfl_coefficient = 0.1;
    IcKind ic_kind = IcKind::step;
    double bc_left = 1.0;    // Dirichlet alpha at x=0
    double bc_right = 0.0;   // Dirichlet beta at x=1
    double step_left = 1.0;  // u_L
    double step_right = 0.0; // u_R

    void validate() const;   // throws std::invalid_argument
};

struct VelocityField {
    Grid1D grid;
    Eigen::VectorXd values;
};

struct ConservationReport {
    double mass = 0.0;      // trapezoid of u
    double momentum = 0.0;  // trapezoid of u^2 / 2
    double energy = 0.0;    // trapezoid of u^2
    double time = 0.0;
};

struct L2Error {
    double value = 0.0;
    bool absolute_fallback = false;  // set when the reference norm is zero
};

/// IC profile value at position x. Step is inclusive-left at x=0.5;
/// sine is sin(2*pi*x); gaussian is exp(-(x-0.5)^2/(2*sigma^2)), sigma=0.1.
double ic_value(IcKind kind, const SimConfig& config, double x);

VelocityField initial_condition(IcKind kind, const Grid1D& grid, const SimConfig& config);

/// dt = C * min(dx/max|u|, dx^2/nu); the advective bound is +inf when max|u|=0.
double cfl_timestep(const VelocityField& field, double viscosity, double cfl_coefficient);

/// ||pred - ref||_2 / ||ref||_2, falling back to the absolute norm when
/// ||ref||_2 = 0. Throws on mismatched grids.
L2Error relative_l2_error(const VelocityField& pred, const VelocityField& ref);

ConservationReport conservation_diagnostics(const VelocityField& field, double time);

/// Re = 1/(2*nu). Throws for nu <= 0.
double reynolds_number(double viscosity);

}  // namespace burgers
