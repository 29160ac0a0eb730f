// Classical baselines: semi-implicit finite differences solved with GMRES,
// explicit dense RK4 (doubles as the QTN equivalence oracle), a periodic
// Fourier pseudospectral stepper, and fine-grid reference generation.
#pragma once

#include "burgers/core.hpp"
#include "burgers/kernels.hpp"

namespace burgers::classical {

enum class Boundary { dirichlet, periodic };

struct StepOptions {
    Boundary boundary = Boundary::dirichlet;
    double bc_left = 0.0;
    double bc_right = 0.0;
    bool convection = true;  // disable for diffusion-only tests
    bool upwind = false;     // first-order upwind convection, default off
};

StepOptions step_options_from(const SimConfig& config);

// Finite-difference operator actions on the node values. Dirichlet mode
// zeroes the boundary rows of the diffusion stencil and uses one-sided
// first differences in the convection term; periodic mode wraps with
// sample spacing 1/N.
struct FdOperators {
    int n = 0;
    double dx = 0.0;
    Boundary boundary = Boundary::dirichlet;
    bool upwind = false;

    Eigen::VectorXd diffusion(const Eigen::VectorXd& u) const;
    Eigen::VectorXd convection(const Eigen::VectorXd& u) const;
    Eigen::MatrixXd diffusion_matrix() const;  // dense form, for MPO building
    Eigen::MatrixXd gradient_matrix() const;   // central D1 with one-sided rows
};

FdOperators make_fd_operators(int n, double dx, Boundary boundary, bool upwind = false);

struct SemiImplicitResult {
    VelocityField field;
    bool converged = true;
    double residual = 0.0;
};

/// Solves (I - nu dt L) u' = u - dt C(u) with GMRES (tol 1e-10), then
/// re-imposes the Dirichlet endpoint values.
SemiImplicitResult semi_implicit_step(const VelocityField& u, double dt, double nu,
                                      const StepOptions& options);

/// Classical RK4 on du/dt = -C(u) + nu L u; Dirichlet re-imposed after the step.
VelocityField explicit_rk4_step(const VelocityField& u, double dt, double nu,
                                const StepOptions& options);

/// Pseudospectral RK4 step on [0,1) periodic samples (x_j = j/N): wavenumbers
/// 2*pi*{0..N/2,-N/2+1..-1}, 2/3-rule dealiasing on the nonlinear term.
VelocityField spectral_step(const VelocityField& u, double dt, double nu,
                            bool convection = true);

/// Values sampled on the periodic nodes x_j = j/N (used by spectral solvers).
VelocityField initial_condition_periodic(IcKind kind, int n, const SimConfig& config);

struct RunResult {
    VelocityField field;
    int steps = 0;
    double first_dt = 0.0;
    bool converged = true;     // false when any GMRES solve failed
    double max_residual = 0.0;
};

RunResult semi_implicit_run(const SimConfig& config, int n);
RunResult rk4_run(const SimConfig& config, int n, Boundary boundary, double dt_cap);
/// Throws std::invalid_argument for the step IC (discontinuous data is
/// unsupported by the Fourier basis).
RunResult spectral_run(const SimConfig& config, int n);

/// High-resolution RK4 reference downsampled by index stride onto the target
/// nodes. The fine grid has s*(N_target-1)+1 nodes (Dirichlet) or s*N_target
/// samples (periodic), with s = N_ref/N_target rounded up to odd in Dirichlet
/// mode so the interval-count parity (and with it the discrete mass of a step
/// profile) matches the target grid.
VelocityField reference_solution(const SimConfig& config, int n_target, int n_ref = 2048,
                                 Boundary boundary = Boundary::dirichlet);

}  // namespace burgers::classical
