// Dense linear-algebra and transform kernels shared by the solvers:
// truncated SVD, restarted GMRES, radix-2 FFT, Hermitian eigendecomposition,
// matrix exponential and Kronecker products.
#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>

namespace burgers::kernels {

using Matrix = Eigen::MatrixXd;
using MatrixC = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using VectorC = Eigen::VectorXcd;

struct SvdResult {
    Matrix u;                 // rows x k, orthonormal columns
    Vector singular_values;   // k entries, non-increasing, >= 0
    Matrix vh;                // k x cols, orthonormal rows
    double discarded_weight = 0.0;  // sum of squared dropped singular values

    int rank() const { return static_cast<int>(singular_values.size()); }
};

/// Keep k = max(1, min(chi_max, #{sigma_i > eps_cutoff * sigma_1}, rank))
/// singular triplets. eps_cutoff is relative to the largest singular value.
SvdResult truncated_svd(const Matrix& a, int chi_max, double eps_cutoff);

using LinearOperator = std::function<Vector(const Vector&)>;

struct GmresOptions {
    double tol = 1e-10;
    int restart = 30;     // capped at the system size
    int max_iter = 500;   // total inner iterations
};

struct GmresResult {
    Vector x;
    double residual_norm = 0.0;  // relative to ||b|| (absolute when ||b|| = 0)
    int iterations = 0;
    bool converged = false;
};

/// Restarted GMRES: Arnoldi with modified Gram-Schmidt, Givens-rotation
/// least squares. A zero Arnoldi norm (breakdown) returns the current
/// iterate with its achieved residual.
GmresResult gmres_solve(const LinearOperator& apply, const Vector& b,
                        const GmresOptions& options = {});

enum class FftDirection { forward, inverse };

/// Unitary-normalization radix-2 FFT (1/sqrt(N) both directions).
/// Throws on non-power-of-two length.
VectorC fft(const VectorC& v, FftDirection direction);

struct EighResult {
    Vector eigenvalues;   // ascending
    MatrixC eigenvectors; // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Throws when
/// ||H - H^dagger|| > 1e-10 * ||H||.
EighResult hermitian_eigh(const MatrixC& h);

/// exp(-i H t) via eigendecomposition; unitary for Hermitian H.
MatrixC expm_hermitian(const MatrixC& h, double t);

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                              a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
        }
    }
    return out;
}

}  // namespace burgers::kernels
