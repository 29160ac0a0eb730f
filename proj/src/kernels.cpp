#include "burgers/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace burgers::kernels {

SvdResult truncated_svd(const Matrix& a, int chi_max, double eps_cutoff) {
    if (!a.allFinite()) throw std::invalid_argument("truncated_svd: non-finite input");
    if (chi_max < 1) throw std::invalid_argument("truncated_svd: chi_max must be >= 1");
    if (eps_cutoff < 0.0) throw std::invalid_argument("truncated_svd: eps_cutoff must be >= 0");

    const Eigen::Index small = std::min(a.rows(), a.cols());
    Matrix u;
    Vector sigma;
    Matrix v;
    if (small <= 16) {
        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u = svd.matrixU();
        sigma = svd.singularValues();
        v = svd.matrixV();
    } else {
        Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u = svd.matrixU();
        sigma = svd.singularValues();
        v = svd.matrixV();
    }

    const double s0 = sigma.size() > 0 ? sigma[0] : 0.0;
    const double threshold = eps_cutoff > 0.0 ? eps_cutoff * s0 : 0.0;
    int keep = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > threshold) ++keep;
    }
    int k = std::max(1, std::min<int>(chi_max, keep));
    k = std::min<int>(k, static_cast<int>(sigma.size()));

    SvdResult r;
    r.u = u.leftCols(k);
    r.singular_values = sigma.head(k);
    r.vh = v.leftCols(k).transpose();
    r.discarded_weight = sigma.tail(sigma.size() - k).squaredNorm();
    return r;
}

GmresResult gmres_solve(const LinearOperator& apply, const Vector& b,
                        const GmresOptions& options) {
    const int n = static_cast<int>(b.size());
    if (n == 0) throw std::invalid_argument("gmres_solve: empty right-hand side");
    if (!(options.tol > 0.0)) throw std::invalid_argument("gmres_solve: tol must be > 0");

    const double bnorm = b.norm();
    GmresResult result;
    result.x = Vector::Zero(n);
    if (bnorm == 0.0) {
        result.converged = true;
        return result;
    }

    const int m = std::max(1, std::min(options.restart, n));
    Vector x = Vector::Zero(n);
    int total_iters = 0;
    double rel_res = 1.0;

    while (total_iters < options.max_iter) {
        Vector r = b - apply(x);
        double beta = r.norm();
        rel_res = beta / bnorm;
        if (rel_res <= options.tol) break;

        Matrix v(n, m + 1);
        Matrix h = Matrix::Zero(m + 1, m);
        Vector cs = Vector::Zero(m);
        Vector sn = Vector::Zero(m);
        Vector g = Vector::Zero(m + 1);
        v.col(0) = r / beta;
        g[0] = beta;

        int j = 0;
        bool breakdown = false;
        bool stop = false;
        while (j < m && total_iters < options.max_iter && !stop) {
            Vector w = apply(v.col(j));
            for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
                h(i, j) = v.col(i).dot(w);
                w -= h(i, j) * v.col(i);
            }
            const double arnoldi_norm = w.norm();
            h(j + 1, j) = arnoldi_norm;

            // previous Givens rotations
            for (int i = 0; i < j; ++i) {
                const double t1 = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
                const double t2 = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
                h(i, j) = t1;
                h(i + 1, j) = t2;
            }
            const double denom = std::hypot(h(j, j), h(j + 1, j));
            if (denom == 0.0) {  // column annihilated: true breakdown
                breakdown = true;
                ++total_iters;
                break;
            }
            cs[j] = h(j, j) / denom;
            sn[j] = h(j + 1, j) / denom;
            h(j, j) = denom;
            h(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            rel_res = std::abs(g[j + 1]) / bnorm;
            ++j;
            ++total_iters;
            if (rel_res <= options.tol) {
                stop = true;
            } else if (arnoldi_norm == 0.0) {
                // happy breakdown: Krylov space is invariant, solve and leave
                breakdown = true;
                stop = true;
            } else if (j < m) {
                v.col(j) = w / arnoldi_norm;
            }
        }

        if (j > 0) {
            // back-substitute the j x j triangular system
            Vector y(j);
            for (int i = j - 1; i >= 0; --i) {
                double s = g[i];
                for (int l = i + 1; l < j; ++l) s -= h(i, l) * y[l];
                y[i] = s / h(i, i);
            }
            x += v.leftCols(j) * y;
        }
        rel_res = (b - apply(x)).norm() / bnorm;
        if (rel_res <= options.tol || breakdown) break;
    }

    result.x = x;
    result.residual_norm = rel_res;
    result.iterations = total_iters;
    result.converged = rel_res <= options.tol;
    return result;
}

VectorC fft(const VectorC& v, FftDirection direction) {
    const int n = static_cast<int>(v.size());
    if (n <= 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("fft: length must be a power of two, got " +
                                    std::to_string(n));
    }
    VectorC a = v;
    // bit reversal
    for (int i = 1, rev = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; rev & bit; bit >>= 1) rev ^= bit;
        rev ^= bit;
        if (i < rev) std::swap(a[i], a[rev]);
    }
    const double sign = direction == FftDirection::forward ? -1.0 : 1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * M_PI / len;
        const std::complex<double> wl(std::cos(angle), std::sin(angle));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> even = a[i + k];
                const std::complex<double> odd = a[i + k + len / 2] * w;
                a[i + k] = even + odd;
                a[i + k + len / 2] = even - odd;
                w *= wl;
            }
        }
    }
    a /= std::sqrt(static_cast<double>(n));
    return a;
}

EighResult hermitian_eigh(const MatrixC& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigh: matrix not square");
    const double scale = h.norm();
    const double dev = (h - h.adjoint()).norm();
    if (scale > 0.0 && dev > 1e-10 * scale) {
        throw std::invalid_argument("hermitian_eigh: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eigh: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

MatrixC expm_hermitian(const MatrixC& h, double t) {
    const EighResult e = hermitian_eigh(h);
    VectorC phases(e.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases[i] = std::exp(std::complex<double>(0.0, -e.eigenvalues[i] * t));
    }
    return e.eigenvectors * phases.asDiagonal() * e.eigenvectors.adjoint();
}

}  // namespace burgers::kernels
