// Matrix product state / operator machinery over log2(N) binary sites:
// sequential-SVD construction, canonical truncation sweeps, Hadamard products
// via Kronecker-lifted bond matrices, TT-SVD operator factorization and
// entanglement diagnostics. Site 0 carries the most significant index bit.
#pragma once

#include "burgers/kernels.hpp"

#include <Eigen/Core>
#include <string>
#include <vector>

namespace burgers::mps {

struct TruncationPolicy {
    int chi_max = 16;
    double eps_cutoff = 1e-10;  // relative to the largest singular value

    static TruncationPolicy exact() { return {1 << 30, 0.0}; }
    void validate() const;
};

// Rank-3 site tensor (chi_left, 2, chi_right) stored as a bond matrix per
// physical index.
struct Site {
    Eigen::MatrixXd slice[2];

    Eigen::Index left() const { return slice[0].rows(); }
    Eigen::Index right() const { return slice[0].cols(); }
};

// The encoded vector is exp(log_scale) times the contraction of the sites;
// the explicit scale factor lets orthogonalization sweeps renormalize the
// tensors without losing amplitude. A zero state carries log_scale = -inf.
struct Mps {
    std::vector<Site> sites;
    double log_scale = 0.0;

    int length() const { return static_cast<int>(sites.size()); }
    long dim() const { return 1L << length(); }
    int bond(int cut) const;  // bond dimension at cut in [1, L-1]
    int max_bond() const;
    std::vector<int> bonds() const;
};

/// Left-to-right sequential SVD of a length-2^L vector. Exact (up to the
/// policy cutoff) when chi_max is large enough.
Mps mps_from_vector(const Eigen::VectorXd& v, const TruncationPolicy& policy);

/// Dense materialization; guarded at L <= 20.
Eigen::VectorXd mps_to_vector(const Mps& m);

/// Single-amplitude evaluation in O(L * chi^2).
double mps_value_at(const Mps& m, long index);

/// |e_index> as a bond-1 product state.
Mps product_basis_state(int length, long index);

/// Left-orthogonalization sweep followed by a right-to-left truncated-SVD
/// sweep. Accumulates the total dropped squared singular values (in units of
/// the encoded vector) into *discarded_weight when given.
Mps mps_truncate(const Mps& m, const TruncationPolicy& policy,
                 double* discarded_weight = nullptr);

/// Element-wise product before compression: per site and physical index the
/// Kronecker product of the bond matrices, so bonds multiply.
Mps hadamard_product_raw(const Mps& a, const Mps& b);

Mps mps_hadamard(const Mps& a, const Mps& b, const TruncationPolicy& policy,
                 double* discarded_weight = nullptr);

/// ca * a + cb * b by block (direct-sum) construction, then truncation.
Mps mps_add(const Mps& a, const Mps& b, double ca, double cb,
            const TruncationPolicy& policy, double* discarded_weight = nullptr);

/// Von Neumann entropy of the normalized squared Schmidt values at the cut.
double entanglement_entropy(const Mps& m, int cut);

// Rank-4 operator site (w_left, 2, 2, w_right): ww[out_bit][in_bit] is the
// (w_left x w_right) operator-bond matrix.
struct MpoSite {
    Eigen::MatrixXd ww[2][2];

    Eigen::Index left() const { return ww[0][0].rows(); }
    Eigen::Index right() const { return ww[0][0].cols(); }
};

struct Mpo {
    std::vector<MpoSite> sites;

    int length() const { return static_cast<int>(sites.size()); }
    int max_bond() const;
};

/// TT-SVD of a 2^L x 2^L matrix with row/column bits grouped per site;
/// exact within tol (relative singular-value cutoff). Guarded at L <= 10.
Mpo mpo_from_matrix(const Eigen::MatrixXd& op, double tol);

Mpo mpo_identity(int length);

/// Dense materialization of an MPO (test/debug aid), guarded at L <= 10.
Eigen::MatrixXd mpo_to_matrix(const Mpo& op);

/// Site-wise contraction producing bonds chi*w, then truncation.
Mps mpo_apply(const Mpo& op, const Mps& m, const TruncationPolicy& policy,
              double* discarded_weight = nullptr);

/// Debug dump: "BMPS", L, log_scale, then per site the two bond dimensions
/// and both slices row-major, all little-endian. Not a compatibility surface.
void dump_binary(const Mps& m, const std::string& path);

}  // namespace burgers::mps
