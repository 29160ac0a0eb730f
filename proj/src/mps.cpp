#include "burgers/mps.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace burgers::mps {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int vector_length_sites(Index n) {
    if (n < 2) throw std::invalid_argument("mps: vector length must be >= 2");
    int l = 0;
    while ((Index{1} << l) < n) ++l;
    if ((Index{1} << l) != n) {
        throw std::invalid_argument("mps: vector length must be a power of two");
    }
    return l;
}

// (chi_l, 2, chi_r) -> (chi_l*2, chi_r), row index a*2 + b
MatrixXd left_matrix(const Site& s) {
    const Index cl = s.left(), cr = s.right();
    MatrixXd m(cl * 2, cr);
    for (int b = 0; b < 2; ++b)
        for (Index a = 0; a < cl; ++a) m.row(a * 2 + b) = s.slice[b].row(a);
    return m;
}

// (chi_l, 2, chi_r) -> (chi_l, 2*chi_r), column index b*chi_r + c
MatrixXd right_matrix(const Site& s) {
    const Index cl = s.left(), cr = s.right();
    MatrixXd m(cl, 2 * cr);
    m.leftCols(cr) = s.slice[0];
    m.rightCols(cr) = s.slice[1];
    return m;
}

Site site_from_left(const MatrixXd& m, Index chi_l) {
    const Index cr = m.cols();
    Site s;
    s.slice[0].resize(chi_l, cr);
    s.slice[1].resize(chi_l, cr);
    for (int b = 0; b < 2; ++b)
        for (Index a = 0; a < chi_l; ++a) s.slice[b].row(a) = m.row(a * 2 + b);
    return s;
}

Site site_from_right(const MatrixXd& m, Index chi_r) {
    Site s;
    s.slice[0] = m.leftCols(chi_r);
    s.slice[1] = m.rightCols(chi_r);
    return s;
}

// thin QR: M (r x c) = Q (r x k) R (k x c), k = min(r, c)
void thin_qr(const MatrixXd& m, MatrixXd& q, MatrixXd& r) {
    const Index k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<MatrixXd> qr(m);
    q = qr.householderQ() * MatrixXd::Identity(m.rows(), k);
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

void check_same_length(const Mps& a, const Mps& b, const char* what) {
    if (a.length() != b.length()) {
        throw std::invalid_argument(std::string(what) + ": length mismatch");
    }
}

// Left-orthogonalize every site (QR sweep), pushing the norm to the right end.
void left_orthogonalize(std::vector<Site>& sites) {
    const int l = static_cast<int>(sites.size());
    for (int k = 0; k + 1 < l; ++k) {
        MatrixXd q, r;
        thin_qr(left_matrix(sites[k]), q, r);
        sites[k] = site_from_left(q, sites[k].left());
        sites[k + 1].slice[0] = r * sites[k + 1].slice[0];
        sites[k + 1].slice[1] = r * sites[k + 1].slice[1];
    }
}

}  // namespace

void TruncationPolicy::validate() const {
    if (chi_max < 1) throw std::invalid_argument("TruncationPolicy: chi_max must be >= 1");
    if (!(eps_cutoff >= 0.0 && eps_cutoff < 1.0)) {
        throw std::invalid_argument("TruncationPolicy: eps_cutoff must be in [0, 1)");
    }
}

int Mps::bond(int cut) const {
    if (cut < 1 || cut > length() - 1) throw std::invalid_argument("Mps::bond: cut out of range");
    return static_cast<int>(sites[cut - 1].right());
}

int Mps::max_bond() const {
    int m = 1;
    for (int c = 1; c < length(); ++c) m = std::max(m, bond(c));
    return m;
}

std::vector<int> Mps::bonds() const {
    std::vector<int> out;
    for (int c = 1; c < length(); ++c) out.push_back(bond(c));
    return out;
}

Mps mps_from_vector(const VectorXd& v, const TruncationPolicy& policy) {
    policy.validate();
    const int l = vector_length_sites(v.size());
    Mps m;
    m.sites.reserve(l);

    MatrixXd c = v.transpose();  // (1, N)
    Index rows = 1;
    for (int k = 0; k + 1 < l; ++k) {
        // regroup (r, 2m) -> (2r, m): physical bit joins the rows
        const Index half = c.cols() / 2;
        MatrixXd re(rows * 2, half);
        for (Index a = 0; a < rows; ++a) {
            re.row(a * 2) = c.row(a).head(half);
            re.row(a * 2 + 1) = c.row(a).tail(half);
        }
        kernels::SvdResult svd = kernels::truncated_svd(re, policy.chi_max, policy.eps_cutoff);
        const Index chi = svd.rank();
        m.sites.push_back(site_from_left(svd.u, rows));
        c = svd.singular_values.asDiagonal() * svd.vh;
        rows = chi;
    }
    Site last;
    last.slice[0] = c.col(0);
    last.slice[1] = c.col(1);
    m.sites.push_back(std::move(last));
    return m;
}

VectorXd mps_to_vector(const Mps& m) {
    const int l = m.length();
    if (l > 20) throw std::invalid_argument("mps_to_vector: L > 20 dense materialization guard");
    MatrixXd t = MatrixXd::Ones(1, 1);
    for (const Site& s : m.sites) {
        const Index p = t.rows(), cr = s.right();
        MatrixXd next(p * 2, cr);
        const MatrixXd t0 = t * s.slice[0];
        const MatrixXd t1 = t * s.slice[1];
        for (Index i = 0; i < p; ++i) {
            next.row(i * 2) = t0.row(i);
            next.row(i * 2 + 1) = t1.row(i);
        }
        t = std::move(next);
    }
    const double scale = std::exp(m.log_scale);
    return scale * t.col(0);
}

double mps_value_at(const Mps& m, long index) {
    const int l = m.length();
    if (index < 0 || index >= m.dim()) throw std::invalid_argument("mps_value_at: index out of range");
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Ones(1);
    for (int k = 0; k < l; ++k) {
        const int b = static_cast<int>((index >> (l - 1 - k)) & 1);
        row = row * m.sites[k].slice[b];
    }
    return std::exp(m.log_scale) * row[0];
}

Mps product_basis_state(int length, long index) {
    if (length < 1) throw std::invalid_argument("product_basis_state: length must be >= 1");
    if (index < 0 || index >= (1L << length)) {
        throw std::invalid_argument("product_basis_state: index out of range");
    }
    Mps m;
    m.sites.resize(length);
    for (int k = 0; k < length; ++k) {
        const int b = static_cast<int>((index >> (length - 1 - k)) & 1);
        for (int p = 0; p < 2; ++p) {
            m.sites[k].slice[p] = MatrixXd::Constant(1, 1, p == b ? 1.0 : 0.0);
        }
    }
    return m;
}

Mps mps_truncate(const Mps& m, const TruncationPolicy& policy, double* discarded_weight) {
    policy.validate();
    Mps out = m;
    const int l = out.length();
    if (l == 1) {
        // single site: only the norm to extract
        const double n2 = out.sites[0].slice[0].squaredNorm() + out.sites[0].slice[1].squaredNorm();
        const double n = std::sqrt(n2);
        if (n > 0.0) {
            out.sites[0].slice[0] /= n;
            out.sites[0].slice[1] /= n;
            out.log_scale += std::log(n);
        } else {
            out.log_scale = kNegInf;
        }
        return out;
    }

    left_orthogonalize(out.sites);

    const double unit = std::isfinite(out.log_scale) ? std::exp(2.0 * out.log_scale) : 0.0;
    double dropped = 0.0;
    for (int k = l - 1; k >= 1; --k) {
        kernels::SvdResult svd =
            kernels::truncated_svd(right_matrix(out.sites[k]), policy.chi_max, policy.eps_cutoff);
        dropped += svd.discarded_weight;
        const Index chi = svd.rank();
        out.sites[k] = site_from_right(svd.vh, out.sites[k].right());
        const MatrixXd carry = svd.u * svd.singular_values.asDiagonal();
        out.sites[k - 1].slice[0] *= carry;
        out.sites[k - 1].slice[1] *= carry;
        (void)chi;
    }
    if (discarded_weight) *discarded_weight += unit * dropped;

    const double n2 = out.sites[0].slice[0].squaredNorm() + out.sites[0].slice[1].squaredNorm();
    const double n = std::sqrt(n2);
    if (n > 0.0 && std::isfinite(out.log_scale)) {
        out.sites[0].slice[0] /= n;
        out.sites[0].slice[1] /= n;
        out.log_scale += std::log(n);
    } else {
        out.log_scale = kNegInf;
    }
    return out;
}

Mps hadamard_product_raw(const Mps& a, const Mps& b) {
    check_same_length(a, b, "mps_hadamard");
    Mps out;
    out.log_scale = a.log_scale + b.log_scale;
    out.sites.resize(a.length());
    for (int k = 0; k < a.length(); ++k) {
        for (int p = 0; p < 2; ++p) {
            out.sites[k].slice[p] = kernels::kron(a.sites[k].slice[p], b.sites[k].slice[p]);
        }
    }
    return out;
}

Mps mps_hadamard(const Mps& a, const Mps& b, const TruncationPolicy& policy,
                 double* discarded_weight) {
    return mps_truncate(hadamard_product_raw(a, b), policy, discarded_weight);
}

Mps mps_add(const Mps& a, const Mps& b, double ca, double cb, const TruncationPolicy& policy,
            double* discarded_weight) {
    check_same_length(a, b, "mps_add");
    const int l = a.length();

    const double ls = std::max(a.log_scale, b.log_scale);
    if (!std::isfinite(ls)) return a;  // both zero states
    const double wa = std::isfinite(a.log_scale) ? ca * std::exp(a.log_scale - ls) : 0.0;
    const double wb = std::isfinite(b.log_scale) ? cb * std::exp(b.log_scale - ls) : 0.0;

    Mps out;
    out.log_scale = ls;
    out.sites.resize(l);
    for (int k = 0; k < l; ++k) {
        const Site& sa = a.sites[k];
        const Site& sb = b.sites[k];
        for (int p = 0; p < 2; ++p) {
            const Index al = sa.left(), ar = sa.right();
            const Index bl = sb.left(), br = sb.right();
            MatrixXd& c = out.sites[k].slice[p];
            if (l == 1) {
                c = wa * sa.slice[p] + wb * sb.slice[p];
            } else if (k == 0) {
                c.resize(1, ar + br);
                c.leftCols(ar) = wa * sa.slice[p];
                c.rightCols(br) = wb * sb.slice[p];
            } else if (k == l - 1) {
                c.resize(al + bl, 1);
                c.topRows(al) = sa.slice[p];
                c.bottomRows(bl) = sb.slice[p];
            } else {
                c = MatrixXd::Zero(al + bl, ar + br);
                c.topLeftCorner(al, ar) = sa.slice[p];
                c.bottomRightCorner(bl, br) = sb.slice[p];
            }
        }
    }
    return mps_truncate(out, policy, discarded_weight);
}

double entanglement_entropy(const Mps& m, int cut) {
    const int l = m.length();
    if (cut < 1 || cut > l - 1) {
        throw std::invalid_argument("entanglement_entropy: cut must be in [1, L-1]");
    }
    std::vector<Site> sites = m.sites;
    left_orthogonalize(sites);

    // right-orthogonalize down to the cut; the carried matrix holds the
    // Schmidt spectrum of the bipartition
    MatrixXd carried;
    for (int k = l - 1; k >= cut; --k) {
        const MatrixXd rm = right_matrix(sites[k]);
        MatrixXd qt, rt;
        thin_qr(rm.transpose(), qt, rt);
        const MatrixXd lower = rt.transpose();  // (chi_l x k)
        sites[k] = site_from_right(qt.transpose(), sites[k].right());
        if (k == cut) {
            carried = lower;
        } else {
            sites[k - 1].slice[0] *= lower;
            sites[k - 1].slice[1] *= lower;
        }
    }

    const VectorXd sv =
        kernels::truncated_svd(carried, std::numeric_limits<int>::max(), 0.0).singular_values;
    const double total = sv.squaredNorm();
    if (!(total > 0.0)) return 0.0;
    double s = 0.0;
    for (Index i = 0; i < sv.size(); ++i) {
        const double p = sv[i] * sv[i] / total;
        if (p > 1e-300) s -= p * std::log(p);
    }
    return s;
}

int Mpo::max_bond() const {
    int m = 1;
    for (const MpoSite& s : sites) m = std::max(m, static_cast<int>(s.right()));
    return m;
}

Mpo mpo_from_matrix(const MatrixXd& op, double tol) {
    if (op.rows() != op.cols()) throw std::invalid_argument("mpo_from_matrix: matrix not square");
    const int l = vector_length_sites(op.rows());
    if (l > 10) throw std::invalid_argument("mpo_from_matrix: L > 10 dense ingestion guard");
    if (!(tol >= 0.0 && tol < 1.0)) throw std::invalid_argument("mpo_from_matrix: bad tol");

    // reorder entries so each site groups its (row bit, column bit) pair:
    // flat index digits d_k = r_k*2 + c_k, base 4, d_0 most significant
    const long n = op.rows();
    const long total = n * n;
    VectorXd w(total);
    for (long r = 0; r < n; ++r) {
        for (long c = 0; c < n; ++c) {
            long idx = 0;
            for (int k = 0; k < l; ++k) {
                const long rb = (r >> (l - 1 - k)) & 1;
                const long cb = (c >> (l - 1 - k)) & 1;
                idx = idx * 4 + (rb * 2 + cb);
            }
            w[idx] = op(r, c);
        }
    }

    // TT-SVD with physical dimension 4
    Mpo out;
    out.sites.resize(l);
    MatrixXd cmat = w.transpose();  // (1, 4^L)
    Index rows = 1;
    for (int k = 0; k + 1 < l; ++k) {
        const Index quarter = cmat.cols() / 4;
        MatrixXd re(rows * 4, quarter);
        for (Index a = 0; a < rows; ++a) {
            for (int d = 0; d < 4; ++d) {
                re.row(a * 4 + d) = cmat.row(a).segment(d * quarter, quarter);
            }
        }
        kernels::SvdResult svd =
            kernels::truncated_svd(re, std::numeric_limits<int>::max(), tol);
        const Index chi = svd.rank();
        for (int d = 0; d < 4; ++d) {
            MatrixXd& s = out.sites[k].ww[d / 2][d % 2];
            s.resize(rows, chi);
            for (Index a = 0; a < rows; ++a) s.row(a) = svd.u.row(a * 4 + d);
        }
        cmat = svd.singular_values.asDiagonal() * svd.vh;
        rows = chi;
    }
    for (int d = 0; d < 4; ++d) out.sites[l - 1].ww[d / 2][d % 2] = cmat.col(d);
    return out;
}

Mpo mpo_identity(int length) {
    if (length < 1) throw std::invalid_argument("mpo_identity: length must be >= 1");
    Mpo out;
    out.sites.resize(length);
    for (int k = 0; k < length; ++k) {
        for (int so = 0; so < 2; ++so)
            for (int si = 0; si < 2; ++si)
                out.sites[k].ww[so][si] = MatrixXd::Constant(1, 1, so == si ? 1.0 : 0.0);
    }
    return out;
}

MatrixXd mpo_to_matrix(const Mpo& op) {
    const int l = op.length();
    if (l > 10) throw std::invalid_argument("mpo_to_matrix: L > 10 guard");
    const long n = 1L << l;
    MatrixXd out(n, n);
    for (long r = 0; r < n; ++r) {
        for (long c = 0; c < n; ++c) {
            MatrixXd acc = MatrixXd::Ones(1, 1);
            for (int k = 0; k < l; ++k) {
                const int rb = static_cast<int>((r >> (l - 1 - k)) & 1);
                const int cb = static_cast<int>((c >> (l - 1 - k)) & 1);
                acc = acc * op.sites[k].ww[rb][cb];
            }
            out(r, c) = acc(0, 0);
        }
    }
    return out;
}

Mps mpo_apply(const Mpo& op, const Mps& m, const TruncationPolicy& policy,
              double* discarded_weight) {
    if (op.length() != m.length()) throw std::invalid_argument("mpo_apply: length mismatch");
    Mps out;
    out.log_scale = m.log_scale;
    out.sites.resize(m.length());
    for (int k = 0; k < m.length(); ++k) {
        const MpoSite& w = op.sites[k];
        const Site& s = m.sites[k];
        for (int so = 0; so < 2; ++so) {
            out.sites[k].slice[so] = kernels::kron(w.ww[so][0], s.slice[0]) +
                                     kernels::kron(w.ww[so][1], s.slice[1]);
        }
    }
    return mps_truncate(out, policy, discarded_weight);
}

void dump_binary(const Mps& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("dump_binary: cannot open " + path);
    f.write("BMPS", 4);
    const int32_t l = m.length();
    f.write(reinterpret_cast<const char*>(&l), sizeof(l));
    f.write(reinterpret_cast<const char*>(&m.log_scale), sizeof(double));
    for (const Site& s : m.sites) {
        const int32_t cl = static_cast<int32_t>(s.left());
        const int32_t cr = static_cast<int32_t>(s.right());
        f.write(reinterpret_cast<const char*>(&cl), sizeof(cl));
        f.write(reinterpret_cast<const char*>(&cr), sizeof(cr));
        for (int b = 0; b < 2; ++b) {
            for (Index i = 0; i < cl; ++i) {
                for (Index j = 0; j < cr; ++j) {
                    const double x = s.slice[b](i, j);
                    f.write(reinterpret_cast<const char*>(&x), sizeof(x));
                }
            }
        }
    }
}

}  // namespace burgers::mps
