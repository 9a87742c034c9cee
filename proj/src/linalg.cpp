#include "isopair/linalg.hpp"

#include "isopair/error.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <sstream>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace isopair::linalg {

namespace {

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const ComplexMatrix& a) {
    EMat m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
        }
    }
    return m;
}

ComplexMatrix from_eigen(const EMat& m) {
    ComplexMatrix a(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
        }
    }
    return a;
}

double drop_threshold(const ComplexMatrix& a) {
    return 64.0 * std::numeric_limits<double>::epsilon() * a.max_abs();
}

std::vector<std::size_t> rows_above(const ComplexMatrix& a, double drop_tol) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        if (std::ranges::any_of(r, [&](const cx& z) { return std::abs(z) > drop_tol; })) {
            keep.push_back(i);
        }
    }
    return keep;
}

std::vector<std::size_t> cols_above(const ComplexMatrix& a, double drop_tol) {
    std::vector<bool> hit(a.cols(), false);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!hit[j] && std::abs(r[j]) > drop_tol) {
                hit[j] = true;
            }
        }
    }
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (hit[j]) {
            keep.push_back(j);
        }
    }
    return keep;
}

} // namespace

std::vector<std::size_t> coupled_indices(const ComplexMatrix& a, double drop_tol) {
    const auto r = rows_above(a, drop_tol);
    const auto c = cols_above(a, drop_tol);
    std::vector<std::size_t> keep;
    std::ranges::set_union(r, c, std::back_inserter(keep));
    return keep;
}

void phase_normalize(std::span<cx> v) {
    double biggest = 0.0;
    for (const cx& z : v) {
        biggest = std::max(biggest, std::abs(z));
    }
    if (biggest == 0.0) {
        return;
    }
    for (const cx& z : v) {
        if (std::abs(z) >= biggest * (1.0 - 1e-10)) {
            const cx phase = std::conj(z) / std::abs(z);
            for (cx& w : v) {
                w *= phase;
            }
            return;
        }
    }
}

HermitianEigen hermitian_eig(const ComplexMatrix& a, double tol) {
    if (!a.square()) {
        throw InputError("hermitian_eig: matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", not square");
    }
    const std::size_t n = a.rows();
    HermitianEigen out;
    out.vectors = ComplexMatrix(n, n);
    if (n == 0) {
        return out;
    }
    const double herm = distance(a, a.adjoint());
    if (herm > tol * std::max(1.0, a.frobenius_norm())) {
        std::ostringstream msg;
        msg << "hermitian_eig: ||A - A*||_F = " << herm << " exceeds tolerance";
        throw InputError(msg.str());
    }

    const auto keep = coupled_indices(a, drop_threshold(a));
    std::vector<bool> kept(n, false);
    for (std::size_t i : keep) {
        kept[i] = true;
    }
    double dropped_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!kept[i] || !kept[j]) {
                dropped_sq += std::norm(a(i, j));
            }
        }
    }
    out.dropped_norm = std::sqrt(dropped_sq);

    struct Pair {
        double value;
        CVector vector;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n);
    if (!keep.empty()) {
        const ComplexMatrix sub = a.submatrix(keep, keep);
        const EMat es = to_eigen(sub);
        const EMat sym = 0.5 * (es + es.adjoint());
        Eigen::SelfAdjointEigenSolver<EMat> solver(sym);
        if (solver.info() != Eigen::Success) {
            throw CheckFailure("hermitian_eig: eigensolver did not converge");
        }
        for (Eigen::Index c = 0; c < solver.eigenvalues().size(); ++c) {
            CVector v(n);
            for (std::size_t r = 0; r < keep.size(); ++r) {
                v[keep[r]] = solver.eigenvectors()(static_cast<Eigen::Index>(r), c);
            }
            pairs.push_back({solver.eigenvalues()(c), std::move(v)});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!kept[i]) {
            CVector v(n);
            v[i] = 1.0;
            pairs.push_back({a(i, i).real(), std::move(v)});
        }
    }
    std::ranges::stable_sort(pairs, [](const Pair& x, const Pair& y) { return x.value > y.value; });

    out.values.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        phase_normalize(pairs[j].vector);
        out.values.push_back(pairs[j].value);
        out.vectors.set_column(j, pairs[j].vector);
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    const std::size_t k = std::min(a.rows(), a.cols());
    std::vector<double> sv;
    sv.reserve(k);
    if (k == 0) {
        return sv;
    }
    const double drop = drop_threshold(a);
    const auto r = rows_above(a, drop);
    const auto c = cols_above(a, drop);
    if (!r.empty() && !c.empty()) {
        const EMat sub = to_eigen(a.submatrix(r, c));
        Eigen::JacobiSVD<EMat> svd(sub);
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
            sv.push_back(svd.singularValues()(i));
        }
    }
    sv.resize(k, 0.0);
    std::ranges::sort(sv, std::greater<>());
    return sv;
}

double default_rank_tol(const ComplexMatrix& a) {
    return static_cast<double>(std::max(a.rows(), a.cols())) * 1e-12;
}

std::size_t numerical_rank(const ComplexMatrix& a, double tol) {
    const auto sv = singular_values(a);
    if (sv.empty() || sv.front() <= kRankFloor) {
        return 0;
    }
    const double cut = std::max(tol * sv.front(), kRankFloor);
    return static_cast<std::size_t>(std::ranges::count_if(sv, [&](double s) { return s > cut; }));
}

std::size_t numerical_rank(const ComplexMatrix& a) { return numerical_rank(a, default_rank_tol(a)); }

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace::Subspace(ComplexMatrix basis) : ambient_(basis.rows()), basis_(std::move(basis)) {
    const ComplexMatrix gram = adjoint_times(basis_, basis_);
    const double err = distance(gram, ComplexMatrix::identity(gram.rows()));
    if (err > kOrthonormalTol) {
        throw InputError("Subspace: basis not orthonormal (||B*B - I||_F = " + std::to_string(err) + ")");
    }
}

ComplexMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

double Subspace::distance_to(std::span<const cx> v) const {
    if (v.size() != ambient_) {
        throw InputError("Subspace::distance_to: ambient dimension mismatch");
    }
    CVector residual(v.begin(), v.end());
    for (std::size_t j = 0; j < dim(); ++j) {
        const CVector b = basis_.column(j);
        const cx c = inner(b, v);
        for (std::size_t i = 0; i < ambient_; ++i) {
            residual[i] -= c * b[i];
        }
    }
    return norm(residual);
}

Subspace range_of(const ComplexMatrix& a, double tol) {
    const double drop = drop_threshold(a);
    const auto r = rows_above(a, drop);
    const auto c = cols_above(a, drop);
    if (r.empty() || c.empty()) {
        return Subspace(a.rows());
    }
    const EMat sub = to_eigen(a.submatrix(r, c));
    Eigen::JacobiSVD<EMat> svd(sub, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= kRankFloor) {
        return Subspace(a.rows());
    }
    const double cut = std::max(tol * s(0), kRankFloor);
    std::vector<CVector> cols;
    for (Eigen::Index j = 0; j < s.size() && s(j) > cut; ++j) {
        CVector v(a.rows());
        for (std::size_t i = 0; i < r.size(); ++i) {
            v[r[i]] = svd.matrixU()(static_cast<Eigen::Index>(i), j);
        }
        phase_normalize(v);
        cols.push_back(std::move(v));
    }
    return Subspace(ComplexMatrix::from_columns(cols, a.rows()));
}

Subspace eigenspace(const HermitianEigen& eig, double lo, double hi) {
    std::vector<CVector> cols;
    for (std::size_t j = 0; j < eig.values.size(); ++j) {
        if (eig.values[j] >= lo && eig.values[j] <= hi) {
            cols.push_back(eig.vectors.column(j));
        }
    }
    return Subspace(ComplexMatrix::from_columns(cols, eig.vectors.rows()));
}

Subspace projection_range(const ComplexMatrix& p) {
    return eigenspace(hermitian_eig(p), 0.5, std::numeric_limits<double>::infinity());
}

Subspace orthogonal_complement(const Subspace& s) {
    if (s.dim() == 0) {
        return Subspace(ComplexMatrix::identity(s.ambient_dim()));
    }
    const ComplexMatrix q = ComplexMatrix::identity(s.ambient_dim()) - s.projector();
    return projection_range(q);
}

Subspace span_union(const Subspace& a, const Subspace& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw InputError("span_union: ambient dimensions differ");
    }
    ComplexMatrix joined(a.ambient_dim(), a.dim() + b.dim());
    joined.set_block(0, 0, a.basis());
    joined.set_block(0, a.dim(), b.basis());
    return range_of(joined, tol);
}

Subspace projector_intersection(const ComplexMatrix& p1, const ComplexMatrix& p2, double tol) {
    if (p1.rows() != p2.rows()) {
        throw InputError("subspace_intersection: ambient dimensions " + std::to_string(p1.rows()) + " and " +
                         std::to_string(p2.rows()) + " differ");
    }
    return eigenspace(hermitian_eig(p1 + p2), 2.0 - tol, std::numeric_limits<double>::infinity());
}

Subspace subspace_intersection(const Subspace& s1, const Subspace& s2, double tol) {
    if (s1.ambient_dim() != s2.ambient_dim()) {
        throw InputError("subspace_intersection: ambient dimensions " + std::to_string(s1.ambient_dim()) +
                         " and " + std::to_string(s2.ambient_dim()) + " differ");
    }
    return projector_intersection(s1.projector(), s2.projector(), tol);
}

double subspace_gap(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) {
        return 1.0;
    }
    if (a.dim() == 0) {
        return 0.0;
    }
    const ComplexMatrix residual = b.basis() - a.basis() * adjoint_times(a.basis(), b.basis());
    const auto sv = singular_values(residual);
    return sv.empty() ? 0.0 : sv.front();
}

NormalEigen normal_eig(const ComplexMatrix& a) {
    if (!a.square()) {
        throw InputError("normal_eig: matrix not square");
    }
    NormalEigen out;
    const std::size_t n = a.rows();
    out.vectors = ComplexMatrix(n, n);
    if (n == 0) {
        return out;
    }
    // Indices with a numerically zero row and column are eigenvectors (A_ii, e_i)
    // on their own; only the coupled block goes through the dense Schur solve.
    const auto keep = coupled_indices(a, drop_threshold(a));
    std::vector<bool> kept(n, false);
    for (std::size_t i : keep) {
        kept[i] = true;
    }
    std::size_t col = 0;
    if (!keep.empty()) {
        Eigen::ComplexSchur<EMat> schur(to_eigen(a.submatrix(keep, keep)));
        if (schur.info() != Eigen::Success) {
            throw CheckFailure("normal_eig: Schur decomposition did not converge");
        }
        const EMat& t = schur.matrixT();
        double off = 0.0;
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            out.values.push_back(t(i, i));
            for (Eigen::Index j = i + 1; j < t.cols(); ++j) {
                off += std::norm(t(i, j));
            }
        }
        out.offdiag_norm = std::sqrt(off);
        for (Eigen::Index c = 0; c < t.cols(); ++c, ++col) {
            CVector v(n);
            for (std::size_t r = 0; r < keep.size(); ++r) {
                v[keep[r]] = schur.matrixU()(static_cast<Eigen::Index>(r), c);
            }
            phase_normalize(v);
            out.vectors.set_column(col, v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!kept[i]) {
            CVector v(n);
            v[i] = 1.0;
            out.values.push_back(a(i, i));
            out.vectors.set_column(col++, v);
        }
    }
    return out;
}

double normality_residual(const ComplexMatrix& a) {
    return distance(a * a.adjoint(), adjoint_times(a, a));
}

double projection_residual(const ComplexMatrix& p) {
    return std::max(distance(p * p, p), distance(p, p.adjoint()));
}

double unitarity_residual(const ComplexMatrix& u) {
    return distance(adjoint_times(u, u), ComplexMatrix::identity(u.cols()));
}

ComplexMatrix haar_isometry(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    if (k > n) {
        throw InputError("haar_isometry: more columns than rows");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    EMat g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = cx(re * s, im * s);
        }
    }
    if (k == 0) {
        return ComplexMatrix(n, 0);
    }
    Eigen::HouseholderQR<EMat> qr(g);
    EMat q = qr.householderQ() * EMat::Identity(g.rows(), g.cols());
    const EMat& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const cx d = r(j, j);
        const double m = std::abs(d);
        if (m > 0.0) {
            q.col(j) *= d / m;
        }
    }
    return from_eigen(q);
}

ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) { return haar_isometry(n, n, rng); }

} // namespace isopair::linalg
