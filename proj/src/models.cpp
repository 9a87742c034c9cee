#include "isopair/models.hpp"

#include "isopair/error.hpp"
#include "isopair/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace isopair::models {

std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::Bishift: return "bishift";
    case Provenance::Twisted: return "twisted";
    case Provenance::Izuchi: return "izuchi";
    case Provenance::DirectSum: return "direct-sum";
    case Provenance::Scrambled: return "scramble";
    }
    return "unknown";
}

Provenance provenance_from_string(std::string_view s) {
    for (auto p : {Provenance::Bishift, Provenance::Twisted, Provenance::Izuchi, Provenance::DirectSum,
                   Provenance::Scrambled}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    throw InputError("unknown provenance '" + std::string(s) + "'");
}

std::string_view to_string(LabelKind k) {
    switch (k) {
    case LabelKind::Monomial: return "monomial";
    case LabelKind::GVector: return "g";
    case LabelKind::Mixed: return "mixed";
    }
    return "unknown";
}

LabelKind label_kind_from_string(std::string_view s) {
    for (auto k : {LabelKind::Monomial, LabelKind::GVector, LabelKind::Mixed}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw InputError("unknown basis label kind '" + std::string(s) + "'");
}

void validate_pair(const StructuredPair& p) {
    const std::size_t n = p.dim;
    if (p.V1.rows() != n || p.V1.cols() != n || p.V2.rows() != n || p.V2.cols() != n) {
        throw InputError("StructuredPair: V1 and V2 must be dim x dim");
    }
    if (p.labels.size() != n) {
        throw InputError("StructuredPair: need one label per basis vector");
    }
    if (!std::ranges::is_sorted(p.interior) ||
        std::ranges::adjacent_find(p.interior) != p.interior.end()) {
        throw InputError("StructuredPair: interior indices must be strictly increasing");
    }
    if (!p.interior.empty() && p.interior.back() >= n) {
        throw InputError("StructuredPair: interior index out of range");
    }
}

StructuredPair bishift_truncated(std::size_t N) {
    if (N < 3) {
        throw InputError("bishift: N must be at least 3");
    }
    StructuredPair p;
    p.dim = N * N;
    p.V1 = ComplexMatrix(p.dim, p.dim);
    p.V2 = ComplexMatrix(p.dim, p.dim);
    p.provenance = Provenance::Bishift;
    p.params["N"] = static_cast<double>(N);
    for (std::size_t m = 0; m < N; ++m) {
        for (std::size_t n = 0; n < N; ++n) {
            const std::size_t b = m * N + n;
            if (m + 1 < N) {
                p.V1((m + 1) * N + n, b) = 1.0;
            }
            if (n + 1 < N) {
                p.V2(b + 1, b) = 1.0;
            }
            p.labels.push_back({LabelKind::Monomial, {static_cast<int>(m), static_cast<int>(n)}, {}});
            if (m + 1 < N && n + 1 < N) {
                p.interior.push_back(b);
            }
        }
    }
    return p;
}

StructuredPair twisted_shift(cx alpha, std::size_t N) {
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "twisted: alpha must be unimodular, |alpha| = " << std::abs(alpha);
        throw InputError(msg.str());
    }
    if (N < 3) {
        throw InputError("twisted: N must be at least 3");
    }
    StructuredPair p;
    p.dim = N;
    p.V1 = ComplexMatrix(N, N);
    p.V2 = ComplexMatrix(N, N);
    p.provenance = Provenance::Twisted;
    p.params = {{"N", static_cast<double>(N)}, {"alpha_re", alpha.real()}, {"alpha_im", alpha.imag()}};
    for (std::size_t k = 0; k < N; ++k) {
        if (k + 1 < N) {
            p.V1(k + 1, k) = 1.0;
            p.V2(k + 1, k) = alpha;
            p.interior.push_back(k);
        }
        p.labels.push_back({LabelKind::Monomial, {static_cast<int>(k)}, {}});
    }
    return p;
}

StructuredPair direct_sum(std::span<const StructuredPair> parts) {
    if (parts.empty()) {
        throw InputError("direct_sum: empty list");
    }
    if (parts.size() == 1) {
        return parts.front();
    }
    std::vector<ComplexMatrix> v1;
    std::vector<ComplexMatrix> v2;
    StructuredPair out;
    out.provenance = Provenance::DirectSum;
    out.params["parts"] = static_cast<double>(parts.size());
    std::size_t offset = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& part = parts[i];
        validate_pair(part);
        v1.push_back(part.V1);
        v2.push_back(part.V2);
        for (BasisLabel label : part.labels) {
            label.part_path.insert(label.part_path.begin(), i);
            out.labels.push_back(std::move(label));
        }
        for (std::size_t j : part.interior) {
            out.interior.push_back(offset + j);
        }
        offset += part.dim;
    }
    out.dim = offset;
    out.V1 = block_diagonal(v1);
    out.V2 = block_diagonal(v2);
    return out;
}

StructuredPair scramble(const StructuredPair& p, std::uint64_t seed) {
    validate_pair(p);
    if (seed == 0) {
        return p;
    }
    std::mt19937_64 rng(seed);
    const ComplexMatrix q = linalg::haar_unitary(p.interior.size(), rng);
    ComplexMatrix w = ComplexMatrix::identity(p.dim);
    for (std::size_t a = 0; a < p.interior.size(); ++a) {
        for (std::size_t b = 0; b < p.interior.size(); ++b) {
            w(p.interior[a], p.interior[b]) = q(a, b);
        }
    }
    const ComplexMatrix wh = w.adjoint();
    StructuredPair out = p;
    out.V1 = w * (p.V1 * wh);
    out.V2 = w * (p.V2 * wh);
    out.provenance = Provenance::Scrambled;
    out.params["seed"] = static_cast<double>(seed);
    for (std::size_t a = 0; a < p.interior.size(); ++a) {
        auto& label = out.labels[p.interior[a]];
        label.kind = LabelKind::Mixed;
        label.exponents = {static_cast<int>(a)};
    }
    return out;
}

namespace {

// (A B*)[int, int] for row slices a = A[int, :], b = B[int, :].
ComplexMatrix rows_times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b.adjoint(); }

} // namespace

ComplexMatrix interior_defect(const StructuredPair& p) {
    validate_pair(p);
    const auto& idx = p.interior;
    const ComplexMatrix r1 = p.V1.select_rows(idx);
    const ComplexMatrix r2 = p.V2.select_rows(idx);
    ComplexMatrix c = ComplexMatrix::identity(idx.size());
    c -= rows_times_adjoint(r1, r1);
    c -= rows_times_adjoint(r2, r2);
    // V1V2V1*V2* = (V1V2)(V2V1)*
    c += rows_times_adjoint(r1 * p.V2, r2 * p.V1);
    return c;
}

ComplexMatrix interior_cross(const StructuredPair& p) {
    validate_pair(p);
    const auto& idx = p.interior;
    ComplexMatrix x = adjoint_times(p.V2.select_cols(idx), p.V1.select_cols(idx));
    x -= rows_times_adjoint(p.V1.select_rows(idx), p.V2.select_rows(idx));
    return x;
}

InteriorWandering interior_wandering(const StructuredPair& p) {
    validate_pair(p);
    const auto& idx = p.interior;
    const std::size_t m = idx.size();
    const ComplexMatrix r1 = p.V1.select_rows(idx);
    const ComplexMatrix r2 = p.V2.select_rows(idx);
    const ComplexMatrix r12 = r1 * p.V2;
    InteriorWandering w;
    w.pW1 = ComplexMatrix::identity(m) - rows_times_adjoint(r1, r1);
    w.pW2 = ComplexMatrix::identity(m) - rows_times_adjoint(r2, r2);
    w.pW = ComplexMatrix::identity(m) - rows_times_adjoint(r12, r12);
    const ComplexMatrix v1 = p.V1.submatrix(idx, idx);
    const ComplexMatrix v2 = p.V2.submatrix(idx, idx);
    w.U = v2 * w.pW1 + v1.adjoint() * (w.pW - w.pW1);
    return w;
}

StructureResiduals structure_residuals(const StructuredPair& p) {
    validate_pair(p);
    const auto& idx = p.interior;
    const ComplexMatrix c1 = p.V1.select_cols(idx);
    const ComplexMatrix c2 = p.V2.select_cols(idx);
    const ComplexMatrix id = ComplexMatrix::identity(idx.size());
    StructureResiduals r;
    r.isometry = std::max(distance(adjoint_times(c1, c1), id), distance(adjoint_times(c2, c2), id));
    r.commutator = distance(p.V1 * c2, p.V2 * c1);
    return r;
}

} // namespace isopair::models
