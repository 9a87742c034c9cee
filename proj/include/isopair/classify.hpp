#pragma once

#include "isopair/bcl.hpp"
#include "isopair/linalg.hpp"
#include "isopair/models.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace isopair::classify {

using PairInput = std::variant<bcl::BCLTriple, models::StructuredPair>;

struct Tolerances {
    double tol = 1e-8;        // normality, containment, commutation
    double cluster_tol = linalg::kDefaultClusterTol;
    double band_tol = 1e-6;   // |alpha| bands
    double match_tol = 1e-6;  // multiset matching in decide_equivalence
};

enum class BlockKind { OneFinite, TwoFinite, ThreeFinite };
std::string_view to_string(BlockKind k);

struct BlockDescriptor {
    BlockKind kind = BlockKind::OneFinite;
    cx alpha;            // 0, unimodular, or 0 < |alpha| < 1
    double lambda = 0.0; // |alpha| for ThreeFinite
    cx gamma;            // alpha / |alpha| for ThreeFinite
    CVector f_vector;    // unit vector of E1 generating the block
    /// Rank of the block's share of the defect: 1, 2 or 3.
    std::size_t defect_rank() const noexcept;
};

struct ShiftUnitaryInvariant {
    CVector eigs_on_P;
    CVector eigs_on_Pperp;
};

struct ClassificationResult {
    std::size_t k = 0;
    std::vector<BlockDescriptor> blocks;
    ShiftUnitaryInvariant shift_unitary;
    std::map<std::string, double> residuals;
    CVector fundamental_sequence() const;
};

struct NormalityReport {
    bool ok = false;
    double normality_residual = 0.0; // ||XX* - X*X||_F
    double cross_norm_sq = 0.0;      // ||X||_F^2
    double isometry_residual = 0.0;  // pairs only
    double commutator_residual = 0.0;
    std::string message;
};

NormalityReport check_compact_normal(const PairInput& input, double tol = 1e-8);

struct E1Data {
    linalg::Subspace basisE1{0};
    ComplexMatrix X_on_E1;
    double eigenspace_gap = 0.0;         // vs the defect's +1 eigenspace
    double containment_residual = 0.0;   // ||X - P_E1 X P_E1||_F
};

/// Throws CheckFailure when W1 n W2 and the +1 eigenspace of the defect
/// disagree, or X is not supported on E1.
E1Data e1_data(const PairInput& input, const Tolerances& tol = {});

/// Blocks and k; shift_unitary left empty. Throws CheckFailure when X on E1
/// is not normal within tol.
ClassificationResult fundamental_sequence(const PairInput& input, const Tolerances& tol = {});

/// Throws CheckFailure when P and U fail to commute on the residual block.
ShiftUnitaryInvariant shift_unitary_invariant(const PairInput& input, const Tolerances& tol = {});

/// Full pipeline. Throws CheckFailure when the input is not compact normal.
ClassificationResult classify(const PairInput& input, const Tolerances& tol = {});

struct Verdict {
    bool equivalent = false;
    /// matching[i] = index in B's fundamental sequence matched to A's entry i.
    std::optional<std::vector<std::size_t>> matching;
    std::vector<std::string> report;
    ClassificationResult a;
    ClassificationResult b;
};

/// Greedy multiset matching: each entry of `a` takes the nearest unused
/// entry of `b` within tol.
std::optional<std::vector<std::size_t>> match_multisets(const CVector& a, const CVector& b, double tol);

Verdict decide_equivalence(const PairInput& a, const PairInput& b, const Tolerances& tol = {});
Verdict decide_equivalence(const ClassificationResult& a, const ClassificationResult& b, const Tolerances& tol = {});

} // namespace isopair::classify
