#pragma once

#include "isopair/complex_matrix.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isopair::models {

enum class LabelKind { Monomial, GVector, Mixed };

/// Monomial: exponents = {m, n} for z^m w^n, or {k} for z^k.
/// GVector: exponents = {j}. Mixed: exponents = {position} after a scramble.
/// part_path records the direct-sum summands the vector came through.
struct BasisLabel {
    LabelKind kind = LabelKind::Monomial;
    std::vector<int> exponents;
    std::vector<std::size_t> part_path;
    bool operator==(const BasisLabel&) const = default;
};

enum class Provenance { Bishift, Twisted, Izuchi, DirectSum, Scrambled };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);
std::string_view to_string(LabelKind k);
LabelKind label_kind_from_string(std::string_view s);

/// A truncated isometric pair on C^dim. Actions on `interior` basis vectors
/// (and of the adjoints) are exact; boundary vectors lose their overflow.
struct StructuredPair {
    std::size_t dim = 0;
    ComplexMatrix V1;
    ComplexMatrix V2;
    std::vector<BasisLabel> labels;
    std::vector<std::size_t> interior; // sorted
    Provenance provenance = Provenance::Bishift;
    /// Generator parameters (N, alpha_re, r, seed, ...), informational only.
    std::map<std::string, double> params;
};

/// Throws InputError on shape mismatches or a malformed interior list.
void validate_pair(const StructuredPair& p);

StructuredPair bishift_truncated(std::size_t N);
StructuredPair twisted_shift(cx alpha, std::size_t N);
StructuredPair direct_sum(std::span<const StructuredPair> parts);
/// Seed 0 returns the pair unchanged.
StructuredPair scramble(const StructuredPair& p, std::uint64_t seed);

/// I - V1V1* - V2V2* + V1V2V1*V2*, compressed to the interior.
ComplexMatrix interior_defect(const StructuredPair& p);
/// V2*V1 - V1V2*, compressed to the interior.
ComplexMatrix interior_cross(const StructuredPair& p);

/// Wandering-space data on interior coordinates.
struct InteriorWandering {
    ComplexMatrix pW1; // I - V1V1*
    ComplexMatrix pW2; // I - V2V2*
    ComplexMatrix pW;  // I - (V1V2)(V1V2)*
    /// V2 on W1 and V1* on V1 W2, i.e. V2 pW1 + V1* (pW - pW1).
    ComplexMatrix U;
};
InteriorWandering interior_wandering(const StructuredPair& p);

struct StructureResiduals {
    double isometry = 0.0;   // max_i ||(Vi*Vi - I) on interior columns||_F
    double commutator = 0.0; // ||(V1V2 - V2V1) on interior columns||_F
};
StructureResiduals structure_residuals(const StructuredPair& p);

} // namespace isopair::models
