#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmd/multipoly.hpp"

namespace fmd {

// Product of a_1..a_7 as a bit vector in F2^7 modulo the all-ones vector.
class DeckVec {
public:
    DeckVec() = default;
    static DeckVec a(int j);
    static DeckVec of(const std::vector<int>& indices);
    uint8_t bits() const { return bits_; }
    // Representative of weight at most 3.
    uint8_t canonical() const;
    bool is_identity() const { return canonical() == 0; }
    DeckVec operator*(const DeckVec& o) const { return from_bits(bits_ ^ o.bits_); }
    bool operator==(const DeckVec& o) const { return canonical() == o.canonical(); }
    bool operator!=(const DeckVec& o) const { return !(*this == o); }
    // i -> i+1 mod 7
    DeckVec shifted() const;
    // Index j when this is a_j, else 0.
    int single_index() const;
    std::string name() const;
    // Sign pattern on x1..x6 in the chart x7 = 1.
    std::array<int, 6> affine_pattern() const;
    static DeckVec from_bits(uint8_t b) {
        DeckVec d;
        d.bits_ = b & 0x7F;
        return d;
    }

private:
    uint8_t bits_ = 0;
};

std::vector<DeckVec> deck_group();
std::vector<DeckVec> span(const std::vector<DeckVec>& gens);

struct FreenessResult {
    bool free = true;
    std::optional<DeckVec> witness;
};
FreenessResult freeness_check(const std::vector<DeckVec>& gens);
bool normalization_check(const std::vector<DeckVec>& gens);

struct EllipticTriple {
    int i, j, r;
    std::vector<int> quartic_roots;  // indices k not in {i, j, r}
    UPoly quartic;
};
// Throws DomainError when no unique r exists.
EllipticTriple elliptic_triple(const std::vector<DeckVec>& k, int i, int j, const std::array<CycScalar, 7>& lambda);

using InvariantMonomial = std::array<int, 6>;
bool invariance_check(const InvariantMonomial& m, const std::vector<DeckVec>& gens);

// Five quadrics mu_k x1^2 + x2^2 + x_k^2 = 0 (k = 3..7) and the cover
// P = (x2^2 + x1^2) / (x2^2 + lambda_7 x1^2).
struct HumbertSpec {
    std::array<CycScalar, 7> lambda;
    std::array<CycScalar, 5> mu;
    std::string label;
    // Coefficient 1 on the first quadric, (lambda_{k-1} - 1)/(lambda_k - 1) after.
    static HumbertSpec displayed();
    // Coefficients chosen so that the fixed points of a_k lie over lambda_k.
    static HumbertSpec corrected();
    CycScalar quadric_coeff(int k) const { return mu[k - 3]; }
    // Image under P of the fixed points of a_j; nullopt for infinity.
    std::optional<CycScalar> branch_value(int j) const;
};

struct LiftResult {
    bool consistent = false;
    int rank = 0;
    std::vector<std::string> failing;  // constraints violated by the best partial solution
    std::array<CycScalar, 7> c_squared;
    std::array<std::optional<CycScalar>, 7> c_exact;
    std::array<std::complex<double>, 7> c_numeric;
    bool quadrics_preserved = false;
    bool rotates_cover = false;
    bool seventh_power_scalar = false;
};
LiftResult solve_lift_constants(const HumbertSpec& h);

struct RelationCheck {
    std::string text;
    bool pass = false;
    std::string detail;
};
std::vector<std::string> homology_t_vars();
std::vector<RelationCheck> relation_check(const HumbertSpec& h);
// Linear relations from the quadrics and the monomial relations, over t1..t13.
std::vector<MultiPoly> emit_affine_model(const HumbertSpec& h);

// Random points of the chart x7 = 1 satisfying the quadrics.
std::vector<std::array<std::complex<double>, 7>> humbert_samples(const HumbertSpec& h, int count, uint64_t seed);

// In polynomials over Q(zeta_7): exact Gaussian elimination; returns a
// nullspace basis of the rows.
std::vector<std::vector<CycScalar>> nullspace(std::vector<std::vector<CycScalar>> rows, int ncols, int* rank = nullptr);

}  // namespace fmd
