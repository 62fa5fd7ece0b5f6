#pragma once

#include <array>
#include <string>
#include <vector>

// Closed forms for the Macbeath model as commonly written; these are the
// comparison targets, never inputs to a derivation.
namespace fmd::catalog {

const std::vector<std::string>& curve_vars();
const std::vector<std::string>& z2_vars();
const std::vector<std::string>& z1_vars();

// Components of f_{sigma^k}: X -> X^{sigma^k}, k = 1..5.
std::vector<std::string> weil_map(int k);
// Sign change of y_j, j in {1, 2, 4}.
std::vector<std::string> involution_a(int j);
std::vector<std::string> rotation_b();
// Algebraic part of the anticonformal involution (applied after conjugation).
std::vector<std::string> involution_j();
std::string belyi_beta();
std::string belyi_delta();
std::string belyi_beta_star();

std::vector<std::string> l1_star();
std::string x3_numerator();
std::string x3_denominator();
std::string x4_numerator();
std::string x4_denominator();

std::string p1();
std::string p2();
std::string appendix_p3();
std::string appendix_p4();

struct Equation {
    std::string lhs, rhs;
};
// Linear and monomial relations listed for the twelve-coordinate model.
std::vector<Equation> z1_relations();

// Listed invariant polynomials: t1..t12 of the first step, q1..q10 of the
// second step and the twelve candidates over six blocks.
std::vector<std::string> step1_invariants();
std::vector<std::string> step2_invariants();
std::vector<std::string> six_block_candidates();

// Index pairs of synonymous coordinates in the quadratic-invariant listing
// of the second step.
std::vector<std::string> psi2_listing();

// Homology cover data.
std::vector<std::vector<int>> kstar_generators();
// Exponent vectors in x1..x6 of the invariant monomials t1..t13.
std::vector<std::array<int, 6>> homology_invariants();
// Monomial relations among t1..t13 as (lhs, rhs) in the t variables.
std::vector<Equation> homology_relations();

}  // namespace fmd::catalog
