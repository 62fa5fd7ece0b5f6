#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fmd/curve.hpp"

namespace fmd {

using cplx = std::complex<double>;

cplx embed(const CycScalar& a);

struct EmbeddedPoint {
    std::array<cplx, 4> coords;  // x, y1, y2, y4
    int branch = 0;              // sign bits for y1, y2, y4
    std::string x_text;
    std::vector<cplx> vec() const { return {coords.begin(), coords.end()}; }
};

// count distinct rational abscissae, each with all 8 sign branches.
std::vector<EmbeddedPoint> sample_points(const CurveSpec& spec, int count, uint64_t seed);
double curve_residual(const CurveSpec& spec, const EmbeddedPoint& p);

double rel_diff(cplx a, cplx b);
double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b);
// |P(v)| relative to the sum of term magnitudes.
double poly_residual(const MultiPoly& p, const std::vector<cplx>& v);

// Residual of a claim at one point; nullopt marks a pole or non-finite value.
using Claim = std::function<std::optional<double>(const EmbeddedPoint&)>;

struct ClaimResult {
    std::string id;
    double max_residual = 0;
    int evaluated = 0, skipped = 0;
    bool pass = false;
};

ClaimResult verify_numeric(const std::string& id, const Claim& claim, const std::vector<EmbeddedPoint>& points,
                           double tolerance);

// Maps that need no conjugation apply directly; conjugation twists act on
// coordinates by complex conjugation.
std::optional<std::vector<cplx>> apply_map(const SemiMap& m, const std::vector<cplx>& v);

}  // namespace fmd
