#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "billiard/centers.hpp"
#include "billiard/core.hpp"
#include "billiard/poly.hpp"

namespace billiard::exact {

struct NotRational : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoVanishingFactor : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAConic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a > b > 0 given as exact rationals, e.g. "3/2".
struct RationalShape {
    mpq_class a, b;

    static RationalShape parse(const std::string& a, const std::string& b);
    Shape<double> to_double() const { return Shape<double>(a.get_d(), b.get_d()); }
};

// Exact constants of a rational shape in Q(delta).
struct ShapeConstants {
    mpq_class a, b, c2;
    FieldScalar delta, delta1_sq, rho1;

    explicit ShapeConstants(const RationalShape& s);
};

// P2 = (p2x, p2y) / q2 and P3 = (p3x, p3y) / q3 in (u, u1, w), with u = cos t, u1 = sin t, w = delta1 u2,
// u2^2 = 1 - rho1 u^2. P3 is P2 with w -> -w. Polynomials are kept unreduced.
struct VertexRationals {
    ShapeConstants k;
    FieldPoly x1, y1;
    FieldPoly p2x, p2y, q2, p3x, p3y, q3;

    // Reduces modulo u1^2 + u^2 - 1 and w^2 - delta1^2 (1 - rho1 u^2).
    FieldPoly reduce(const FieldPoly& p) const;
    // (u, u1, w) at parameter t on the branch matching orbit_at.
    std::array<double, kNumVars> point(double t, double x = 0, double y = 0) const;
};

VertexRationals vertex_rationals(const RationalShape& shape);

// g = A s^2 - C with A, C free of s.
struct SideRelation {
    Var s;
    FieldPoly g, A, C;
};

std::array<SideRelation, 3> side_polynomials(const VertexRationals& vr);

// Trilinears (p, q, r) of a rational center as polynomials in s1, s2, s3 (common denominators cleared).
std::array<FieldPoly, 3> trilinear_polynomials(const CenterSpec& spec);

enum class FactorKind { XOnly, YOnly, Conic, Cofactor };
const char* factor_kind_name(FactorKind k);

struct Factor {
    FieldPoly poly;
    int multiplicity = 1;
    FactorKind kind = FactorKind::Cofactor;
    double vanish_fraction = 0;  // share of samples with relative residual < 1e-8
    double max_residual = 0;
    double median_residual = 0;
    bool genuine = false;
};

// Splits L into x-only and y-only contents, exact centered conic factors and one remaining cofactor.
std::vector<Factor> factor_locus_polynomial(const FieldPoly& L);

struct FilterResult {
    std::vector<Factor> factors;  // all factors with residual statistics
    std::size_t genuine = 0;      // index into factors
};

FilterResult spurious_filter(std::vector<Factor> factors, const std::vector<Point>& samples);
FilterResult spurious_filter(const FieldPoly& L, const std::vector<Point>& samples);

// alpha x^2 + beta y^2 + gamma with alpha, beta > 0 > gamma (up to sign) -> (sqrt(-gamma/alpha), sqrt(-gamma/beta)).
std::pair<double, double> implicit_semiaxes(const FieldPoly& conic);

struct ChainStep {
    std::string name;
    std::array<int, kNumVars> e_degrees{}, f_degrees{};
    std::size_t e_terms = 0, f_terms = 0;
    double seconds = 0;
};

struct ChainOptions {
    std::size_t monomial_budget = 2'000'000;
    int samples = 200;
};

struct EliminationResult {
    std::string center;
    RationalShape shape;
    FieldPoly L;
    std::vector<Factor> factors;
    std::size_t genuine = 0;
    std::optional<std::pair<double, double>> semiaxes;
    std::vector<ChainStep> steps;
    double seconds = 0;

    const Factor& genuine_factor() const { return factors.at(genuine); }
};

// E0 = x * den - num_x, F0 = y * den - num_y after substituting the trilinears, reduced.
std::pair<FieldPoly, FieldPoly> locus_equations(const CenterSpec& spec, const VertexRationals& vr);

EliminationResult eliminate_chain(const CenterSpec& spec, const RationalShape& shape, const ChainOptions& opt = {});

// Plain-text report with factors in canonical monomial order.
std::string report(const EliminationResult& r);

}  // namespace billiard::exact
