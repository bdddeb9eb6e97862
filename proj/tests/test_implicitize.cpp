#include <gtest/gtest.h>

#include <cmath>

#include "billiard/catalog.hpp"
#include "billiard/implicitize.hpp"
#include "billiard/locus.hpp"

using namespace billiard;
using namespace billiard::exact;

namespace {

const RationalShape kShape = RationalShape::parse("3/2", "1");

FieldPoly x() { return FieldPoly::var(X); }
FieldPoly y() { return FieldPoly::var(Y); }
FieldScalar s61() { return FieldScalar::sqrt_of(mpq_class(61)); }
FieldPoly c(long p, long q = 0) { return FieldPoly(FieldScalar(p) + s61() * FieldScalar(q)); }

FieldPoly x2_conic() { return c(100) * x().pow(2) + c(225) * y().pow(2) + c(-413, 52); }
FieldPoly x3_conic() { return c(5832) * x().pow(2) + c(2752, -320) * y().pow(2) + c(-5751, 729); }

std::vector<Point> samples(const char* id, int M = 200) {
    return sample_locus(kShape.to_double(), CenterCatalog::builtin().center(id), M).points();
}

}  // namespace

TEST(RationalShapeTest, Parse) {
    auto s = RationalShape::parse("3/2", "1");
    EXPECT_EQ(s.a, mpq_class(3, 2));
    EXPECT_EQ(RationalShape::parse("1.25", "1").a, mpq_class(5, 4));
    EXPECT_THROW(RationalShape::parse("1", "1"), DegenerateShape);
    EXPECT_THROW(RationalShape::parse("x", "1"), std::invalid_argument);
}

TEST(VertexRationalsTest, Constants) {
    ShapeConstants k(kShape);
    EXPECT_EQ(k.delta, FieldScalar::sqrt_of(mpq_class(61, 16)));
    EXPECT_EQ(k.delta.field()->radicand(), 61);
    EXPECT_NEAR(k.rho1.to_double(), 0.95666665, 1e-8);
    FieldScalar db = k.delta - FieldScalar(k.b * k.b);
    EXPECT_EQ(k.rho1, FieldScalar(k.c2 * k.c2 * k.c2) / (FieldScalar(k.a * k.a) * db * db));
    EXPECT_EQ(k.c2, mpq_class(5, 4));
}

TEST(VertexRationalsTest, Degrees) {
    auto vr = vertex_rationals(kShape);
    EXPECT_EQ(vr.q2.degree(U), 4);
    EXPECT_EQ(vr.q3.degree(U), 4);
    EXPECT_EQ(vr.p3x, vr.p2x.negate_var(W));
    EXPECT_LE(vr.reduce(vr.q2).degree(U1), 1);
    EXPECT_LE(vr.reduce(vr.q2).degree(W), 1);
}

TEST(VertexRationalsTest, MatchesOrbit) {
    auto vr = vertex_rationals(kShape);
    Shape<double> sh = kShape.to_double();
    for (double t : {0.4, 1.3, 2.2, 3.9, 5.5}) {
        auto at = vr.point(t);
        auto o = orbit_at(sh, t);
        double q2 = vr.q2.eval(at), q3 = vr.q3.eval(at);
        EXPECT_NEAR(vr.p2x.eval(at) / q2, o.P2.x, 1e-10) << t;
        EXPECT_NEAR(vr.p2y.eval(at) / q2, o.P2.y, 1e-10) << t;
        EXPECT_NEAR(vr.p3x.eval(at) / q3, o.P3.x, 1e-10) << t;
        EXPECT_NEAR(vr.p3y.eval(at) / q3, o.P3.y, 1e-10) << t;
        EXPECT_NEAR(vr.reduce(vr.p2x).eval(at) / vr.reduce(vr.q2).eval(at), o.P2.x, 1e-10) << t;
    }
}

TEST(SidePolynomials, VanishOnOrbits) {
    auto vr = vertex_rationals(kShape);
    auto sides = side_polynomials(vr);
    Shape<double> sh = kShape.to_double();
    for (int k = 0; k < 50; ++k) {
        double t = 0.1257 * k + 0.03;
        auto at = vr.point(t);
        auto o = orbit_at(sh, t);
        at[S1] = o.s1;
        at[S2] = o.s2;
        at[S3] = o.s3;
        for (auto& s : sides) EXPECT_LT(s.g.relative_residual(at), 1e-9) << t;
    }
}

TEST(SidePolynomials, MirrorSwapsTwoAndThree) {
    auto vr = vertex_rationals(kShape);
    auto sides = side_polynomials(vr);
    // g3 is g2 with w -> -w
    EXPECT_EQ(sides[2].A, sides[1].A.negate_var(W));
    EXPECT_EQ(sides[2].C, sides[1].C.negate_var(W));
    EXPECT_EQ(sides[0].g, sides[0].g.negate_var(W));
}

TEST(SidePolynomials, Degrees) {
    auto sides = side_polynomials(vertex_rationals(kShape));
    EXPECT_EQ(sides[0].g.degree(S1), 2);
    EXPECT_EQ(sides[0].g.total_degree(), 14);
    EXPECT_FALSE(sides[0].g.uses(W));
    for (int i : {1, 2}) {
        EXPECT_EQ(sides[i].g.degree(sides[i].s), 2);
        EXPECT_EQ(sides[i].g.total_degree(), 8);
        EXPECT_EQ(sides[i].g.degree(U1), 1);
        EXPECT_EQ(sides[i].g.degree(W), 1);
    }
}

TEST(Trilinears, Polynomials) {
    auto t = trilinear_polynomials(CenterCatalog::builtin().center("X2"));
    // 1/s1 : 1/s2 : 1/s3 cleared of denominators
    EXPECT_EQ(t[0].normalized(), (FieldPoly::var(S2) * FieldPoly::var(S3)).normalized());
    EXPECT_THROW(trilinear_polynomials(CenterCatalog::builtin().center("X13")), NotRational);
}

TEST(LocusEquations, VanishOnSamples) {
    auto vr = vertex_rationals(kShape);
    Shape<double> sh = kShape.to_double();
    for (const char* id : {"X1", "X3", "X6"}) {
        auto [E, F] = locus_equations(CenterCatalog::builtin().center(id), vr);
        for (int k = 0; k < 20; ++k) {
            double t = 0.3 * k + 0.05;
            auto o = orbit_at(sh, t);
            Point p = center_position(CenterCatalog::builtin().center(id), o);
            auto at = vr.point(t, p.x, p.y);
            at[S1] = o.s1;
            at[S2] = o.s2;
            at[S3] = o.s3;
            EXPECT_LT(E.relative_residual(at), 1e-9) << id << " " << t;
            EXPECT_LT(F.relative_residual(at), 1e-9) << id << " " << t;
        }
    }
}

TEST(ImplicitSemiAxes, Basics) {
    auto [a, b] = implicit_semiaxes(x().pow(2) + y().pow(2) - FieldPoly(1));
    EXPECT_DOUBLE_EQ(a, 1);
    EXPECT_DOUBLE_EQ(b, 1);
    auto [a2, b2] = implicit_semiaxes(x2_conic());
    EXPECT_NEAR(a2, 0.26205, 5e-6);
    EXPECT_NEAR(b2, 0.17470, 5e-6);
    EXPECT_THROW(implicit_semiaxes(x().pow(2) + x() * y() - FieldPoly(1)), NotAConic);
    EXPECT_THROW(implicit_semiaxes(x().pow(2) + y().pow(2) + FieldPoly(1)), NotAConic);
}

TEST(Factorization, SplitsSyntheticX2) {
    FieldPoly spurious = c(91500) * x().pow(2) + c(-370993, 49922);
    FieldPoly L = x2_conic().pow(3) * spurious.pow(2);
    auto f = factor_locus_polynomial(L);
    FieldPoly back(1);
    for (auto& fa : f) back *= fa.poly.pow(fa.multiplicity);
    EXPECT_EQ(back.normalized(), L.normalized());
    bool conic = false, xonly = false;
    for (auto& fa : f) {
        if (fa.kind == FactorKind::Conic && fa.poly == x2_conic().normalized() && fa.multiplicity == 3) conic = true;
        if (fa.kind == FactorKind::XOnly && fa.poly == spurious.normalized() && fa.multiplicity == 2) xonly = true;
    }
    EXPECT_TRUE(conic);
    EXPECT_TRUE(xonly);
}

TEST(SpuriousFilter, RejectsX2SpuriousFactor) {
    FieldPoly L = x2_conic().pow(3) * (c(91500) * x().pow(2) + c(-370993, 49922)).pow(2);
    auto fr = spurious_filter(L, samples("X2"));
    const auto& g = fr.factors[fr.genuine];
    EXPECT_EQ(g.poly, x2_conic().normalized());
    EXPECT_EQ(g.multiplicity, 3);
    EXPECT_GE(g.vanish_fraction, 0.95);
    for (std::size_t i = 0; i < fr.factors.size(); ++i)
        if (i != fr.genuine) EXPECT_LT(fr.factors[i].vanish_fraction, 0.95);
}

TEST(SpuriousFilter, RejectsX3SpuriousFactors) {
    FieldPoly L = x3_conic().pow(3) * x() * (c(3600) * x().pow(4) + c(-6380) * x().pow(2) + c(-1539)) *
                  (c(40) * x().pow(2) + c(-43, 5)).pow(2) * (c(-1104500) * y().pow(2) + c(-4633685, 591136)).pow(2) *
                  (c(65880) * x().pow(2) + c(-64649, 8527)).pow(6);
    auto fr = spurious_filter(L, samples("X3"));
    const auto& g = fr.factors[fr.genuine];
    EXPECT_EQ(g.poly, x3_conic().normalized());
    EXPECT_EQ(g.kind, FactorKind::Conic);
    int rejected = 0;
    for (std::size_t i = 0; i < fr.factors.size(); ++i)
        if (i != fr.genuine) {
            EXPECT_LT(fr.factors[i].vanish_fraction, 0.95);
            ++rejected;
        }
    EXPECT_GE(rejected, 4);
    auto [a, b] = implicit_semiaxes(g.poly);
    EXPECT_NEAR(a, 0.099146, 5e-7);
    EXPECT_NEAR(b, 0.4763, 5e-5);
}

TEST(SpuriousFilter, PureConic) {
    auto fr = spurious_filter(x2_conic(), samples("X2"));
    ASSERT_EQ(fr.factors.size(), 1u);
    EXPECT_EQ(fr.genuine, 0u);
    EXPECT_EQ(fr.factors[0].multiplicity, 1);
}

TEST(SpuriousFilter, NothingVanishes) {
    EXPECT_THROW(spurious_filter(x3_conic(), samples("X2")), NoVanishingFactor);
    EXPECT_THROW(spurious_filter(x2_conic(), samples("X2", 10)), std::invalid_argument);
}

TEST(Chain, Centroid) {
    auto r = eliminate_chain(CenterCatalog::builtin().center("X2"), kShape);
    const auto& g = r.genuine_factor();
    EXPECT_EQ(g.poly, x2_conic().normalized());
    EXPECT_EQ(g.kind, FactorKind::Conic);
    ASSERT_TRUE(r.semiaxes.has_value());
    auto [ai, bi] = SemiAxesCatalog::builtin().semiaxes<double>("X2", kShape.to_double());
    EXPECT_NEAR(r.semiaxes->first, ai, 1e-9);
    EXPECT_NEAR(r.semiaxes->second, bi, 1e-9);
    FieldPoly back(1);
    for (auto& f : r.factors) back *= f.poly.pow(f.multiplicity);
    EXPECT_EQ(back.normalized(), r.L.normalized());
    EXPECT_NE(report(r).find("100*x^2 + 225*y^2 + (-413 + 52*sqrt(61))"), std::string::npos);
}

TEST(Chain, CircumcenterSoundness) {
    auto r = eliminate_chain(CenterCatalog::builtin().center("X3"), kShape);
    auto pts = samples("X3", 200);
    for (auto& p : pts) {
        std::array<double, kNumVars> at{};
        at[X] = p.x;
        at[Y] = p.y;
        EXPECT_LT(r.L.relative_residual(at), 1e-8);
    }
    EXPECT_EQ(r.genuine_factor().poly, x3_conic().normalized());
    auto [ai, bi] = SemiAxesCatalog::builtin().semiaxes<double>("X3", kShape.to_double());
    ASSERT_TRUE(r.semiaxes.has_value());
    EXPECT_NEAR(r.semiaxes->first, ai, 1e-9);
    EXPECT_NEAR(r.semiaxes->second, bi, 1e-9);
}

TEST(Chain, RejectsIrrationalCenters) {
    EXPECT_THROW(eliminate_chain(CenterCatalog::builtin().center("X13"), kShape), NotRational);
}

TEST(Chain, BudgetExceeded) {
    ChainOptions opt;
    opt.monomial_budget = 50;
    EXPECT_THROW(eliminate_chain(CenterCatalog::builtin().center("X3"), kShape, opt), DegreeBlowup);
}
