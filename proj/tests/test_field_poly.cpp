#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "billiard/poly.hpp"

using namespace billiard::exact;

namespace {

FieldScalar delta_15() { return FieldScalar::sqrt_of(mpq_class(61, 16)); }  // a = 3/2, b = 1

FieldPoly x() { return FieldPoly::var(X); }
FieldPoly y() { return FieldPoly::var(Y); }
FieldPoly u() { return FieldPoly::var(U); }

FieldPoly random_poly(std::mt19937_64& rng, const FieldScalar& d, int deg) {
    std::uniform_int_distribution<int> c(-5, 5), e(0, deg);
    FieldPoly p;
    for (int i = 0; i < 5; ++i)
        p += FieldPoly(FieldScalar(c(rng)) + FieldScalar(c(rng)) * d) * x().pow(e(rng)) * u().pow(e(rng));
    return p;
}

}  // namespace

TEST(Field, SqrtCanonicalForm) {
    FieldScalar d = delta_15();
    EXPECT_EQ(d.field()->radicand(), 61);
    EXPECT_EQ(d.p(), 0);
    EXPECT_EQ(d.q(), mpq_class(1, 4));
    EXPECT_NEAR(d.to_double(), std::sqrt(61.0) / 4, 1e-15);
    EXPECT_TRUE(FieldScalar::sqrt_of(mpq_class(9, 4)).is_rational());
    EXPECT_EQ(FieldScalar::sqrt_of(mpq_class(9, 4)), FieldScalar(mpq_class(3, 2)));
    EXPECT_EQ(FieldScalar::sqrt_of(mpq_class(12)).field()->radicand(), 3);
}

TEST(Field, Arithmetic) {
    FieldScalar d = delta_15();
    EXPECT_EQ(d * d, FieldScalar(mpq_class(61, 16)));
    FieldScalar z = FieldScalar(2) + d * 3;
    EXPECT_EQ(z / z, FieldScalar(1));
    EXPECT_EQ((z * z.conj()), FieldScalar(z.norm()));
    EXPECT_EQ(z.pow(3), z * z * z);
    EXPECT_TRUE((z - z).is_rational());
    EXPECT_TRUE((z - z).is_zero());
    EXPECT_NEAR((z * d).to_double(), z.to_double() * d.to_double(), 1e-14);
    EXPECT_THROW(FieldScalar(1) / FieldScalar(0), std::domain_error);
}

TEST(Field, ExactSign) {
    FieldScalar s61 = FieldScalar::sqrt_of(mpq_class(61));
    EXPECT_EQ((FieldScalar(5751) - s61 * 729).sign(), 1);
    EXPECT_EQ((FieldScalar(5751) - s61 * 737).sign(), -1);
    EXPECT_EQ(FieldScalar(0).sign(), 0);
}

TEST(Field, Mismatch) {
    FieldScalar a = FieldScalar::sqrt_of(mpq_class(2)), b = FieldScalar::sqrt_of(mpq_class(3));
    EXPECT_THROW(a + b, FieldMismatch);
    EXPECT_THROW(a * b, FieldMismatch);
    EXPECT_NO_THROW(a * FieldScalar(mpq_class(5, 7)));
}

TEST(Field, Str) {
    FieldScalar s61 = FieldScalar::sqrt_of(mpq_class(61));
    EXPECT_EQ((FieldScalar(-413) + s61 * 52).str(), "-413 + 52*sqrt(61)");
    EXPECT_EQ(FieldScalar(mpq_class(3, 2)).str(), "3/2");
}

TEST(Field, RationalReconstruction) {
    mpf_class v("0.142857142857142857142857142857", 256);
    mpq_class out;
    EXPECT_TRUE(reconstruct_rational(v, 1000, mpf_class("1e-20", 256), out));
    EXPECT_EQ(out, mpq_class(1, 7));
    mpf_class pi_ish("3.14159265358979323846264338327950288", 256);
    EXPECT_FALSE(reconstruct_rational(pi_ish, 1000, mpf_class("1e-25", 256), out));
}

TEST(Poly, DifferenceOfSquares) {
    FieldScalar d = delta_15();
    FieldPoly p = (x() + FieldPoly(d)) * (x() - FieldPoly(d));
    EXPECT_EQ(p, x().pow(2) - FieldPoly(FieldScalar(mpq_class(61, 16))));
    EXPECT_EQ(p.size(), 2u);
}

TEST(Poly, Primitive) {
    FieldPoly p = FieldPoly(6) * x().pow(2) + FieldPoly(10) * x();
    EXPECT_EQ(p.primitive(), FieldPoly(3) * x().pow(2) + FieldPoly(5) * x());
    FieldPoly q = FieldPoly(FieldScalar(mpq_class(-1, 2))) * x() + FieldPoly(FieldScalar(mpq_class(3, 4)));
    EXPECT_EQ(q.primitive(), FieldPoly(2) * x() - FieldPoly(3));
    FieldScalar d = delta_15();
    FieldPoly r = (FieldPoly(d) * x() + FieldPoly(FieldScalar(1) + d)).scaled(FieldScalar(mpq_class(12, 5)));
    FieldPoly rp = r.primitive();
    EXPECT_TRUE(r.divide(rp).has_value());
    EXPECT_EQ(rp.primitive(), rp);
}

TEST(Poly, NormalizedIsCanonical) {
    FieldScalar d = delta_15();
    FieldPoly c = FieldPoly(100) * x().pow(2) + FieldPoly(225) * y().pow(2) +
                  FieldPoly(FieldScalar(-413) + FieldScalar::sqrt_of(mpq_class(61)) * 52);
    FieldScalar unit = FieldScalar(3) + d * 5;
    EXPECT_EQ(c.scaled(unit).normalized(), c.normalized());
    EXPECT_EQ(c.scaled(FieldScalar(-7)).normalized(), c.normalized());
}

TEST(Poly, LexOrderAndDegrees) {
    FieldPoly p = x() * u().pow(5) + y().pow(3) + FieldPoly::var(S1, 2) * FieldPoly::var(W) + FieldPoly(4);
    EXPECT_EQ(p.leading().first, var_monomial(X, 1) + var_monomial(U, 5));
    EXPECT_EQ(p.degree(U), 5);
    EXPECT_EQ(p.degree(S1), 2);
    EXPECT_EQ(p.total_degree(), 6);
    EXPECT_EQ(p.constant(), FieldScalar(4));
    EXPECT_EQ(exponent(var_monomial(U, 8000), U), 8000);
    EXPECT_EQ(exponent(var_monomial(X, 1023) + var_monomial(Y, 2), X), 1023);
}

TEST(Poly, DegreeOverflow) {
    FieldPoly p = FieldPoly::var(U1, 20);
    EXPECT_THROW(p * p, DegreeBlowup);
}

TEST(Poly, SubstituteEvalDerivative) {
    FieldScalar d = delta_15();
    FieldPoly p = x().pow(3) * u() + FieldPoly(d) * u().pow(2) - FieldPoly(2);
    FieldPoly q = p.substitute(U, x() + FieldPoly(1));
    std::array<FieldScalar, kNumVars> at{};
    at[X] = FieldScalar(mpq_class(2, 3));
    at[U] = at[X] + FieldScalar(1);
    EXPECT_EQ(q.eval(at), p.eval(at));
    EXPECT_EQ(p.derivative(U), x().pow(3) + FieldPoly(d * 2) * u());
    EXPECT_EQ(p.negate_var(U).eval(at), p.substitute(U, -u()).eval(at));
    EXPECT_EQ(p.conj().conj(), p);
    std::array<double, kNumVars> ad{};
    ad[X] = 0.3;
    ad[U] = -1.7;
    EXPECT_NEAR(p.eval(ad), 0.027 * -1.7 + d.to_double() * 2.89 - 2, 1e-14);
}

TEST(Poly, CoeffsRoundTrip) {
    std::mt19937_64 rng(1);
    FieldScalar d = delta_15();
    for (int i = 0; i < 50; ++i) {
        FieldPoly p = random_poly(rng, d, 4);
        EXPECT_EQ(FieldPoly::from_coeffs(U, p.coeffs_in(U)), p);
        EXPECT_EQ(FieldPoly::from_coeffs(X, p.coeffs_in(X)), p);
    }
}

TEST(Poly, RingAxiomsOnRandomPolys) {
    std::mt19937_64 rng(2);
    FieldScalar d = delta_15();
    for (int i = 0; i < 50; ++i) {
        FieldPoly a = random_poly(rng, d, 3), b = random_poly(rng, d, 3), c = random_poly(rng, d, 3);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        if (!b.is_zero()) {
            auto q = (a * b).divide(b);
            ASSERT_TRUE(q.has_value());
            EXPECT_EQ(*q, a);
        }
    }
}

TEST(Poly, DivideRejectsNonMultiple) {
    FieldPoly a = x().pow(2) + FieldPoly(1), b = x() + FieldPoly(1);
    EXPECT_FALSE(a.divide(b).has_value());
}

TEST(Poly, MonomialContent) {
    FieldPoly p = x().pow(2) * u().pow(3) + x() * u().pow(5) * y();
    Monomial m = p.monomial_content({X, U});
    EXPECT_EQ(m, var_monomial(X, 1) + var_monomial(U, 3));
    EXPECT_EQ(p.monomial_content({Y}), 0u);
}

TEST(Poly, RelativeResidual) {
    FieldPoly c = x().pow(2) + y().pow(2) - FieldPoly(1);
    std::array<double, kNumVars> at{};
    at[X] = std::cos(0.3);
    at[Y] = std::sin(0.3);
    EXPECT_LT(c.relative_residual(at), 1e-15);
    at[X] = 2;
    EXPECT_GT(c.relative_residual(at), 0.1);
}

TEST(Univariate, GcdAndSquarefree) {
    FieldScalar d = delta_15();
    UPoly a = to_upoly((x() - FieldPoly(d)) * (x() + FieldPoly(1)).pow(2) * (x() - FieldPoly(2)).pow(3), X);
    auto sf = usquarefree(a);
    ASSERT_EQ(sf.size(), 3u);
    EXPECT_EQ(sf[0].second, 1);
    EXPECT_EQ(from_upoly(sf[0].first, X).normalized(), (x() - FieldPoly(d)).normalized());
    EXPECT_EQ(sf[1].second, 2);
    EXPECT_EQ(sf[2].second, 3);
    UPoly g = ugcd(a, uderivative(a));
    EXPECT_EQ(from_upoly(g, X), (x() + FieldPoly(1)) * (x() - FieldPoly(2)).pow(2));
    UPoly q, r;
    udivrem(a, g, q, r);
    EXPECT_TRUE(r.empty());
    EXPECT_EQ(ueval(a, d), FieldScalar(0));
}

TEST(Bivariate, Gcd) {
    FieldScalar d = delta_15();
    FieldPoly common = x().pow(2) * u() + FieldPoly(d) * x() - u().pow(2);
    FieldPoly a = common * (x() + u() + FieldPoly(1)), b = common * (x() * u() - FieldPoly(3));
    FieldPoly g = bivariate_gcd(a, b, X, U);
    EXPECT_EQ(g.normalized(), common.normalized());
    FieldPoly c = (u() - FieldPoly(2)) * (x() + FieldPoly(1));
    UPoly ct = content_in(c, U);
    EXPECT_EQ(from_upoly(ct, U).normalized(), (u() - FieldPoly(2)).normalized());
}

TEST(Bivariate, PerfectRoot) {
    FieldScalar d = delta_15();
    FieldPoly r = x().pow(2) * u() + FieldPoly(d) * x() - FieldPoly(3);
    auto k = perfect_root(r.pow(3).scaled(FieldScalar(5)), 3);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(k->normalized(), r.normalized());
    EXPECT_FALSE(perfect_root(r.pow(2) + FieldPoly(1), 2).has_value());
}
