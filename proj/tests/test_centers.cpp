#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "billiard/catalog.hpp"
#include "billiard/centers.hpp"

using namespace billiard;

namespace {

const CenterCatalog& cat() { return CenterCatalog::builtin(); }

struct Sides {
    double s1, s2, s3, A;
};

Sides random_triangle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> r(0.3, 2.0);
    while (true) {
        double s1 = r(rng), s2 = r(rng), s3 = r(rng);
        if (s1 + s2 > s3 * 1.05 && s2 + s3 > s1 * 1.05 && s3 + s1 > s2 * 1.05) {
            double p = (s1 + s2 + s3) / 2;
            return {s1, s2, s3, std::sqrt(p * (p - s1) * (p - s2) * (p - s3))};
        }
    }
}

double h(const CenterSpec& c, double s1, double s2, double s3, double A) {
    std::array<double, 4> v{s1, s2, s3, A};
    return c.h.eval<double>(std::span<const double>(v));
}

}  // namespace

TEST(Catalog, ShipsHundredCentersAndFourTriangles) {
    EXPECT_EQ(cat().ids().size(), 100u);
    for (int i = 1; i <= 100; ++i) EXPECT_TRUE(cat().has("X" + std::to_string(i))) << i;
    for (const char* t : {"excentral", "medial", "intouch", "extouch"}) EXPECT_NO_THROW(cat().triangle(t));
    EXPECT_THROW(cat().center("X101"), std::out_of_range);
}

TEST(Catalog, NormalizeId) {
    EXPECT_EQ(normalize_id("X12"), "X12");
    EXPECT_EQ(normalize_id("x12"), "X12");
    EXPECT_EQ(normalize_id("12"), "X12");
}

TEST(Catalog, PrintParseRoundTrip) {
    std::string once = cat().print();
    CenterCatalog again = CenterCatalog::parse(once);
    EXPECT_EQ(again.print(), once);
    EXPECT_EQ(again.ids(), cat().ids());
}

TEST(Catalog, RejectsBadRecords) {
    EXPECT_THROW(CenterCatalog::parse("[X1]\nkind = rational-h\nh = 1/(s1\n"), std::invalid_argument);
    EXPECT_THROW(CenterCatalog::parse("[X1]\nkind = weird\nh = 1\n"), std::invalid_argument);
}

TEST(Trilinears, TableExamples) {
    auto t1 = trilinears(cat().center("X1"), 3.0, 4.0, 5.0, 6.0);
    EXPECT_DOUBLE_EQ(t1.p, 1);
    EXPECT_DOUBLE_EQ(t1.q, 1);
    EXPECT_DOUBLE_EQ(t1.r, 1);
    auto t2 = trilinears(cat().center("X2"), 3.0, 4.0, 5.0, 6.0);
    EXPECT_DOUBLE_EQ(t2.p, 1.0 / 3);
    EXPECT_DOUBLE_EQ(t2.q, 1.0 / 4);
    EXPECT_DOUBLE_EQ(t2.r, 1.0 / 5);
    auto t9 = trilinears(cat().center("X9"), 3.0, 4.0, 5.0, 6.0);
    EXPECT_DOUBLE_EQ(t9.q / t9.p, 4.0 / 6);
    EXPECT_DOUBLE_EQ(t9.r / t9.p, 2.0 / 6);
}

TEST(Trilinears, PoleOnIsosceles) {
    EXPECT_THROW(trilinears(cat().center("X100"), 3.0, 4.0, 4.0, 5.5), PoleAtConfiguration);
}

TEST(Trilinears, BiSymmetricAndHomogeneous) {
    std::mt19937_64 rng(3);
    for (const auto& id : cat().ids()) {
        const auto& c = cat().center(id);
        if (c.kind == CenterKind::MatrixRow) continue;
        for (int i = 0; i < 100; ++i) {
            Sides s = random_triangle(rng);
            double v = h(c, s.s1, s.s2, s.s3, s.A);
            if (!std::isfinite(v) || std::abs(v) < 1e-9) continue;
            double sw = h(c, s.s1, s.s3, s.s2, s.A);
            // X99 and X100 are antisymmetric: same projective point
            EXPECT_NEAR(std::abs(sw / v), 1.0, 1e-9) << id;
            double k = 1.7;
            double sc = h(c, k * s.s1, k * s.s2, k * s.s3, k * k * s.A);
            double n = std::log(std::abs(sc / v)) / std::log(k);
            EXPECT_NEAR(n, std::round(n), 1e-9) << id;
            Sides o = random_triangle(rng);
            double v2 = h(c, o.s1, o.s2, o.s3, o.A), sc2 = h(c, k * o.s1, k * o.s2, k * o.s3, k * k * o.A);
            if (std::isfinite(v2) && std::abs(v2) > 1e-9)
                EXPECT_NEAR(std::log(std::abs(sc2 / v2)) / std::log(k), std::round(n), 1e-9) << id;
        }
    }
}

TEST(Cartesian, CentroidAndScaleInvariance) {
    Shape<double> s(1.5, 1.0);
    auto o = orbit_at(s, 0.7);
    Trilinear<double> t{1 / o.s1, 1 / o.s2, 1 / o.s3};
    Point g = trilinear_to_cartesian(o, t);
    Point want = (o.P1 + o.P2 + o.P3) / 3.0;
    EXPECT_NEAR(g.x, want.x, 1e-15);
    EXPECT_NEAR(g.y, want.y, 1e-15);
    Point g7 = trilinear_to_cartesian(o, Trilinear<double>{7 / o.s1, 7 / o.s2, 7 / o.s3});
    EXPECT_NEAR(g7.x, g.x, 1e-15);
    EXPECT_NEAR(g7.y, g.y, 1e-15);
}

TEST(Cartesian, EquilateralIncenterIsCentroid) {
    double r3 = std::sqrt(3.0);
    auto tri = triangle_from(Point{0, 0}, Point{2, 0}, Point{1, r3});
    Point p = trilinear_to_cartesian(tri, Trilinear<double>{1, 1, 1});
    EXPECT_NEAR(p.x, 1, 1e-15);
    EXPECT_NEAR(p.y, r3 / 3, 1e-15);
}

TEST(Cartesian, LineAtInfinity) {
    auto tri = triangle_from(Point{0, 0}, Point{2, 0}, Point{1, 1});
    Trilinear<double> t{1 / tri.s1, -1 / tri.s2, 0};
    EXPECT_THROW(trilinear_to_cartesian(tri, t), LineAtInfinity);
}

TEST(CenterPosition, MittenpunktAtOrigin) {
    Shape<double> s(1.5, 1.0);
    for (int k = 0; k < 200; ++k) {
        Point p = center_position(cat().center("X9"), orbit_at(s, 0.031 * k + 0.01));
        EXPECT_NEAR(p.x, 0, 1e-10);
        EXPECT_NEAR(p.y, 0, 1e-10);
    }
}

TEST(CenterPosition, IncenterVertexValue) {
    Shape<double> s(1.5, 1.0);
    Point p = center_position(cat().center("X1"), orbit_at(s, 0.0));
    EXPECT_NEAR(std::abs(p.x), 0.63504, 1e-5);
    EXPECT_NEAR(p.y, 0, 1e-14);
}

TEST(CenterPosition, X100OnBilliard) {
    Shape<double> s(1.5, 1.0);
    for (int k = 0; k < 200; ++k) {
        Point p = center_position(cat().center("X100"), orbit_at(s, 0.031 * k + 0.013));
        EXPECT_LT(std::abs(s.boundary_residual(p)), 1e-9);
    }
}

TEST(CenterPosition, SimilarityCovariance) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> r(-1, 1);
    for (const auto& id : cat().ids()) {
        const auto& c = cat().center(id);
        auto tri = triangle_from(Point{0.1, 0.2}, Point{1.9, 0.1}, Point{0.7, 1.3});
        double th = 0.83, k = 1.6;
        auto move = [&](Point p, bool mirror) {
            if (mirror) p.y = -p.y;
            return Point{k * (std::cos(th) * p.x - std::sin(th) * p.y) + 0.3,
                         k * (std::sin(th) * p.x + std::cos(th) * p.y) - 0.4};
        };
        for (bool mirror : {false, true}) {
            Point x;
            try {
                x = center_position(c, tri);
            } catch (const std::exception&) {
                continue;
            }
            auto img = triangle_from(move(tri.P1, mirror), move(tri.P2, mirror), move(tri.P3, mirror));
            Point y = center_position(c, img), want = move(x, mirror);
            double scale = 1 + want.norm();
            EXPECT_NEAR(y.x, want.x, 1e-12 * scale) << id;
            EXPECT_NEAR(y.y, want.y, 1e-12 * scale) << id;
        }
    }
}

TEST(CenterPosition, AxisMirrorSymmetry) {
    Shape<double> s(1.5, 1.0);
    for (const char* id : {"X1", "X3", "X6", "X59", "X13"}) {
        const auto& c = cat().center(id);
        for (double t : {0.3, 0.9, 2.1}) {
            Point p = center_position(c, orbit_at(s, t));
            Point m = center_position(c, orbit_at(s, -t));
            Point n = center_position(c, orbit_at(s, pi<double>() - t));
            EXPECT_NEAR(m.x, p.x, 1e-10) << id;
            EXPECT_NEAR(m.y, -p.y, 1e-10) << id;
            EXPECT_NEAR(n.x, -p.x, 1e-10) << id;
            EXPECT_NEAR(n.y, p.y, 1e-10) << id;
        }
    }
}

TEST(DerivedTriangle, MedialMidpoint) {
    Shape<double> s(1.5, 1.0);
    auto o = orbit_at(s, 1.1);
    Point m = derived_vertex(cat().triangle("medial"), 1, o);
    Point want = (o.P2 + o.P3) / 2.0;
    EXPECT_NEAR(m.x, want.x, 1e-14);
    EXPECT_NEAR(m.y, want.y, 1e-14);
    EXPECT_THROW(derived_vertex(cat().triangle("medial"), 4, o), std::out_of_range);
}

TEST(DerivedTriangle, IntouchVertexOnAxisAtZero) {
    Shape<double> s(1.5, 1.0);
    auto o = orbit_at(s, 0.0);
    int on_axis = 0;
    for (int r = 1; r <= 3; ++r)
        if (std::abs(derived_vertex(cat().triangle("intouch"), r, o).y) < 1e-12) ++on_axis;
    EXPECT_EQ(on_axis, 1);
}

TEST(DerivedTriangle, ExtouchOnCaustic) {
    Shape<double> s(1.5, 1.0);
    for (int k = 0; k < 1500; ++k) {
        auto o = orbit_at(s, 2 * pi<double>() * k / 1500);
        for (int r = 1; r <= 3; ++r) {
            Point p = derived_vertex(cat().triangle("extouch"), r, o);
            double q = p.x * p.x / (s.caustic_a() * s.caustic_a()) + p.y * p.y / (s.caustic_b() * s.caustic_b());
            ASSERT_NEAR(q, 1.0, 1e-9) << k << " " << r;
        }
    }
}
