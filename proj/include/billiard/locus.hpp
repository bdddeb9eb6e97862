#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "billiard/centers.hpp"
#include "billiard/core.hpp"

namespace billiard {

struct TooManyPoles : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PassesThroughPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LocusSample {
    double t, x, y;
};

struct LocusSamples {
    std::string center;
    double a = 0, b = 0;
    int M = 0;
    std::vector<LocusSample> samples;
    std::vector<double> dropped;

    std::vector<Point> points() const;
};

using OrbitMap = std::function<Point(const OrbitTriangle<double>&)>;

// t_k = t0 + (t1 - t0) k / M for k = 0..M-1; samples whose evaluation fails are dropped.
LocusSamples sample_map(const Shape<double>& shape, const OrbitMap& f, int M, double t0, double t1,
                        double max_drop_fraction = 0.01);

LocusSamples sample_locus(const Shape<double>& shape, const CenterSpec& spec, int M);
LocusSamples sample_locus(const Shape<double>& shape, const CenterSpec& spec, int M, double t0, double t1);

// Same grid evaluated in 50-digit arithmetic, rounded to double at the end.
LocusSamples sample_locus_hp(const Shape<hp_float>& shape, const CenterSpec& spec, int M);

struct EllipseFit {
    double a_hat = 0, b_hat = 0;
    double ss = 0;   // minimized sum of squared implicit residuals
    double err = 0;  // sqrt(ss), the tabulated fit error
    std::size_t m_used = 0;
    bool degenerate = false;
};

struct DegenerateFit : std::runtime_error {
    EllipseFit fit;
    explicit DegenerateFit(const EllipseFit& f) : std::runtime_error("degenerate ellipse fit"), fit(f) {}
};

// Least squares in (u, v) = (1/a^2, 1/b^2). Degenerate fits report the minimum over u, v >= 0.
EllipseFit try_fit_concentric_ellipse(std::span<const Point> pts);
EllipseFit fit_concentric_ellipse(std::span<const Point> pts);

enum class LocusClass { Elliptic, NonElliptic, Degenerate };
const char* class_name(LocusClass c);

LocusClass classify_locus(const EllipseFit& fit, double threshold = 1e-8);

struct CenterFit {
    LocusSamples locus;
    EllipseFit fit;
    LocusClass cls = LocusClass::Degenerate;
    bool at_infinity = false;  // every sample hit the line at infinity
};

// Samples over [0, 2 pi), fits and classifies. Loci at infinity come back degenerate with ss = M.
CenterFit classify_center(const Shape<double>& shape, const CenterSpec& spec, int M, double threshold = 1e-8);

// Total signed angle about `about` divided by 2 pi, rounded.
int winding_number(std::span<const Point> closed, Point about);
// Adaptive version: probes the midpoint of every step and bisects while a half-step reaches pi/2, up to 20 levels.
int winding_number(const std::function<Point(double)>& curve, double t0, double t1, int M, Point about);

struct ConvexCombination {
    LocusSamples locus;
    double rho_star;
};

ConvexCombination convex_combination_locus(const Shape<double>& shape, const LocusSamples& base,
                                           const LocusSamples& target, double rho);

struct QuarticX6 {
    double c1, c2, c3, c4, c5;
    double a6, b6;
    double delta;

    double eval(double x, double y) const;
    // |Q(x,y)| / (|c1 x^4| + |c2 y^4| + |c3 x^2 y^2| + |c4 x^2| + |c5 y^2|)
    double relative_residual(double x, double y) const;
    double area(int n = 20000) const;
    double area_ratio(int n = 20000) const;
};

QuarticX6 x6_quartic(const Shape<double>& shape);

int self_intersections(std::span<const Point> closed);
int line_intersections(std::span<const Point> closed, Point p0, Point dir);

// Worker count from BILLIARD_WORKERS, falling back to the hardware thread count.
unsigned worker_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace billiard
