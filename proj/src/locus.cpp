#include "billiard/locus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace billiard {

std::vector<Point> LocusSamples::points() const {
    std::vector<Point> p;
    p.reserve(samples.size());
    for (auto& s : samples) p.push_back({s.x, s.y});
    return p;
}

LocusSamples sample_map(const Shape<double>& shape, const OrbitMap& f, int M, double t0, double t1,
                        double max_drop_fraction) {
    if (M < 8) throw std::invalid_argument("need at least 8 samples");
    LocusSamples out;
    out.a = shape.a();
    out.b = shape.b();
    out.M = M;
    out.samples.reserve(M);
    for (int k = 0; k < M; ++k) {
        double t = t0 + (t1 - t0) * k / M;
        try {
            Point p = f(orbit_at(shape, t));
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw PoleAtConfiguration("non-finite point");
            out.samples.push_back({t, p.x, p.y});
        } catch (const PoleAtConfiguration&) {
            out.dropped.push_back(t);
        } catch (const LineAtInfinity&) {
            out.dropped.push_back(t);
        } catch (const NumericalBreakdown&) {
            out.dropped.push_back(t);
        }
    }
    if (out.dropped.size() > max_drop_fraction * M)
        throw TooManyPoles(std::to_string(out.dropped.size()) + " of " + std::to_string(M) + " samples dropped");
    return out;
}

LocusSamples sample_locus(const Shape<double>& shape, const CenterSpec& spec, int M, double t0, double t1) {
    auto out = sample_map(shape, [&](const OrbitTriangle<double>& o) { return center_position(spec, o); }, M, t0, t1);
    out.center = spec.id;
    return out;
}

LocusSamples sample_locus(const Shape<double>& shape, const CenterSpec& spec, int M) {
    return sample_locus(shape, spec, M, 0.0, 2 * pi<double>());
}

LocusSamples sample_locus_hp(const Shape<hp_float>& shape, const CenterSpec& spec, int M) {
    if (M < 8) throw std::invalid_argument("need at least 8 samples");
    LocusSamples out;
    out.center = spec.id;
    out.a = static_cast<double>(shape.a());
    out.b = static_cast<double>(shape.b());
    out.M = M;
    const hp_float two_pi = 2 * pi<hp_float>();
    for (int k = 0; k < M; ++k) {
        hp_float t = two_pi * k / M;
        try {
            auto p = center_position(spec, orbit_at(shape, t));
            out.samples.push_back({static_cast<double>(t), static_cast<double>(p.x), static_cast<double>(p.y)});
        } catch (const PoleAtConfiguration&) {
            out.dropped.push_back(static_cast<double>(t));
        } catch (const LineAtInfinity&) {
            out.dropped.push_back(static_cast<double>(t));
        } catch (const NumericalBreakdown&) {
            out.dropped.push_back(static_cast<double>(t));
        }
    }
    if (out.dropped.size() > 0.01 * M)
        throw TooManyPoles(std::to_string(out.dropped.size()) + " of " + std::to_string(M) + " samples dropped");
    return out;
}

namespace {

double sum_sq(std::span<const Point> pts, double u, double v) {
    double s = 0;
    for (auto& p : pts) {
        double r = u * p.x * p.x + v * p.y * p.y - 1;
        s += r * r;
    }
    return s;
}

EllipseFit finish(double u, double v, double ss, std::size_t m, bool degenerate) {
    EllipseFit f;
    f.a_hat = u > 0 ? 1 / std::sqrt(u) : INFINITY;
    f.b_hat = v > 0 ? 1 / std::sqrt(v) : INFINITY;
    f.ss = ss;
    f.err = std::sqrt(ss);
    f.m_used = m;
    f.degenerate = degenerate;
    return f;
}

}  // namespace

EllipseFit try_fit_concentric_ellipse(std::span<const Point> pts) {
    if (pts.size() < 3) throw std::invalid_argument("need at least 3 samples");
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, rmax = 0;
    for (auto& p : pts) rmax = std::max(rmax, std::hypot(p.x, p.y));
    if (rmax < 1e-9) return finish(0, 0, static_cast<double>(pts.size()), pts.size(), true);
    for (auto& p : pts) {
        double X = p.x * p.x, Y = p.y * p.y;
        sxx += X * X;
        sxy += X * Y;
        syy += Y * Y;
        sx += X;
        sy += Y;
    }
    double det = sxx * syy - sxy * sxy;
    double scale = sxx * syy;
    if (scale > 0 && std::abs(det) > 1e-14 * scale) {
        double u = (sx * syy - sy * sxy) / det;
        double v = (sxx * sy - sxy * sx) / det;
        if (u > 0 && v > 0) return finish(u, v, sum_sq(pts, u, v), pts.size(), false);
    }
    // Constrained minimum on the boundary of u, v >= 0.
    double best_u = 0, best_v = 0, best = static_cast<double>(pts.size());
    if (sxx > 0 && sx > 0) {
        double u = sx / sxx, s = sum_sq(pts, u, 0);
        if (s < best) best = s, best_u = u, best_v = 0;
    }
    if (syy > 0 && sy > 0) {
        double v = sy / syy, s = sum_sq(pts, 0, v);
        if (s < best) best = s, best_u = 0, best_v = v;
    }
    return finish(best_u, best_v, best, pts.size(), true);
}

EllipseFit fit_concentric_ellipse(std::span<const Point> pts) {
    EllipseFit f = try_fit_concentric_ellipse(pts);
    if (f.degenerate) throw DegenerateFit(f);
    return f;
}

CenterFit classify_center(const Shape<double>& shape, const CenterSpec& spec, int M, double threshold) {
    CenterFit out;
    try {
        out.locus = sample_locus(shape, spec, M);
    } catch (const TooManyPoles&) {
        out.at_infinity = true;
        out.fit = finish(0, 0, static_cast<double>(M), static_cast<std::size_t>(M), true);
        out.cls = LocusClass::Degenerate;
        return out;
    }
    auto pts = out.locus.points();
    out.fit = try_fit_concentric_ellipse(pts);
    out.cls = classify_locus(out.fit, threshold);
    return out;
}

const char* class_name(LocusClass c) {
    switch (c) {
    case LocusClass::Elliptic:
        return "elliptic";
    case LocusClass::NonElliptic:
        return "non-elliptic";
    case LocusClass::Degenerate:
        return "degenerate";
    }
    return "?";
}

LocusClass classify_locus(const EllipseFit& fit, double threshold) {
    if (fit.degenerate) return LocusClass::Degenerate;
    return fit.err / static_cast<double>(fit.m_used) < threshold ? LocusClass::Elliptic : LocusClass::NonElliptic;
}

namespace {

double angle_step(Point a, Point b, Point c) {
    double a1 = std::atan2(a.y - c.y, a.x - c.x), a2 = std::atan2(b.y - c.y, b.x - c.x);
    double d = a2 - a1;
    while (d > M_PI) d -= 2 * M_PI;
    while (d <= -M_PI) d += 2 * M_PI;
    return d;
}

bool at(Point p, Point c) { return std::hypot(p.x - c.x, p.y - c.y) < 1e-12; }

}  // namespace

int winding_number(std::span<const Point> closed, Point about) {
    double total = 0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        if (at(closed[i], about)) throw PassesThroughPoint("sample coincides with the winding center");
        total += angle_step(closed[i], closed[(i + 1) % closed.size()], about);
    }
    return static_cast<int>(std::lround(total / (2 * M_PI)));
}

int winding_number(const std::function<Point(double)>& curve, double t0, double t1, int M, Point about) {
    std::function<double(double, Point, double, Point, int)> seg = [&](double ta, Point pa, double tb, Point pb,
                                                                       int depth) -> double {
        double tm = 0.5 * (ta + tb);
        Point pm = curve(tm);
        if (at(pm, about)) throw PassesThroughPoint("curve passes through the winding center");
        double d1 = angle_step(pa, pm, about), d2 = angle_step(pm, pb, about);
        if (std::abs(d1) < M_PI / 2 && std::abs(d2) < M_PI / 2) return d1 + d2;
        if (depth >= 20) throw PassesThroughPoint("refinement could not resolve the winding");
        return seg(ta, pa, tm, pm, depth + 1) + seg(tm, pm, tb, pb, depth + 1);
    };
    double total = 0;
    Point first = curve(t0), prev = first;
    if (at(first, about)) throw PassesThroughPoint("curve passes through the winding center");
    double tprev = t0;
    for (int k = 1; k <= M; ++k) {
        double t = t0 + (t1 - t0) * k / M;
        Point p = k == M ? first : curve(t);
        if (at(p, about)) throw PassesThroughPoint("curve passes through the winding center");
        total += seg(tprev, prev, t, p, 0);
        prev = p;
        tprev = t;
    }
    return static_cast<int>(std::lround(total / (2 * M_PI)));
}

ConvexCombination convex_combination_locus(const Shape<double>& shape, const LocusSamples& base,
                                           const LocusSamples& target, double rho) {
    if (base.samples.size() != target.samples.size()) throw GridMismatch("sample counts differ");
    ConvexCombination out;
    out.locus.center = base.center + "+" + target.center;
    out.locus.a = shape.a();
    out.locus.b = shape.b();
    out.locus.M = base.M;
    out.locus.dropped = base.dropped;
    for (std::size_t i = 0; i < base.samples.size(); ++i) {
        const auto& p = base.samples[i];
        const auto& q = target.samples[i];
        if (std::abs(p.t - q.t) > 1e-12) throw GridMismatch("sample parameters differ");
        out.locus.samples.push_back({p.t, (1 - rho) * p.x + rho * q.x, (1 - rho) * p.y + rho * q.y});
    }
    double r = shape.b() / shape.a();
    out.rho_star = 1 - r * r;
    return out;
}

double QuarticX6::eval(double x, double y) const {
    double x2 = x * x, y2 = y * y;
    return c1 * x2 * x2 + c2 * y2 * y2 + c3 * x2 * y2 + c4 * x2 + c5 * y2;
}

double QuarticX6::relative_residual(double x, double y) const {
    double x2 = x * x, y2 = y * y;
    double scale = std::abs(c1 * x2 * x2) + std::abs(c2 * y2 * y2) + std::abs(c3 * x2 * y2) + std::abs(c4 * x2) +
                   std::abs(c5 * y2);
    return scale > 0 ? std::abs(eval(x, y)) / scale : 0.0;
}

double QuarticX6::area(int n) const {
    // Star-shaped about the origin: r^2(theta) from the quartic, polygon area by shoelace.
    std::vector<Point> pts(n);
    for (int k = 0; k < n; ++k) {
        double th = 2 * M_PI * k / n, c = std::cos(th), s = std::sin(th);
        double r2 = -(c4 * c * c + c5 * s * s) / (c1 * c * c * c * c + c2 * s * s * s * s + c3 * c * c * s * s);
        double r = std::sqrt(r2);
        pts[k] = {r * c, r * s};
    }
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        const Point& p = pts[k];
        const Point& q = pts[(k + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(acc);
}

double QuarticX6::area_ratio(int n) const { return M_PI * a6 * b6 / area(n); }

QuarticX6 x6_quartic(const Shape<double>& s) {
    double a = s.a(), b = s.b(), d = s.delta();
    double a2 = a * a, b2 = b * b, a4 = a2 * a2, b4 = b2 * b2, d2 = d * d;
    QuarticX6 q;
    q.delta = d;
    q.c1 = b4 * (5 * d2 - 4 * (a2 - b2) * d - a2 * b2);
    q.c2 = a4 * (5 * d2 + 4 * (a2 - b2) * d - a2 * b2);
    q.c3 = 2 * a2 * b2 * (a2 * b2 + 3 * d2);
    q.c4 = a2 * b4 * (3 * b4 + 2 * (2 * a2 - b2) * d - 5 * d2);
    q.c5 = a4 * b2 * (3 * a4 + 2 * (2 * b2 - a2) * d - 5 * d2);
    q.a6 = ((3 * a2 - b2) * d - (a2 + b2) * b2) * a / (a2 * b2 + 3 * d2);
    q.b6 = ((a2 - 3 * b2) * d + (a2 + b2) * a2) * b / (a2 * b2 + 3 * d2);
    return q;
}

namespace {

// Segments that jump between opposite far ends of an unbounded locus (a pass through infinity).
std::vector<bool> infinity_gaps(std::span<const Point> P) {
    const std::size_t n = P.size();
    std::vector<bool> gap(n, false);
    if (n < 2) return gap;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = P[i].norm();
    std::vector<double> sorted = r;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    const double far = 100 * std::max(sorted[n / 2], 1e-300);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        gap[i] = std::min(r[i], r[j]) > far && P[i].dot(P[j]) < 0;
    }
    return gap;
}

}  // namespace

int self_intersections(std::span<const Point> P) {
    const std::size_t n = P.size();
    if (n < 4) return 0;
    double minx = INFINITY, maxx = -INFINITY, miny = INFINITY, maxy = -INFINITY;
    for (auto& p : P) {
        minx = std::min(minx, p.x), maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y), maxy = std::max(maxy, p.y);
    }
    const double merge = 1e-9 * std::hypot(maxx - minx, maxy - miny);
    const double eps = 1e-12;
    const auto gap = infinity_gaps(P);
    std::vector<Point> hits;
    for (std::size_t i = 0; i < n; ++i) {
        if (gap[i]) continue;
        Point a1 = P[i], a2 = P[(i + 1) % n];
        double lx = std::min(a1.x, a2.x), hx = std::max(a1.x, a2.x);
        double ly = std::min(a1.y, a2.y), hy = std::max(a1.y, a2.y);
        Point d1 = a2 - a1;
        for (std::size_t j = i + 2; j < n; ++j) {
            if ((i == 0 && j == n - 1) || gap[j]) continue;
            Point b1 = P[j], b2 = P[(j + 1) % n];
            if (std::max(b1.x, b2.x) < lx || std::min(b1.x, b2.x) > hx || std::max(b1.y, b2.y) < ly ||
                std::min(b1.y, b2.y) > hy)
                continue;
            Point d2 = b2 - b1;
            double den = d1.x * d2.y - d1.y * d2.x;
            if (den == 0) continue;
            Point w = b1 - a1;
            double s = (w.x * d2.y - w.y * d2.x) / den;
            double t = (w.x * d1.y - w.y * d1.x) / den;
            if (s < -eps || s >= 1 - eps || t < -eps || t >= 1 - eps) continue;
            Point h = a1 + d1 * s;
            bool dup = false;
            for (auto& q : hits)
                if (std::hypot(q.x - h.x, q.y - h.y) <= merge) dup = true;
            if (!dup) hits.push_back(h);
        }
    }
    return static_cast<int>(hits.size());
}

int line_intersections(std::span<const Point> P, Point p0, Point dir) {
    const std::size_t n = P.size();
    if (n < 2) return 0;
    auto side = [&](Point p) {
        double c = (p.x - p0.x) * dir.y - (p.y - p0.y) * dir.x;
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    };
    // Start from a sample strictly off the line so zero runs are classified by their neighbours.
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i)
        if (side(P[i]) != 0) {
            start = i;
            break;
        }
    if (start == n) return 0;
    const auto gap = infinity_gaps(P);
    int count = 0, prev = side(P[start]);
    bool in_zero = false, jumped = false;
    for (std::size_t k = 1; k <= n; ++k) {
        jumped = jumped || gap[(start + k - 1) % n];
        int s = side(P[(start + k) % n]);
        if (s == 0) {
            in_zero = true;
            continue;
        }
        if ((s != prev || in_zero) && !jumped) ++count;
        jumped = false;
        prev = s;
        in_zero = false;
    }
    return count;
}

unsigned worker_count() {
    if (const char* env = std::getenv("BILLIARD_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned w = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(w);
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < w; ++k)
        pool.emplace_back([&, k] {
            try {
                for (std::size_t i; (i = next++) < n;) fn(i);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace billiard
