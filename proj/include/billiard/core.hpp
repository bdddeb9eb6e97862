#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace billiard {

using hp_float = boost::multiprecision::cpp_dec_float_50;

struct DegenerateShape : std::domain_error {
    using std::domain_error::domain_error;
};

struct OutsideBoundary : std::domain_error {
    using std::domain_error::domain_error;
};

struct NumericalBreakdown : std::runtime_error {
    double t;
    NumericalBreakdown(const std::string& what, double t_) : std::runtime_error(what), t(t_) {}
};

template <class T>
struct Vec2 {
    T x{}, y{};

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(const T& s) const { return {x * s, y * s}; }
    Vec2 operator/(const T& s) const { return {x / s, y / s}; }
    T dot(const Vec2& o) const { return x * o.x + y * o.y; }
    T norm() const {
        using std::sqrt;
        return sqrt(x * x + y * y);
    }
};

using Point = Vec2<double>;

// Elliptic billiard x^2/a^2 + y^2/b^2 = 1 with its 3-periodic invariants.
template <class T>
class Shape {
public:
    Shape(T a, T b) : a_(a), b_(b) {
        using std::isfinite;
        using std::sqrt;
        if (!(a > 0) || !(b > 0) || !(a > b))
            throw DegenerateShape("shape requires a > b > 0");
        T a2 = a * a, b2 = b * b;
        c2_ = a2 - b2;
        delta_ = sqrt(a2 * a2 - a2 * b2 + b2 * b2);
        delta1_sq_ = 2 * delta_ - a2 - b2;
        delta1_ = sqrt(delta1_sq_);
        caustic_a_ = a * (delta_ - b2) / c2_;
        caustic_b_ = b * (a2 - delta_) / c2_;
        // tan t* = b sqrt(2 delta - a^2 + 2 b^2) / a^2, J = sin(t*) / b
        using std::atan;
        using std::sin;
        T tan_ts = b * sqrt(2 * delta_ - a2 + 2 * b2) / a2;
        t_star_ = atan(tan_ts);
        t_dstar_ = atan(sqrt(2 * delta_ - 2 * a2 + b2) / (sqrt(T(3)) * a));
        J_ = sin(t_star_) / b;
    }

    const T& a() const { return a_; }
    const T& b() const { return b_; }
    const T& c2() const { return c2_; }
    const T& delta() const { return delta_; }
    const T& delta1() const { return delta1_; }
    const T& delta1_sq() const { return delta1_sq_; }
    const T& caustic_a() const { return caustic_a_; }
    const T& caustic_b() const { return caustic_b_; }
    const T& J() const { return J_; }
    const T& t_star() const { return t_star_; }
    const T& t_dstar() const { return t_dstar_; }

    T boundary_residual(const Vec2<T>& p) const {
        return p.x * p.x / (a_ * a_) + p.y * p.y / (b_ * b_) - 1;
    }

private:
    T a_, b_, c2_, delta_, delta1_sq_, delta1_, caustic_a_, caustic_b_, J_, t_star_, t_dstar_;
};

template <class T>
Shape<T> validate_shape(T a, T b) {
    using std::isfinite;
    if (!isfinite(static_cast<double>(a)) || !isfinite(static_cast<double>(b)))
        throw DegenerateShape("non-finite semi-axis");
    return Shape<T>(a, b);
}

template <class T>
std::pair<T, T> caustic_axes(const Shape<T>& s) {
    return {s.caustic_a(), s.caustic_b()};
}

template <class T>
std::pair<T, T> isosceles_params(const Shape<T>& s) {
    return {s.t_star(), s.t_dstar()};
}

// k1 = cos^2 of the exit angle at P1, k2 = sin*cos of it.
template <class T>
std::pair<T, T> exit_coefficients(const Shape<T>& s, const Vec2<T>& p1) {
    using std::abs;
    using std::sqrt;
    if (abs(s.boundary_residual(p1)) > T(1e-9))
        throw OutsideBoundary("P1 is not on the billiard boundary");
    const T& a = s.a();
    const T& b = s.b();
    T d1 = (a * b) * (a * b) / s.c2();
    T d2 = b * b * b * b * p1.x * p1.x + a * a * a * a * p1.y * p1.y;
    T k1 = d1 * d1 * s.delta1_sq() / d2;
    T k2 = sqrt(k1 * (1 - k1));
    return {k1, k2};
}

template <class T>
struct OrbitTriangle {
    T t{};
    Vec2<T> P1, P2, P3;
    T s1{}, s2{}, s3{};

    T perimeter() const { return s1 + s2 + s3; }
    T area() const {
        using std::sqrt;
        T sg = perimeter() / 2;
        T h = sg * (sg - s1) * (sg - s2) * (sg - s3);
        return h > 0 ? sqrt(h) : T(0);
    }
    const Vec2<T>& vertex(int i) const { return i == 0 ? P1 : (i == 1 ? P2 : P3); }
};

template <class T>
OrbitTriangle<T> triangle_from(const Vec2<T>& p1, const Vec2<T>& p2, const Vec2<T>& p3, T t = T(0)) {
    OrbitTriangle<T> o;
    o.t = t;
    o.P1 = p1;
    o.P2 = p2;
    o.P3 = p3;
    o.s1 = (p3 - p2).norm();
    o.s2 = (p1 - p3).norm();
    o.s3 = (p2 - p1).norm();
    return o;
}

template <class T>
OrbitTriangle<T> orbit_at(const Shape<T>& s, T t) {
    using std::abs;
    using std::cos;
    using std::sin;
    const T& a = s.a();
    const T& b = s.b();
    const T a2 = a * a, b2 = b * b, a4 = a2 * a2, b4 = b2 * b2, c2 = s.c2();
    const T x1 = a * cos(t), y1 = b * sin(t);
    auto [k1, k2] = exit_coefficients(s, Vec2<T>{x1, y1});
    const T x2 = x1 * x1, y2 = y1 * y1;

    T p2x = -b4 * ((a2 + b2) * k1 - a2) * x2 * x1 - 2 * a4 * b2 * k2 * x2 * y1 +
            a4 * ((a2 - 3 * b2) * k1 + b2) * x1 * y2 - 2 * a4 * a2 * k2 * y2 * y1;
    T p2y = 2 * b4 * b2 * k2 * x2 * x1 + b4 * ((b2 - 3 * a2) * k1 + a2) * x2 * y1 +
            2 * a2 * b4 * k2 * x1 * y2 - a4 * ((a2 + b2) * k1 - b2) * y2 * y1;
    T p3x = b4 * (a2 - (b2 + a2) * k1) * x2 * x1 + 2 * a4 * b2 * k2 * x2 * y1 +
            a4 * (k1 * (a2 - 3 * b2) + b2) * x1 * y2 + 2 * a4 * a2 * k2 * y2 * y1;
    T p3y = -2 * b4 * b2 * k2 * x2 * x1 + b4 * (a2 + (b2 - 3 * a2) * k1) * x2 * y1 -
            2 * a2 * b4 * k2 * x1 * y2 + a4 * (b2 - (b2 + a2) * k1) * y2 * y1;
    T qc = b4 * (a2 - c2 * k1) * x2 + a4 * (b2 + c2 * k1) * y2;
    T qx = 2 * a2 * b2 * c2 * k2 * x1 * y1;
    T q2 = qc - qx, q3 = qc + qx;

    T guard = T(1e-14) * a4 * b4;
    if (abs(q2) < guard || abs(q3) < guard)
        throw NumericalBreakdown("vertex denominator vanished", static_cast<double>(t));
    return triangle_from(Vec2<T>{x1, y1}, Vec2<T>{p2x / q2, p2y / q2}, Vec2<T>{p3x / q3, p3y / q3}, t);
}

// Max over vertices of the squared equal-angle condition against the normal diag(1/a^2,1/b^2) P_j,
// scaled by perimeter^2.
template <class T>
T reflection_residual(const Shape<T>& s, const OrbitTriangle<T>& o) {
    using std::abs;
    const T ia2 = 1 / (s.a() * s.a()), ib2 = 1 / (s.b() * s.b());
    T worst = 0;
    for (int j = 0; j < 3; ++j) {
        const Vec2<T>& pj = o.vertex(j);
        const Vec2<T>& pk = o.vertex((j + 1) % 3);
        const Vec2<T>& pl = o.vertex((j + 2) % 3);
        Vec2<T> n{pj.x * ia2, pj.y * ib2};
        Vec2<T> dk = pk - pj, dl = pl - pj;
        T nl = n.dot(dl), nk = n.dot(dk);
        T r = abs(nl * nl * dk.dot(dk) - nk * nk * dl.dot(dl));
        if (r > worst) worst = r;
    }
    T p = o.perimeter();
    return worst / (p * p);
}

template <class T>
T inradius_over_circumradius(const OrbitTriangle<T>& o) {
    T A = o.area();
    T r = A / (o.perimeter() / 2);
    T R = o.s1 * o.s2 * o.s3 / (4 * A);
    return r / R;
}

template <class T>
T pi() {
    return boost::math::constants::pi<T>();
}

}  // namespace billiard
