#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "billiard/field.hpp"

namespace billiard::exact {

// Lex order x > y > s1 > s2 > s3 > u1 > w > u. w stands for delta1*u2.
enum Var : int { X = 0, Y, S1, S2, S3, U1, W, U, kNumVars };

const char* var_name(Var v);

struct DegreeBlowup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponents packed into one word, x in the top bits, so integer order is lex order.
// Field widths (bits): x 10, y 10, s1..s3 7, u1 5, w 5, u 13.
using Monomial = std::uint64_t;

inline constexpr std::array<int, kNumVars> kExpShift{54, 44, 37, 30, 23, 18, 13, 0};
inline constexpr std::array<int, kNumVars> kExpMax{1023, 1023, 127, 127, 127, 31, 31, 8191};

inline int exponent(Monomial m, int v) { return static_cast<int>((m >> kExpShift[v]) & kExpMax[v]); }
inline Monomial var_monomial(int v, int e) { return static_cast<Monomial>(e) << kExpShift[v]; }

class FieldPoly {
public:
    using Term = std::pair<Monomial, FieldScalar>;

    FieldPoly() = default;
    FieldPoly(const FieldScalar& c);
    FieldPoly(long c) : FieldPoly(FieldScalar(c)) {}
    static FieldPoly var(Var v, int e = 1);
    static FieldPoly monomial(Monomial m, const FieldScalar& c);
    // Terms in any order; like terms are combined.
    static FieldPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    const Term& leading() const { return terms_.front(); }
    FieldScalar constant() const;

    int degree(Var v) const;
    int total_degree() const;
    bool uses(Var v) const { return degree(v) > 0; }
    std::array<int, kNumVars> degrees() const;
    const QuadField* field() const;

    FieldPoly operator-() const;
    FieldPoly& operator+=(const FieldPoly& o);
    FieldPoly& operator-=(const FieldPoly& o);
    FieldPoly& operator*=(const FieldPoly& o) { return *this = *this * o; }
    friend FieldPoly operator+(FieldPoly a, const FieldPoly& b) { return a += b; }
    friend FieldPoly operator-(FieldPoly a, const FieldPoly& b) { return a -= b; }
    friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);
    friend bool operator==(const FieldPoly& a, const FieldPoly& b);

    FieldPoly scaled(const FieldScalar& c) const;
    FieldPoly pow(unsigned e) const;

    // Coefficients of v^0, v^1, ... as polynomials free of v.
    std::vector<FieldPoly> coeffs_in(Var v) const;
    static FieldPoly from_coeffs(Var v, const std::vector<FieldPoly>& c);
    FieldPoly substitute(Var v, const FieldPoly& value) const;
    FieldPoly derivative(Var v) const;
    FieldPoly negate_var(Var v) const;  // p(.., -v, ..)
    FieldPoly conj() const;             // sqrt(f) -> -sqrt(f) in every coefficient

    FieldScalar eval(const std::array<FieldScalar, kNumVars>& at) const;
    double eval(const std::array<double, kNumVars>& at) const;
    // |p(at)| / sum |c_m m(at)|
    double relative_residual(const std::array<double, kNumVars>& at) const;

    // Exact quotient, or nullopt when b does not divide *this.
    std::optional<FieldPoly> divide(const FieldPoly& b) const;

    // Integer-primitive in the basis {1, sqrt(f)} with a positive leading coefficient.
    FieldPoly primitive() const;
    // Leading coefficient made 1, then primitive(): a canonical representative up to Q(sqrt f) units.
    FieldPoly normalized() const;
    // Largest monomial dividing every term, restricted to the given variables.
    Monomial monomial_content(const std::vector<Var>& vars) const;

    std::string str() const;

private:
    std::vector<Term> terms_;  // strictly decreasing monomials, no zero coefficients
};

// Dense univariate polynomial, coefficient i of x^i.
using UPoly = std::vector<FieldScalar>;

void trim(UPoly& p);
UPoly to_upoly(const FieldPoly& p, Var v);  // p must only use v
FieldPoly from_upoly(const UPoly& p, Var v);
UPoly uderivative(const UPoly& p);
UPoly umul(const UPoly& a, const UPoly& b);
// Division in K[x]; a = q b + r.
void udivrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly ugcd(UPoly a, UPoly b);  // monic, or empty when both are zero
UPoly umonic(const UPoly& p);
FieldScalar ueval(const UPoly& p, const FieldScalar& x);
// Square-free factorization p = c * prod f_i^i (Yun), returned as (f_i, i) with f_i non-constant.
std::vector<std::pair<UPoly, int>> usquarefree(const UPoly& p);

// Polynomial in one main variable with coefficients in K[v], via v-content gcds.
// gcd over K[v][main]; result is primitive in main and normalized by primitive().
FieldPoly bivariate_gcd(const FieldPoly& a, const FieldPoly& b, Var main, Var v);
// Content of p viewed as a polynomial in every variable except `v`, i.e. the gcd in K[v] of its coefficients.
UPoly content_in(const FieldPoly& p, Var v);

// Exact k-th root of p up to a scalar, if p is c * r^k.
std::optional<FieldPoly> perfect_root(const FieldPoly& p, int k);

}  // namespace billiard::exact
