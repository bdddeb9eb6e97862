#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace billiard::exact {

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Q(sqrt(f)) for a square-free integer f != 1. Instances are interned, so fields compare by address.
class QuadField {
public:
    static const QuadField* get(const mpz_class& f);
    const mpz_class& radicand() const { return f_; }

private:
    explicit QuadField(mpz_class f) : f_(std::move(f)) {}
    mpz_class f_;
};

// p + q*sqrt(f). A null field means q == 0 and the value is rational.
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(long v) : p_(v) {}
    FieldScalar(int v) : p_(v) {}
    FieldScalar(mpq_class p) : p_(std::move(p)) {}
    FieldScalar(mpq_class p, mpq_class q, const QuadField* F);

    // sqrt(D) for rational D > 0; collapses to a rational when D is a perfect square.
    static FieldScalar sqrt_of(const mpq_class& D);

    const mpq_class& p() const { return p_; }
    const mpq_class& q() const { return q_; }
    const QuadField* field() const { return F_; }

    bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
    bool is_rational() const { return sgn(q_) == 0; }
    bool is_one() const { return is_rational() && p_ == 1; }

    FieldScalar operator-() const;
    FieldScalar& operator+=(const FieldScalar& o);
    FieldScalar& operator-=(const FieldScalar& o);
    FieldScalar& operator*=(const FieldScalar& o);
    FieldScalar& operator/=(const FieldScalar& o);
    friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
    friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
    friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
    friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
    friend bool operator==(const FieldScalar& a, const FieldScalar& b);

    FieldScalar conj() const;
    mpq_class norm() const;  // p^2 - f q^2
    FieldScalar pow(unsigned e) const;

    double to_double() const;
    mpf_class to_mpf(mp_bitcnt_t prec) const;
    // Sign of the real value; exact.
    int sign() const;

    // "p + q*sqrt(f)", with integers and fractions written plainly.
    std::string str() const;

private:
    void merge(const FieldScalar& o);
    mpq_class p_, q_;
    const QuadField* F_ = nullptr;
};

const QuadField* common_field(const QuadField* a, const QuadField* b);

// Continued-fraction reconstruction of v; fails unless |v - n/d| < tol with d <= max_den.
bool reconstruct_rational(const mpf_class& v, const mpz_class& max_den, const mpf_class& tol, mpq_class& out);

}  // namespace billiard::exact
