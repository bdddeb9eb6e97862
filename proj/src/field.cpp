#include "billiard/field.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace billiard::exact {

const QuadField* QuadField::get(const mpz_class& f) {
    static std::mutex mu;
    static std::map<mpz_class, std::unique_ptr<QuadField>> fields;
    std::lock_guard lock(mu);
    auto it = fields.find(f);
    if (it == fields.end()) it = fields.emplace(f, std::unique_ptr<QuadField>(new QuadField(f))).first;
    return it->second.get();
}

const QuadField* common_field(const QuadField* a, const QuadField* b) {
    if (!a) return b;
    if (!b || a == b) return a;
    throw FieldMismatch("operands live in Q(sqrt(" + a->radicand().get_str() + ")) and Q(sqrt(" +
                        b->radicand().get_str() + "))");
}

FieldScalar::FieldScalar(mpq_class p, mpq_class q, const QuadField* F) : p_(std::move(p)), q_(std::move(q)), F_(F) {
    if (!F_ && sgn(q_) != 0) throw FieldMismatch("irrational part without a field");
}

namespace {

// n = s^2 f with f square-free (trial division; radicands here are small).
void split_square(mpz_class n, mpz_class& s, mpz_class& f) {
    s = 1;
    f = 1;
    for (mpz_class d = 2; d * d <= n; ++d) {
        while (n % (d * d) == 0) {
            n /= d * d;
            s *= d;
        }
        if (n % d == 0) {
            n /= d;
            f *= d;
        }
    }
    f *= n;
}

}  // namespace

FieldScalar FieldScalar::sqrt_of(const mpq_class& D) {
    if (sgn(D) <= 0) throw std::domain_error("sqrt_of needs a positive rational");
    mpz_class nd = D.get_num() * D.get_den(), s, f;
    split_square(nd, s, f);
    mpq_class coef(s, D.get_den());
    coef.canonicalize();
    if (f == 1) return FieldScalar(coef);
    return FieldScalar(0, coef, QuadField::get(f));
}

void FieldScalar::merge(const FieldScalar& o) { F_ = common_field(F_, o.F_); }

FieldScalar FieldScalar::operator-() const { return FieldScalar(-p_, -q_, F_); }

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
    merge(o);
    p_ += o.p_;
    q_ += o.q_;
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
    merge(o);
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
    merge(o);
    if (sgn(q_) == 0 && sgn(o.q_) == 0) {
        p_ *= o.p_;
        return *this;
    }
    mpq_class np = p_ * o.p_ + q_ * o.q_ * F_->radicand();
    q_ = p_ * o.q_ + q_ * o.p_;
    p_ = std::move(np);
    return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(sqrt f)");
    if (sgn(o.q_) == 0) {
        merge(o);
        p_ /= o.p_;
        q_ /= o.p_;
        return *this;
    }
    mpq_class n = o.norm();
    *this *= o.conj();
    p_ /= n;
    q_ /= n;
    return *this;
}

bool operator==(const FieldScalar& a, const FieldScalar& b) {
    if (a.F_ && b.F_ && a.F_ != b.F_) throw FieldMismatch("comparison across fields");
    return a.p_ == b.p_ && a.q_ == b.q_;
}

FieldScalar FieldScalar::conj() const { return FieldScalar(p_, -q_, F_); }

mpq_class FieldScalar::norm() const {
    if (sgn(q_) == 0) return p_ * p_;
    return p_ * p_ - q_ * q_ * F_->radicand();
}

FieldScalar FieldScalar::pow(unsigned e) const {
    FieldScalar r(1), b = *this;
    for (; e; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

double FieldScalar::to_double() const { return to_mpf(256).get_d(); }

mpf_class FieldScalar::to_mpf(mp_bitcnt_t prec) const {
    mpf_class r(p_, prec);
    if (sgn(q_) != 0) {
        mpf_class f(F_->radicand(), prec), q(q_, prec);
        r += q * sqrt(f);
    }
    return r;
}

int FieldScalar::sign() const {
    int sp = sgn(p_), sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // p and q*sqrt(f) have opposite signs: compare p^2 with q^2 f.
    int c = cmp(p_ * p_, q_ * q_ * F_->radicand());
    return c > 0 ? sp : sq;
}

std::string FieldScalar::str() const {
    if (sgn(q_) == 0) return p_.get_str();
    std::string s;
    if (sgn(p_) != 0) s = p_.get_str() + (sgn(q_) > 0 ? " + " : " - ");
    else if (sgn(q_) < 0)
        s = "-";
    mpq_class aq = abs(q_);
    if (aq != 1) s += aq.get_str() + "*";
    s += "sqrt(" + F_->radicand().get_str() + ")";
    return s;
}

bool reconstruct_rational(const mpf_class& v, const mpz_class& max_den, const mpf_class& tol, mpq_class& out) {
    mp_bitcnt_t prec = v.get_prec();
    mpf_class x(v, prec);
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 400; ++it) {
        mpf_class fl = floor(x);
        mpz_class a(fl);
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) return false;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpq_class cand(h1, k1);
        cand.canonicalize();
        mpf_class diff(cand, prec);
        diff -= v;
        if (abs(diff) <= tol) {
            out = cand;
            return true;
        }
        mpf_class frac = x - fl;
        if (frac == 0) return false;
        x = 1 / frac;
    }
    return false;
}

}  // namespace billiard::exact
