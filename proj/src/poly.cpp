#include "billiard/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

namespace billiard::exact {

const char* var_name(Var v) {
    static const char* names[] = {"x", "y", "s1", "s2", "s3", "u1", "w", "u"};
    return names[v];
}

namespace {

bool divides(Monomial d, Monomial m) {
    for (int v = 0; v < kNumVars; ++v)
        if (exponent(d, v) > exponent(m, v)) return false;
    return true;
}

void check_degrees(const std::array<int, kNumVars>& a, const std::array<int, kNumVars>& b) {
    for (int v = 0; v < kNumVars; ++v)
        if (a[v] + b[v] > kExpMax[v])
            throw DegreeBlowup(std::string("degree in ") + var_name(static_cast<Var>(v)) + " exceeds " +
                               std::to_string(kExpMax[v]));
}

}  // namespace

FieldPoly::FieldPoly(const FieldScalar& c) {
    if (!c.is_zero()) terms_.emplace_back(0, c);
}

FieldPoly FieldPoly::var(Var v, int e) { return monomial(var_monomial(v, e), FieldScalar(1)); }

FieldPoly FieldPoly::monomial(Monomial m, const FieldScalar& c) {
    FieldPoly p;
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
}

FieldPoly FieldPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
    FieldPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first)
            p.terms_.back().second += t.second;
        else {
            if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
    return p;
}

FieldScalar FieldPoly::constant() const {
    if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
    return FieldScalar(0);
}

int FieldPoly::degree(Var v) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, exponent(m, v));
    return terms_.empty() ? -1 : d;
}

int FieldPoly::total_degree() const {
    int d = terms_.empty() ? -1 : 0;
    for (auto& [m, c] : terms_) {
        int s = 0;
        for (int v = 0; v < kNumVars; ++v) s += exponent(m, v);
        d = std::max(d, s);
    }
    return d;
}

std::array<int, kNumVars> FieldPoly::degrees() const {
    std::array<int, kNumVars> d{};
    for (auto& [m, c] : terms_)
        for (int v = 0; v < kNumVars; ++v) d[v] = std::max(d[v], exponent(m, v));
    return d;
}

const QuadField* FieldPoly::field() const {
    const QuadField* F = nullptr;
    for (auto& [m, c] : terms_) F = common_field(F, c.field());
    return F;
}

FieldPoly FieldPoly::operator-() const {
    FieldPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

FieldPoly& FieldPoly::operator+=(const FieldPoly& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        if (j == o.terms_.end() || (i != terms_.end() && i->first > j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->first > i->first) {
            out.push_back(*j++);
        } else {
            FieldScalar s = i->second + j->second;
            if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

FieldPoly& FieldPoly::operator-=(const FieldPoly& o) { return *this += -o; }

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    check_degrees(a.degrees(), b.degrees());
    if (b.size() == 1 || a.size() == 1) {
        const FieldPoly& big = a.size() == 1 ? b : a;
        const auto& [m, c] = a.size() == 1 ? a.terms_[0] : b.terms_[0];
        FieldPoly r;
        r.terms_.reserve(big.size());
        for (auto& [bm, bc] : big.terms_) r.terms_.emplace_back(bm + m, bc * c);
        return r;
    }
    std::unordered_map<Monomial, FieldScalar> acc;
    acc.reserve(a.size() * b.size());
    for (auto& [am, ac] : a.terms_)
        for (auto& [bm, bc] : b.terms_) {
            auto [it, fresh] = acc.try_emplace(am + bm);
            if (fresh)
                it->second = ac * bc;
            else
                it->second += ac * bc;
        }
    FieldPoly r;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r.terms_.emplace_back(m, std::move(c));
    std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    return r;
}

bool operator==(const FieldPoly& a, const FieldPoly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
}

FieldPoly FieldPoly::scaled(const FieldScalar& c) const {
    if (c.is_zero()) return {};
    FieldPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

FieldPoly FieldPoly::pow(unsigned e) const {
    FieldPoly r(1), b = *this;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
    }
    return r;
}

std::vector<FieldPoly> FieldPoly::coeffs_in(Var v) const {
    int d = degree(v);
    std::vector<FieldPoly> out(std::max(d + 1, 0));
    for (auto& [m, c] : terms_) {
        int e = exponent(m, v);
        out[e].terms_.emplace_back(m - var_monomial(v, e), c);
    }
    return out;  // stripping one variable keeps the relative order of the remaining terms
}

FieldPoly FieldPoly::from_coeffs(Var v, const std::vector<FieldPoly>& c) {
    std::vector<Term> all;
    for (std::size_t e = 0; e < c.size(); ++e)
        for (auto& [m, s] : c[e].terms_) {
            if (exponent(m, v) != 0) throw std::invalid_argument("coefficient depends on the main variable");
            all.emplace_back(m + var_monomial(v, static_cast<int>(e)), s);
        }
    return from_terms(std::move(all));
}

FieldPoly FieldPoly::substitute(Var v, const FieldPoly& value) const {
    auto c = coeffs_in(v);
    FieldPoly r;
    for (std::size_t i = c.size(); i-- > 0;) r = r * value + c[i];
    return r;
}

FieldPoly FieldPoly::derivative(Var v) const {
    std::vector<Term> out;
    for (auto& [m, c] : terms_) {
        int e = exponent(m, v);
        if (e > 0) out.emplace_back(m - var_monomial(v, 1), c * FieldScalar(e));
    }
    FieldPoly r;
    r.terms_ = std::move(out);  // order preserved: equal shifts on the v byte of terms that all contain v
    return r;
}

FieldPoly FieldPoly::negate_var(Var v) const {
    FieldPoly r = *this;
    for (auto& [m, c] : r.terms_)
        if (exponent(m, v) & 1) c = -c;
    return r;
}

FieldPoly FieldPoly::conj() const {
    FieldPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

FieldScalar FieldPoly::eval(const std::array<FieldScalar, kNumVars>& at) const {
    FieldScalar s(0);
    for (auto& [m, c] : terms_) {
        FieldScalar t = c;
        for (int v = 0; v < kNumVars; ++v)
            if (int e = exponent(m, v)) t *= at[v].pow(e);
        s += t;
    }
    return s;
}

double FieldPoly::eval(const std::array<double, kNumVars>& at) const {
    double s = 0;
    for (auto& [m, c] : terms_) {
        double t = c.to_double();
        for (int v = 0; v < kNumVars; ++v)
            if (int e = exponent(m, v)) t *= std::pow(at[v], e);
        s += t;
    }
    return s;
}

double FieldPoly::relative_residual(const std::array<double, kNumVars>& at) const {
    double s = 0, scale = 0;
    for (auto& [m, c] : terms_) {
        double t = c.to_double();
        for (int v = 0; v < kNumVars; ++v)
            if (int e = exponent(m, v)) t *= std::pow(at[v], e);
        s += t;
        scale += std::abs(t);
    }
    return scale == 0 ? 0 : std::abs(s) / scale;
}

std::optional<FieldPoly> FieldPoly::divide(const FieldPoly& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (is_zero()) return FieldPoly{};
    auto da = degrees(), db = b.degrees();
    for (int v = 0; v < kNumVars; ++v)
        if (db[v] > da[v]) return std::nullopt;
    const auto& [lm, lc] = b.terms_.front();
    if (b.size() == 1) {
        FieldPoly q;
        for (auto& [m, c] : terms_) {
            if (!divides(lm, m)) return std::nullopt;
            q.terms_.emplace_back(m - lm, c / lc);
        }
        return q;
    }
    std::map<Monomial, FieldScalar, std::greater<>> rem;
    for (auto& t : terms_) rem.emplace(t);
    std::vector<Term> q;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (!divides(lm, top->first)) return std::nullopt;
        Monomial qm = top->first - lm;
        FieldScalar qc = top->second / lc;
        rem.erase(top);
        for (std::size_t i = 1; i < b.size(); ++i) {
            Monomial m = b.terms_[i].first + qm;
            auto [it, fresh] = rem.try_emplace(m);
            it->second -= qc * b.terms_[i].second;
            if (it->second.is_zero()) rem.erase(it);
        }
        q.emplace_back(qm, std::move(qc));
    }
    FieldPoly r;
    r.terms_ = std::move(q);
    return r;
}

FieldPoly FieldPoly::primitive() const {
    if (is_zero()) return {};
    mpz_class den = 1, num = 0;
    for (auto& [m, c] : terms_) {
        den = lcm(den, c.p().get_den());
        den = lcm(den, c.q().get_den());
    }
    for (auto& [m, c] : terms_) {
        num = gcd(num, mpz_class(c.p().get_num() * (den / c.p().get_den())));
        num = gcd(num, mpz_class(c.q().get_num() * (den / c.q().get_den())));
    }
    mpq_class f(den, num);
    f.canonicalize();
    if (terms_.front().second.sign() < 0) f = -f;
    return scaled(FieldScalar(f));
}

FieldPoly FieldPoly::normalized() const {
    if (is_zero()) return {};
    return scaled(FieldScalar(1) / terms_.front().second).primitive();
}

Monomial FieldPoly::monomial_content(const std::vector<Var>& vars) const {
    Monomial out = 0;
    if (is_zero()) return 0;
    for (Var v : vars) {
        int e = kExpMax[v];
        for (auto& [m, c] : terms_) e = std::min(e, exponent(m, v));
        out += var_monomial(v, e);
    }
    return out;
}

std::string FieldPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : terms_) {
        std::string mono;
        for (int v = 0; v < kNumVars; ++v)
            if (int e = exponent(m, v)) {
                if (!mono.empty()) mono += "*";
                mono += var_name(static_cast<Var>(v));
                if (e > 1) mono += "^" + std::to_string(e);
            }
        std::string cs;
        bool neg = false;
        if (c.is_rational()) {
            neg = sgn(c.p()) < 0;
            mpq_class ap = abs(c.p());
            if (!(ap == 1 && !mono.empty())) cs = ap.get_str();
        } else if (sgn(c.p()) == 0) {
            neg = sgn(c.q()) < 0;
            cs = FieldScalar(0, abs(c.q()), c.field()).str();
        } else {
            cs = "(" + c.str() + ")";
        }
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += cs;
        if (!cs.empty() && !mono.empty()) s += "*";
        s += mono;
        first = false;
    }
    return s;
}

// ---------------------------------------------------------------- univariate

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly to_upoly(const FieldPoly& p, Var v) {
    UPoly out(std::max(p.degree(v) + 1, 0));
    for (auto& [m, c] : p.terms()) {
        if (m != var_monomial(v, exponent(m, v))) throw std::invalid_argument("polynomial is not univariate");
        out[exponent(m, v)] = c;
    }
    return out;
}

FieldPoly from_upoly(const UPoly& p, Var v) {
    std::vector<FieldPoly::Term> t;
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) t.emplace_back(var_monomial(v, static_cast<int>(i)), p[i]);
    return FieldPoly::from_terms(std::move(t));
}

UPoly uderivative(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * FieldScalar(static_cast<long>(i)));
    trim(d);
    return d;
}

UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, FieldScalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

void udivrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.empty()) throw std::domain_error("univariate division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, FieldScalar(0));
    FieldScalar inv = FieldScalar(1) / b.back();
    while (r.size() >= b.size()) {
        std::size_t s = r.size() - b.size();
        FieldScalar c = r.back() * inv;
        q[s] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[s + j] -= c * b[j];
        r.pop_back();
        trim(r);
    }
    trim(q);
}

UPoly umonic(const UPoly& p) {
    if (p.empty()) return p;
    FieldScalar inv = FieldScalar(1) / p.back();
    UPoly r = p;
    for (auto& c : r) c *= inv;
    return r;
}

UPoly ugcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly q, r;
        udivrem(a, b, q, r);
        a = std::move(b);
        b = umonic(r);
    }
    return umonic(a);
}

FieldScalar ueval(const UPoly& p, const FieldScalar& x) {
    FieldScalar s(0);
    for (std::size_t i = p.size(); i-- > 0;) s = s * x + p[i];
    return s;
}

namespace {

UPoly uquo(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    udivrem(a, b, q, r);
    return q;
}

UPoly usub(UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), FieldScalar(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

std::vector<std::pair<UPoly, int>> usquarefree(const UPoly& p0) {
    std::vector<std::pair<UPoly, int>> out;
    UPoly p = p0;
    trim(p);
    if (p.size() <= 1) return out;
    UPoly dp = uderivative(p);
    UPoly a = ugcd(p, dp);
    UPoly b = uquo(p, a), c = uquo(dp, a);
    UPoly d = usub(c, uderivative(b));
    for (int i = 1; b.size() > 1; ++i) {
        UPoly g = ugcd(b, d);
        b = uquo(b, g);
        c = uquo(d, g);
        d = usub(c, uderivative(b));
        if (g.size() > 1) out.emplace_back(g, i);
    }
    return out;
}

// ---------------------------------------------------------------- bivariate

namespace {

using BiPoly = std::vector<UPoly>;  // coefficients in K[v] of main^i

BiPoly to_bipoly(const FieldPoly& p, Var main, Var v) {
    auto cs = p.coeffs_in(main);
    BiPoly out;
    for (auto& c : cs) out.push_back(to_upoly(c, v));
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

FieldPoly from_bipoly(const BiPoly& b, Var main, Var v) {
    std::vector<FieldPoly> cs;
    for (auto& c : b) cs.push_back(from_upoly(c, v));
    return FieldPoly::from_coeffs(main, cs);
}

UPoly bcontent(const BiPoly& b) {
    UPoly g;
    std::vector<const UPoly*> order;
    for (auto& c : b)
        if (!c.empty()) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->size() < y->size(); });
    for (auto* c : order) {
        g = g.empty() ? umonic(*c) : ugcd(g, *c);
        if (g.size() == 1) break;
    }
    return g;
}

BiPoly bprimitive(const BiPoly& b) {
    UPoly g = bcontent(b);
    if (g.size() <= 1) return b;
    BiPoly out;
    for (auto& c : b) out.push_back(c.empty() ? c : uquo(c, g));
    return out;
}

BiPoly bprem(BiPoly a, const BiPoly& b) {
    const UPoly& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t s = a.size() - b.size();
        UPoly la = a.back();
        for (auto& c : a) c = umul(c, lb);
        for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = usub(a[s + j], umul(la, b[j]));
        while (!a.empty() && a.back().empty()) a.pop_back();
        a = bprimitive(a);
    }
    return a;
}

}  // namespace

FieldPoly bivariate_gcd(const FieldPoly& pa, const FieldPoly& pb, Var main, Var v) {
    if (pa.is_zero()) return pb.primitive();
    if (pb.is_zero()) return pa.primitive();
    BiPoly a = to_bipoly(pa, main, v), b = to_bipoly(pb, main, v);
    UPoly g = ugcd(bcontent(a), bcontent(b));
    a = bprimitive(a);
    b = bprimitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        BiPoly r = bprem(a, b);
        a = std::move(b);
        b = bprimitive(r);
    }
    FieldPoly out = from_bipoly(a.size() == 1 ? BiPoly{UPoly{FieldScalar(1)}} : a, main, v);
    return (out * from_upoly(g.empty() ? UPoly{FieldScalar(1)} : g, v)).primitive();
}

UPoly content_in(const FieldPoly& p, Var v) {
    std::map<Monomial, std::vector<FieldPoly::Term>> groups;
    for (auto& [m, c] : p.terms()) {
        int e = exponent(m, v);
        groups[m - var_monomial(v, e)].emplace_back(var_monomial(v, e), c);
    }
    std::vector<UPoly> coeffs;
    for (auto& [k, t] : groups) coeffs.push_back(to_upoly(FieldPoly::from_terms(t), v));
    std::sort(coeffs.begin(), coeffs.end(), [](const UPoly& a, const UPoly& b) { return a.size() < b.size(); });
    UPoly g;
    for (auto& c : coeffs) {
        g = g.empty() ? umonic(c) : ugcd(g, c);
        if (g.size() <= 1) break;
    }
    return g;
}

std::optional<FieldPoly> perfect_root(const FieldPoly& p, int k) {
    if (p.is_zero() || k < 1) return std::nullopt;
    if (k == 1) return p.primitive();
    auto dp = p.degrees();
    for (int v = 0; v < kNumVars; ++v)
        if (dp[v] % k) return std::nullopt;
    FieldPoly pm = p.scaled(FieldScalar(1) / p.leading().second);
    Monomial lm = pm.leading().first, root_lm = 0;
    for (int v = 0; v < kNumVars; ++v) {
        int e = exponent(lm, v);
        if (e % k) return std::nullopt;
        root_lm += var_monomial(v, e / k);
    }
    FieldPoly B = FieldPoly::monomial(root_lm, FieldScalar(1));
    Monomial shift = 0;
    for (int v = 0; v < kNumVars; ++v) shift += var_monomial(v, exponent(root_lm, v) * (k - 1));
    FieldScalar inv_k = FieldScalar(mpq_class(1, k));
    for (std::size_t it = 0; it <= pm.size() + 1; ++it) {
        auto db = B.degrees();
        for (int v = 0; v < kNumVars; ++v)
            if (db[v] * k > dp[v]) return std::nullopt;
        FieldPoly R = pm - B.pow(static_cast<unsigned>(k));
        if (R.is_zero()) return B.primitive();
        const auto& [m, c] = R.leading();
        if (!divides(shift, m)) return std::nullopt;
        Monomial tm = m - shift;
        if (tm >= B.terms().back().first) return std::nullopt;
        B += FieldPoly::monomial(tm, c * inv_k);
    }
    return std::nullopt;
}

}  // namespace billiard::exact
