#include "billiard/implicitize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <sstream>

#include "billiard/locus.hpp"
#include "billiard/resultant.hpp"

namespace billiard::exact {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

mpq_class parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class r(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        r.canonicalize();
        return r;
    }
    auto exp_pos = s.find_first_of("eE");
    std::string mant = s.substr(0, exp_pos);
    long e10 = exp_pos == std::string::npos ? 0 : std::stol(s.substr(exp_pos + 1));
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
        e10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    mpq_class r{mpz_class(mant)};
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e10)));
    if (e10 > 0) r *= p10;
    if (e10 < 0) r /= p10;
    r.canonicalize();
    return r;
}

}  // namespace

RationalShape RationalShape::parse(const std::string& a, const std::string& b) {
    RationalShape s{parse_rational(a), parse_rational(b)};
    if (!(s.b > 0) || !(s.a > s.b)) throw DegenerateShape("shape requires a > b > 0");
    return s;
}

ShapeConstants::ShapeConstants(const RationalShape& s) : a(s.a), b(s.b) {
    mpq_class a2 = a * a, b2 = b * b;
    c2 = a2 - b2;
    delta = FieldScalar::sqrt_of(a2 * a2 - a2 * b2 + b2 * b2);
    delta1_sq = FieldScalar(2) * delta - FieldScalar(a2 + b2);
    mpq_class a6 = a2 * a2 * a2;
    FieldScalar t = FieldScalar(b2) + delta;
    rho1 = FieldScalar(c2) * t * t / FieldScalar(a6);
}

FieldPoly VertexRationals::reduce(const FieldPoly& p) const {
    std::map<std::pair<int, int>, std::vector<FieldPoly::Term>, std::greater<>> groups;
    for (auto& [m, c] : p.terms()) {
        int i = exponent(m, U1), j = exponent(m, W);
        groups[{i, j}].emplace_back(m - var_monomial(U1, i) - var_monomial(W, j), c);
    }
    const FieldPoly u = FieldPoly::var(U);
    const FieldPoly r1 = FieldPoly(1) - u * u;
    const FieldPoly r2 = FieldPoly(k.delta1_sq) - (u * u).scaled(k.delta1_sq * k.rho1);
    std::vector<FieldPoly> r1p{FieldPoly(1)}, r2p{FieldPoly(1)};
    FieldPoly out;
    for (auto& [ij, terms] : groups) {
        auto [i, j] = ij;
        while (static_cast<int>(r1p.size()) <= i / 2) r1p.push_back(r1p.back() * r1);
        while (static_cast<int>(r2p.size()) <= j / 2) r2p.push_back(r2p.back() * r2);
        FieldPoly part = FieldPoly::from_terms(std::move(terms)) * r1p[i / 2] * r2p[j / 2];
        Monomial odd = var_monomial(U1, i % 2) + var_monomial(W, j % 2);
        out += part * FieldPoly::monomial(odd, FieldScalar(1));
    }
    return out;
}

std::array<double, kNumVars> VertexRationals::point(double t, double x, double y) const {
    Shape<double> sh(k.a.get_d(), k.b.get_d());
    double u = std::cos(t), u1 = std::sin(t);
    double w = std::sqrt(k.delta1_sq.to_double() * (1 - k.rho1.to_double() * u * u));
    auto tri = orbit_at(sh, t);
    std::array<double, kNumVars> at{};
    at[X] = x;
    at[Y] = y;
    at[U] = u;
    at[U1] = u1;
    double best = INFINITY, best_w = w;
    for (double s : {1.0, -1.0}) {
        at[W] = s * w;
        double px = p2x.eval(at) / q2.eval(at), py = p2y.eval(at) / q2.eval(at);
        double d = std::hypot(px - tri.P2.x, py - tri.P2.y);
        if (d < best) best = d, best_w = s * w;
    }
    at[W] = best_w;
    return at;
}

VertexRationals vertex_rationals(const RationalShape& shape) {
    VertexRationals vr{ShapeConstants(shape)};
    const auto& k = vr.k;
    FieldScalar a(k.a), b(k.b), c2(k.c2);
    FieldScalar a2 = a * a, b2 = b * b, a4 = a2 * a2, b4 = b2 * b2;
    FieldPoly u = FieldPoly::var(U), w = FieldPoly::var(W);
    vr.x1 = u.scaled(a);
    vr.y1 = FieldPoly::var(U1).scaled(b);
    const FieldPoly& x1 = vr.x1;
    const FieldPoly& y1 = vr.y1;
    FieldPoly C = (FieldPoly(a2) - (u * u).scaled(c2)).scaled(c2 * c2);
    FieldPoly K1 = FieldPoly(a2 * b2 * k.delta1_sq);
    FieldPoly K2 = w.scaled(a2 * b * (k.delta - b2));
    auto P = [](const FieldPoly& p, int e) { return p.pow(e); };

    vr.p2x = -(K1.scaled(a2 + b2) - C.scaled(a2)).scaled(b4) * P(x1, 3) - K2.scaled(FieldScalar(2) * a4 * b2) * P(x1, 2) * y1 +
             (K1.scaled(a2 - FieldScalar(3) * b2) + C.scaled(b2)).scaled(a4) * x1 * P(y1, 2) -
             K2.scaled(FieldScalar(2) * a4 * a2) * P(y1, 3);
    vr.p2y = K2.scaled(FieldScalar(2) * b4 * b2) * P(x1, 3) +
             (K1.scaled(b2 - FieldScalar(3) * a2) + C.scaled(a2)).scaled(b4) * P(x1, 2) * y1 +
             K2.scaled(FieldScalar(2) * a2 * b4) * x1 * P(y1, 2) - (K1.scaled(a2 + b2) - C.scaled(b2)).scaled(a4) * P(y1, 3);
    vr.q2 = (C.scaled(a2) - K1.scaled(c2)).scaled(b4) * P(x1, 2) + (C.scaled(b2) + K1.scaled(c2)).scaled(a4) * P(y1, 2) -
            K2.scaled(FieldScalar(2) * a2 * b2 * c2) * x1 * y1;
    vr.p3x = vr.p2x.negate_var(W);
    vr.p3y = vr.p2y.negate_var(W);
    vr.q3 = vr.q2.negate_var(W);
    return vr;
}

std::array<SideRelation, 3> side_polynomials(const VertexRationals& vr) {
    auto R = [&](const FieldPoly& p) { return vr.reduce(p); };
    auto sq = [&](const FieldPoly& p) { return R(p * p); };
    FieldPoly q2 = R(vr.q2), q3 = R(vr.q3), p2x = R(vr.p2x), p2y = R(vr.p2y), p3x = R(vr.p3x), p3y = R(vr.p3y);
    FieldPoly q23 = R(q2 * q3);
    std::array<SideRelation, 3> out;
    out[0].s = S1;
    out[0].A = sq(q23);
    out[0].C = R(sq(p2x * q3 - p3x * q2) + sq(p2y * q3 - p3y * q2));
    out[1].s = S2;
    out[1].A = sq(q3);
    out[1].C = R(sq(vr.x1 * q3 - p3x) + sq(vr.y1 * q3 - p3y));
    out[2].s = S3;
    out[2].A = sq(q2);
    out[2].C = R(sq(vr.x1 * q2 - p2x) + sq(vr.y1 * q2 - p2y));
    for (auto& r : out) r.g = R(r.A * FieldPoly::var(r.s, 2) - r.C);
    return out;
}

// ---------------------------------------------------------------- trilinears

namespace {

struct Frac {
    FieldPoly num, den{1};
};

Frac normalize(Frac f) {
    if (f.num.is_zero()) return {FieldPoly{}, FieldPoly(1)};
    if (f.den.is_constant()) return {f.num.scaled(FieldScalar(1) / f.den.constant()), FieldPoly(1)};
    std::vector<Var> all{X, Y, S1, S2, S3, U1, W, U};
    Monomial mn = f.num.monomial_content(all), md = f.den.monomial_content(all), g = 0;
    for (int v = 0; v < kNumVars; ++v) g += var_monomial(v, std::min(exponent(mn, v), exponent(md, v)));
    if (g) {
        FieldPoly m = FieldPoly::monomial(g, FieldScalar(1));
        f.num = *f.num.divide(m);
        f.den = *f.den.divide(m);
    }
    if (auto q = f.num.divide(f.den)) return {*q, FieldPoly(1)};
    return f;
}

Frac add(const Frac& a, const Frac& b, bool subtract) {
    FieldPoly bn = subtract ? -b.num : b.num;
    if (a.den == b.den) return normalize({a.num + bn, a.den});
    return normalize({a.num * b.den + bn * a.den, a.den * b.den});
}

Frac to_frac(const expr::Node& n, const std::array<Var, 3>& slot_var) {
    using expr::Op;
    switch (n.op) {
    case Op::Num:
        return {FieldPoly(FieldScalar(parse_rational(n.text))), FieldPoly(1)};
    case Op::Var:
        if (n.slot < 0 || n.slot > 2) throw NotRational("center function uses the area");
        return {FieldPoly::var(slot_var[n.slot]), FieldPoly(1)};
    case Op::Neg: {
        Frac f = to_frac(*n.lhs, slot_var);
        return {-f.num, f.den};
    }
    case Op::Add:
        return add(to_frac(*n.lhs, slot_var), to_frac(*n.rhs, slot_var), false);
    case Op::Sub:
        return add(to_frac(*n.lhs, slot_var), to_frac(*n.rhs, slot_var), true);
    case Op::Mul: {
        Frac a = to_frac(*n.lhs, slot_var), b = to_frac(*n.rhs, slot_var);
        return normalize({a.num * b.num, a.den * b.den});
    }
    case Op::Div: {
        Frac a = to_frac(*n.lhs, slot_var), b = to_frac(*n.rhs, slot_var);
        if (b.num.is_zero()) throw expr::PoleAtConfiguration("division by zero");
        return normalize({a.num * b.den, a.den * b.num});
    }
    case Op::Pow: {
        Frac b = to_frac(*n.lhs, slot_var);
        unsigned e = static_cast<unsigned>(std::abs(n.exponent));
        Frac r{b.num.pow(e), b.den.pow(e)};
        if (n.exponent < 0) std::swap(r.num, r.den);
        return normalize(r);
    }
    case Op::Sqrt:
    case Op::Abs:
        throw NotRational("center function uses sqrt or abs");
    }
    throw std::logic_error("bad node");
}

}  // namespace

std::array<FieldPoly, 3> trilinear_polynomials(const CenterSpec& spec) {
    if (spec.kind != CenterKind::RationalH) throw NotRational(spec.id + " is not a rational-h center");
    const std::array<std::array<Var, 3>, 3> perms{{{S1, S2, S3}, {S2, S3, S1}, {S3, S1, S2}}};
    std::array<Frac, 3> f;
    for (int i = 0; i < 3; ++i) f[i] = to_frac(*spec.h.root(), perms[i]);
    FieldPoly L(1);
    for (auto& fi : f) {
        if (L.divide(fi.den)) continue;
        if (L.size() == 1 && fi.den.size() == 1) {
            Monomial a = L.leading().first, b = fi.den.leading().first, m = 0;
            for (int v = 0; v < kNumVars; ++v) m += var_monomial(v, std::max(exponent(a, v), exponent(b, v)));
            L = FieldPoly::monomial(m, FieldScalar(1));
        } else {
            L = L * fi.den;
        }
    }
    std::array<FieldPoly, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = f[i].num * *L.divide(f[i].den);
    return out;
}

std::pair<FieldPoly, FieldPoly> locus_equations(const CenterSpec& spec, const VertexRationals& vr) {
    auto tri = trilinear_polynomials(spec);
    auto R = [&](const FieldPoly& p) { return vr.reduce(p); };
    FieldPoly q2 = R(vr.q2), q3 = R(vr.q3);
    FieldPoly q23 = R(q2 * q3);
    FieldPoly w1 = tri[0] * FieldPoly::var(S1), w2 = tri[1] * FieldPoly::var(S2), w3 = tri[2] * FieldPoly::var(S3);
    FieldPoly den = R((w1 + w2 + w3) * q23);
    FieldPoly nx = R(w1 * vr.x1 * q23 + w2 * R(vr.p2x) * q3 + w3 * R(vr.p3x) * q2);
    FieldPoly ny = R(w1 * vr.y1 * q23 + w2 * R(vr.p2y) * q3 + w3 * R(vr.p3y) * q2);
    return {FieldPoly::var(X) * den - nx, FieldPoly::var(Y) * den - ny};
}

// ---------------------------------------------------------------- chain

namespace {

// Drops monomial factors in the auxiliary variables and content in K[u], then makes the result primitive.
FieldPoly strip_content(const FieldPoly& p, std::size_t budget) {
    if (p.size() > budget)
        throw DegreeBlowup("intermediate polynomial has " + std::to_string(p.size()) + " terms, budget " +
                           std::to_string(budget));
    FieldPoly r = p;
    Monomial mc = r.monomial_content({S1, S2, S3, U1, W, U});
    if (mc) r = *r.divide(FieldPoly::monomial(mc, FieldScalar(1)));
    UPoly g = content_in(r, U);
    if (g.size() > 1) r = *r.divide(from_upoly(g, U));
    return r.primitive();
}

std::vector<int> divisors_desc(int n) {
    std::vector<int> d;
    for (int k = n; k >= 2; --k)
        if (n % k == 0) d.push_back(k);
    return d;
}

// Multiplicity pattern of p(main, v) at a generic v = v0: gcd of the square-free multiplicities.
int generic_multiplicity(const FieldPoly& p, Var main, Var v) {
    auto lc = p.coeffs_in(main).back();
    for (long k = 2; k < 200; ++k) {
        FieldScalar v0(mpq_class(k, 3));
        if (!ueval(to_upoly(lc, v), v0).is_zero()) {
            FieldPoly spec = p.substitute(v, FieldPoly(v0));
            int g = 0;
            for (auto& [f, m] : usquarefree(to_upoly(spec, main))) g = std::gcd(g, m);
            return std::max(g, 1);
        }
    }
    return 1;
}

// Square-free part in `main` of a polynomial in (main, v) without content in K[v].
FieldPoly squarefree_part(FieldPoly p, Var main, Var v) {
    int g = generic_multiplicity(p, main, v);
    for (int k : divisors_desc(g))
        if (auto r = perfect_root(p, k)) {
            p = *r;
            break;
        }
    FieldPoly h = bivariate_gcd(p, p.derivative(main), main, v);
    if (h.degree(main) > 0) p = *p.divide(h);
    return p.primitive();
}

ChainStep snapshot(const std::string& name, const FieldPoly& e, const FieldPoly& f, Clock::time_point t0) {
    return ChainStep{name, e.degrees(), f.degrees(), e.size(), f.size(), since(t0)};
}

}  // namespace

EliminationResult eliminate_chain(const CenterSpec& spec, const RationalShape& shape, const ChainOptions& opt) {
    auto start = Clock::now();
    if (spec.kind != CenterKind::RationalH) throw NotRational(spec.id + " is not a rational-h center");
    EliminationResult res;
    res.center = spec.id;
    res.shape = shape;
    VertexRationals vr = vertex_rationals(shape);
    auto sides = side_polynomials(vr);

    auto t0 = Clock::now();
    auto [E, F] = locus_equations(spec, vr);
    E = strip_content(E, opt.monomial_budget);
    F = strip_content(F, opt.monomial_budget);
    res.steps.push_back(snapshot("E0,F0", E, F, t0));

    auto eliminate = [&](const std::string& name, Var v, const FieldPoly& A, const FieldPoly& C) {
        auto t = Clock::now();
        bool any = false;
        for (FieldPoly* P : {&E, &F}) {
            if (!P->uses(v)) continue;
            any = true;
            *P = strip_content(resultant_quadratic(*P, A, C, v, [&](const FieldPoly& q) { return vr.reduce(q); }),
                               opt.monomial_budget);
        }
        if (any) res.steps.push_back(snapshot(name, E, F, t));
    };
    for (auto& s : sides) eliminate(std::string("Res ") + var_name(s.s), s.s, s.A, s.C);
    FieldPoly u = FieldPoly::var(U);
    eliminate("Res u1", U1, FieldPoly(1), FieldPoly(1) - u * u);
    eliminate("Res w", W, FieldPoly(1), FieldPoly(vr.k.delta1_sq) - (u * u).scaled(vr.k.delta1_sq * vr.k.rho1));

    t0 = Clock::now();
    E = squarefree_part(E, X, U);
    F = squarefree_part(F, Y, U);
    res.steps.push_back(snapshot("square-free", E, F, t0));

    t0 = Clock::now();
    res.L = resultant_separated(E, F, U).primitive();
    res.steps.push_back(snapshot("Res u", res.L, res.L, t0));

    auto samples = sample_locus(shape.to_double(), spec, opt.samples).points();
    auto filtered = spurious_filter(res.L, samples);
    res.factors = std::move(filtered.factors);
    res.genuine = filtered.genuine;
    try {
        res.semiaxes = implicit_semiaxes(res.factors[res.genuine].poly);
    } catch (const NotAConic&) {
    }
    res.seconds = since(start);
    return res;
}

// ---------------------------------------------------------------- factors

const char* factor_kind_name(FactorKind k) {
    switch (k) {
    case FactorKind::XOnly:
        return "x-only";
    case FactorKind::YOnly:
        return "y-only";
    case FactorKind::Conic:
        return "conic";
    case FactorKind::Cofactor:
        return "cofactor";
    }
    return "?";
}

namespace {

constexpr mp_bitcnt_t kPrec = 640;

std::vector<mpf_class> real_roots(const UPoly& p) {
    std::size_t n = p.size() - 1;
    std::vector<mpf_class> out;
    if (n < 1) return out;
    using C = std::complex<long double>;
    std::vector<C> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = static_cast<long double>(p[i].to_double());
    auto eval = [&](C z, C& d) {
        C f = 0;
        d = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            d = d * z + f;
            f = f * z + c[i];
        }
        return f;
    };
    long double rad = 0;
    for (std::size_t i = 0; i < n; ++i) rad = std::max(rad, std::pow(std::abs(c[i] / c[n]), 1.0L / (n - i)));
    rad = 2 * rad + 1;
    std::vector<C> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(rad, 2 * M_PIl * k / n + 0.4L);
    for (int it = 0; it < 2000; ++it) {
        long double moved = 0;
        for (std::size_t k = 0; k < n; ++k) {
            C d, f = eval(z[k], d);
            if (f == C(0)) continue;
            C ratio = f / d, s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += 1.0L / (z[k] - z[j]);
            C step = ratio / (1.0L - ratio * s);
            z[k] -= step;
            moved = std::max(moved, std::abs(step) / (1 + std::abs(z[k])));
        }
        if (moved < 1e-17L) break;
    }
    std::vector<mpf_class> pc;
    for (auto& s : p) pc.push_back(s.to_mpf(kPrec));
    for (auto& r : z) {
        if (std::abs(r.imag()) > 1e-6L * (1 + std::abs(r.real()))) continue;
        mpf_class x(static_cast<double>(r.real()), kPrec);
        bool ok = false;
        for (int it = 0; it < 200; ++it) {
            mpf_class f(0, kPrec), d(0, kPrec);
            for (std::size_t i = pc.size(); i-- > 0;) {
                d = d * x + f;
                f = f * x + pc[i];
            }
            if (d == 0) break;
            mpf_class step = f / d;
            x -= step;
            mpf_class tol(1, kPrec);
            mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), kPrec - 40);
            if (abs(step) <= tol * (1 + abs(x))) {
                ok = true;
                break;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

UPoly squarefree_u(const UPoly& p) {
    UPoly g = ugcd(p, uderivative(p));
    if (g.size() <= 1) return p;
    UPoly q, r;
    udivrem(p, g, q, r);
    return q;
}

UPoly conj_u(const UPoly& p) {
    UPoly r = p;
    for (auto& c : r) c = c.conj();
    return r;
}

// Roots of p lying in Q(sqrt f): numeric roots of p and of its conjugate are paired and reconstructed.
std::vector<FieldScalar> field_roots(const UPoly& p, const QuadField* F) {
    std::vector<FieldScalar> out;
    if (p.size() < 2) return out;
    UPoly sf = squarefree_u(p);
    auto r1 = real_roots(sf);
    mpz_class max_den;
    mpz_ui_pow_ui(max_den.get_mpz_t(), 10, 60);
    mpf_class tol(1, kPrec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), kPrec / 2);
    auto push = [&](const FieldScalar& s) {
        for (auto& o : out)
            if (o == s) return;
        if (ueval(sf, s).is_zero()) out.push_back(s);
    };
    if (!F) {
        for (auto& r : r1) {
            mpq_class q;
            if (reconstruct_rational(r, max_den, tol, q)) push(FieldScalar(q));
        }
        return out;
    }
    auto r2 = real_roots(conj_u(sf));
    mpf_class sf_root = sqrt(mpf_class(F->radicand(), kPrec));
    for (auto& a : r1)
        for (auto& b : r2) {
            mpf_class pp = (a + b) / 2, qq = (a - b) / (2 * sf_root);
            mpq_class p, q;
            if (reconstruct_rational(pp, max_den, tol, p) && reconstruct_rational(qq, max_den, tol, q))
                push(FieldScalar(p, q, sgn(q) ? F : nullptr));
        }
    return out;
}

// Even part of m(x) m(-x) (or of m itself when m is even) as a polynomial in X = x^2.
UPoly squares_poly(UPoly m) {
    bool even = true;
    for (std::size_t i = 1; i < m.size(); i += 2) even = even && m[i].is_zero();
    if (!even) {
        UPoly mm = m;
        for (std::size_t i = 1; i < mm.size(); i += 2) mm[i] = -mm[i];
        m = umul(m, mm);
    }
    UPoly out;
    for (std::size_t i = 0; i < m.size(); i += 2) out.push_back(m[i]);
    trim(out);
    return out;
}

int strip_power(FieldPoly& M, const FieldPoly& f) {
    int k = 0;
    while (!M.is_constant()) {
        auto q = M.divide(f);
        if (!q) break;
        M = std::move(*q);
        ++k;
    }
    return k;
}

void add_univariate(std::vector<Factor>& out, const UPoly& c, Var v, FactorKind kind) {
    for (auto& [f, m] : usquarefree(c)) out.push_back(Factor{from_upoly(f, v).normalized(), m, kind});
}

}  // namespace

std::vector<Factor> factor_locus_polynomial(const FieldPoly& L0) {
    if (L0.is_zero()) throw ZeroInput("cannot factor the zero polynomial");
    std::vector<Factor> out;
    FieldPoly M = L0.primitive();
    UPoly cx = content_in(M, X);
    if (cx.size() > 1) {
        M = *M.divide(from_upoly(cx, X));
        add_univariate(out, cx, X, FactorKind::XOnly);
    }
    UPoly cy = content_in(M, Y);
    if (cy.size() > 1) {
        M = *M.divide(from_upoly(cy, Y));
        add_univariate(out, cy, Y, FactorKind::YOnly);
    }
    const QuadField* F = M.field();
    if (M.uses(X) && M.uses(Y)) {
        auto mx = squares_poly(to_upoly(M.coeffs_in(Y)[0], X));
        auto my = M.coeffs_in(X)[0];
        auto ry = squares_poly(to_upoly(my, Y));
        auto Xs = field_roots(mx, F), Ys = field_roots(ry, F);
        FieldPoly x2 = FieldPoly::var(X, 2), y2 = FieldPoly::var(Y, 2);
        for (auto& X0 : Xs)
            for (auto& Y0 : Ys) {
                if (X0.is_zero() || Y0.is_zero() || M.is_constant()) continue;
                FieldPoly conic = (x2.scaled(Y0) + y2.scaled(X0) - FieldPoly(X0 * Y0)).normalized();
                int k = strip_power(M, conic);
                if (k) out.push_back(Factor{conic, k, FactorKind::Conic});
            }
    }
    if (!M.is_constant()) {
        M = M.primitive();
        Var main = M.uses(X) ? X : Y;
        Var other = main == X ? Y : X;
        int mult = 1;
        if (M.uses(other)) {
            int g = generic_multiplicity(M, main, other);
            for (int k : divisors_desc(g))
                if (auto r = perfect_root(M, k)) {
                    M = *r;
                    mult = k;
                    break;
                }
        }
        out.push_back(Factor{M.normalized(), mult, FactorKind::Cofactor});
    }
    return out;
}

FilterResult spurious_filter(std::vector<Factor> factors, const std::vector<Point>& samples) {
    if (samples.size() < 20) throw std::invalid_argument("spurious filter needs at least 20 samples");
    std::size_t K = std::min<std::size_t>(samples.size(), 200);
    FilterResult fr;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto& f = factors[i];
        std::vector<double> res;
        for (std::size_t k = 0; k < K; ++k) {
            const Point& p = samples[k * samples.size() / K];
            std::array<double, kNumVars> at{};
            at[X] = p.x;
            at[Y] = p.y;
            res.push_back(f.poly.relative_residual(at));
        }
        std::size_t hits = std::count_if(res.begin(), res.end(), [](double r) { return r < 1e-8; });
        f.vanish_fraction = static_cast<double>(hits) / static_cast<double>(K);
        f.max_residual = *std::max_element(res.begin(), res.end());
        std::nth_element(res.begin(), res.begin() + res.size() / 2, res.end());
        f.median_residual = res[res.size() / 2];
        if (f.vanish_fraction >= 0.95 && (!best || f.poly.total_degree() < factors[*best].poly.total_degree()))
            best = i;
    }
    if (!best) throw NoVanishingFactor("no factor vanishes on the locus samples");
    factors[*best].genuine = true;
    fr.factors = std::move(factors);
    fr.genuine = *best;
    return fr;
}

FilterResult spurious_filter(const FieldPoly& L, const std::vector<Point>& samples) {
    return spurious_filter(factor_locus_polynomial(L), samples);
}

std::pair<double, double> implicit_semiaxes(const FieldPoly& conic) {
    FieldScalar alpha, beta, gamma;
    for (auto& [m, c] : conic.terms()) {
        if (m == var_monomial(X, 2))
            alpha = c;
        else if (m == var_monomial(Y, 2))
            beta = c;
        else if (m == 0)
            gamma = c;
        else
            throw NotAConic("factor has terms other than x^2, y^2 and a constant");
    }
    if (alpha.sign() < 0) alpha = -alpha, beta = -beta, gamma = -gamma;
    if (!(alpha.sign() > 0 && beta.sign() > 0 && gamma.sign() < 0)) throw NotAConic("factor is not a real ellipse");
    mpf_class A = alpha.to_mpf(kPrec), B = beta.to_mpf(kPrec), G = gamma.to_mpf(kPrec);
    mpf_class a = sqrt(-G / A), b = sqrt(-G / B);
    return {a.get_d(), b.get_d()};
}

std::string report(const EliminationResult& r) {
    std::ostringstream o;
    o << "center " << r.center << "  a = " << r.shape.a.get_str() << "  b = " << r.shape.b.get_str() << "\n";
    o << "steps:\n";
    for (auto& s : r.steps) {
        o << "  " << s.name << ": E deg(x,u) = (" << s.e_degrees[X] << "," << s.e_degrees[U] << ") terms " << s.e_terms
          << "; F deg(y,u) = (" << s.f_degrees[Y] << "," << s.f_degrees[U] << ") terms " << s.f_terms << "; "
          << s.seconds << " s\n";
    }
    o << "L: deg x " << r.L.degree(X) << ", deg y " << r.L.degree(Y) << ", " << r.L.size() << " terms\n";
    o << "factors:\n";
    for (auto& f : r.factors) {
        o << "  [" << factor_kind_name(f.kind) << "]^" << f.multiplicity << (f.genuine ? "  genuine" : "  spurious")
          << "  vanishing " << f.vanish_fraction * 100 << "%  median residual " << f.median_residual << "\n";
        o << "    " << (f.poly.size() <= 40 ? f.poly.str() : "(" + std::to_string(f.poly.size()) + " terms)") << "\n";
    }
    if (r.semiaxes) {
        o.precision(12);
        o << "semi-axes: " << r.semiaxes->first << " " << r.semiaxes->second << "\n";
    }
    o << "elapsed: " << r.seconds << " s\n";
    return o.str();
}

}  // namespace billiard::exact
