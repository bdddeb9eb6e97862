#include "billiard/resultant.hpp"

#include <utility>

namespace billiard::exact {

FieldPoly sylvester_determinant(const FieldPoly& p, const FieldPoly& q, Var v) {
    if (p.is_zero() || q.is_zero()) throw ZeroInput("resultant of a zero polynomial");
    auto pc = p.coeffs_in(v), qc = q.coeffs_in(v);
    int m = static_cast<int>(pc.size()) - 1, n = static_cast<int>(qc.size()) - 1;
    if (m == 0) return p.pow(n);
    if (n == 0) return q.pow(m);
    int N = m + n;
    std::vector<std::vector<FieldPoly>> M(N, std::vector<FieldPoly>(N));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = pc[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = qc[n - j];

    FieldPoly prev(1);
    bool negate = false;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int r = k + 1;
            while (r < N && M[r][k].is_zero()) ++r;
            if (r == N) return {};
            std::swap(M[k], M[r]);
            negate = !negate;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                FieldPoly t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                auto d = t.divide(prev);
                if (!d) throw std::logic_error("Bareiss step was not exact");
                M[i][j] = std::move(*d);
            }
            M[i][k] = FieldPoly{};
        }
        prev = M[k][k];
    }
    return negate ? -M[N - 1][N - 1] : M[N - 1][N - 1];
}

FieldPoly resultant(const FieldPoly& p, const FieldPoly& q, Var v) { return sylvester_determinant(p, q, v).primitive(); }

FieldPoly resultant_quadratic(const FieldPoly& e, const FieldPoly& A, const FieldPoly& C, Var v,
                              const Reducer& reduce) {
    auto R = [&](FieldPoly p) { return reduce ? reduce(p) : p; };
    if (e.is_zero() || A.is_zero()) throw ZeroInput("resultant of a zero polynomial");
    auto ec = e.coeffs_in(v);
    int n = static_cast<int>(ec.size()) - 1;
    if (n == 0) return e.pow(2);
    int me = n / 2, mo = (n - 1) / 2;  // top powers of C/A in E_e and E_o
    int he = n % 2 == 0 ? n / 2 : (n - 1) / 2;
    int ho = n % 2 == 0 ? (n - 2) / 2 : (n - 1) / 2;
    std::vector<FieldPoly> Cp{FieldPoly(1)}, Ap{FieldPoly(1)};
    for (int i = 1; i <= std::max(he, ho); ++i) {
        Cp.push_back(R(Cp.back() * C));
        Ap.push_back(R(Ap.back() * A));
    }
    FieldPoly He, Ho;
    for (int j = 0; j <= me; ++j)
        if (!ec[2 * j].is_zero()) He += R(R(ec[2 * j] * Cp[j]) * Ap[he - j]);
    for (int j = 0; j <= mo; ++j)
        if (!ec[2 * j + 1].is_zero()) Ho += R(R(ec[2 * j + 1] * Cp[j]) * Ap[ho - j]);
    if (n % 2 == 0) return R(R(He * He) - R(R(C * A) * R(Ho * Ho)));
    return R(R(A * R(He * He)) - R(C * R(Ho * Ho)));
}

FieldScalar uresultant(const UPoly& a0, const UPoly& b0) {
    UPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) throw ZeroInput("resultant of a zero polynomial");
    FieldScalar acc(1);
    while (true) {
        int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
        if (db == 0) return acc * b[0].pow(static_cast<unsigned>(da));
        if (da == 0) return acc * a[0].pow(static_cast<unsigned>(db));
        UPoly q, r;
        udivrem(a, b, q, r);
        if (r.empty()) return FieldScalar(0);
        int dr = static_cast<int>(r.size()) - 1;
        if ((da * db) % 2) acc = -acc;
        acc *= b.back().pow(static_cast<unsigned>(da - dr));
        a = std::move(b);
        b = std::move(r);
    }
}

namespace {

// Newton interpolation through (xs[i], ys[i]); returns monomial-basis coefficients.
template <class V, class Mul, class Add>
std::vector<V> newton_interpolate(const std::vector<FieldScalar>& xs, std::vector<V> ys, Mul scale, Add add) {
    std::size_t n = xs.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            FieldScalar inv = FieldScalar(1) / (xs[i] - xs[i - k]);
            ys[i] = scale(add(ys[i], scale(ys[i - 1], FieldScalar(-1))), inv);
        }
    // Horner on the Newton form: P = ys[n-1]; P = P*(x - xs[i]) + ys[i]
    std::vector<V> P{ys[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        std::vector<V> nxt(P.size() + 1);
        nxt[0] = scale(P[0], -xs[i]);
        for (std::size_t j = 1; j < P.size(); ++j) nxt[j] = add(P[j - 1], scale(P[j], -xs[i]));
        nxt[P.size()] = P.back();
        nxt[0] = add(nxt[0], ys[i]);
        P = std::move(nxt);
    }
    return P;
}

std::vector<FieldScalar> sample_points(const UPoly& lc, int count) {
    std::vector<FieldScalar> pts;
    for (long k = 0; static_cast<int>(pts.size()) < count; ++k) {
        FieldScalar x(k % 2 == 0 ? k / 2 : -(k + 1) / 2);
        if (!ueval(lc, x).is_zero()) pts.push_back(x);
    }
    return pts;
}

}  // namespace

FieldPoly resultant_separated(const FieldPoly& e, const FieldPoly& f, Var v) {
    if (e.is_zero() || f.is_zero()) throw ZeroInput("resultant of a zero polynomial");
    for (int w = 0; w < kNumVars; ++w) {
        if (w != X && w != v && e.uses(static_cast<Var>(w))) throw std::invalid_argument("e must only use x and v");
        if (w != Y && w != v && f.uses(static_cast<Var>(w))) throw std::invalid_argument("f must only use y and v");
    }
    auto ec = e.coeffs_in(v), fc = f.coeffs_in(v);
    int du_e = static_cast<int>(ec.size()) - 1, du_f = static_cast<int>(fc.size()) - 1;
    if (du_e == 0 || du_f == 0) return sylvester_determinant(e, f, v);
    std::vector<UPoly> ecx, fcy;
    for (auto& c : ec) ecx.push_back(to_upoly(c, X));
    for (auto& c : fc) fcy.push_back(to_upoly(c, Y));
    int dx = e.degree(X) * du_f, dy = f.degree(Y) * du_e;
    auto xs = sample_points(ecx.back(), dx + 1);
    auto ys = sample_points(fcy.back(), dy + 1);

    std::vector<UPoly> rows;  // for each x_i, L(x_i, y) as a polynomial in y
    for (auto& xi : xs) {
        UPoly a;
        for (auto& c : ecx) a.push_back(ueval(c, xi));
        std::vector<FieldScalar> vals;
        for (auto& yj : ys) {
            UPoly b;
            for (auto& c : fcy) b.push_back(ueval(c, yj));
            vals.push_back(uresultant(a, b));
        }
        rows.push_back(newton_interpolate<FieldScalar>(
            ys, vals, [](const FieldScalar& s, const FieldScalar& c) { return s * c; },
            [](const FieldScalar& s, const FieldScalar& t) { return s + t; }));
    }
    for (auto& r : rows) r.resize(dy + 1, FieldScalar(0));
    auto scale = [](const UPoly& p, const FieldScalar& c) {
        UPoly r = p;
        for (auto& t : r) t *= c;
        return r;
    };
    auto add = [](const UPoly& p, const UPoly& q) {
        UPoly r(std::max(p.size(), q.size()), FieldScalar(0));
        for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
        for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
        return r;
    };
    auto coeffs = newton_interpolate<UPoly>(xs, rows, scale, add);  // coeffs[i] = coefficient of x^i, in y
    std::vector<FieldPoly::Term> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < coeffs[i].size(); ++j)
            if (!coeffs[i][j].is_zero())
                terms.emplace_back(var_monomial(X, static_cast<int>(i)) + var_monomial(Y, static_cast<int>(j)),
                                   coeffs[i][j]);
    return FieldPoly::from_terms(std::move(terms));
}

}  // namespace billiard::exact
