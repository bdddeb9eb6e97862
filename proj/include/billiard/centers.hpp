#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "billiard/core.hpp"
#include "billiard/expr.hpp"

namespace billiard {

using expr::PoleAtConfiguration;

struct LineAtInfinity : std::domain_error {
    using std::domain_error::domain_error;
};

enum class CenterKind { RationalH, HeronH, MatrixRow };

std::string_view kind_name(CenterKind k);

// Slots shared by every center expression.
inline const std::vector<std::string>& center_slots() {
    static const std::vector<std::string> slots{"s1", "s2", "s3", "A"};
    return slots;
}

struct CenterSpec {
    std::string id;
    std::string name;
    CenterKind kind = CenterKind::RationalH;
    std::string source;
    expr::Expr h;                  // rational-h / heron-h
    std::array<expr::Expr, 3> row; // matrix-row

    bool uses_area() const;
};

struct DerivedTriangleMatrix {
    std::string name;
    std::array<std::array<expr::Expr, 3>, 3> m;
};

template <class T>
struct Trilinear {
    T p, q, r;
};

class CenterCatalog {
public:
    static CenterCatalog parse(std::string_view text);
    static const CenterCatalog& builtin();
    static CenterCatalog load(const std::string& path);

    const CenterSpec& center(std::string_view id) const;
    const DerivedTriangleMatrix& triangle(std::string_view name) const;
    bool has(std::string_view id) const { return centers_.count(std::string(id)) > 0; }
    // Ids in catalog order.
    const std::vector<std::string>& ids() const { return order_; }
    std::vector<std::string> triangle_names() const;
    const expr::MacroTable& macros() const { return macros_; }
    std::string print() const;

private:
    std::vector<std::pair<std::string, std::string>> macro_src_;
    expr::MacroTable macros_;
    std::map<std::string, CenterSpec> centers_;
    std::vector<std::string> order_;
    std::map<std::string, DerivedTriangleMatrix> triangles_;
    std::vector<std::string> tri_order_;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> raw_;
};

// Accepts "X12", "x12" or "12".
std::string normalize_id(std::string_view id);

template <class T>
Trilinear<T> trilinears(const CenterSpec& spec, T s1, T s2, T s3, T area) {
    using std::isfinite;
    if (spec.kind == CenterKind::MatrixRow) {
        std::array<T, 4> v{s1, s2, s3, area};
        std::span<const T> sv(v);
        return {spec.row[0].eval<T>(sv), spec.row[1].eval<T>(sv), spec.row[2].eval<T>(sv)};
    }
    std::array<T, 4> v1{s1, s2, s3, area}, v2{s2, s3, s1, area}, v3{s3, s1, s2, area};
    Trilinear<T> t{spec.h.eval<T>(std::span<const T>(v1)), spec.h.eval<T>(std::span<const T>(v2)),
                   spec.h.eval<T>(std::span<const T>(v3))};
    if (!isfinite(static_cast<double>(t.p)) || !isfinite(static_cast<double>(t.q)) ||
        !isfinite(static_cast<double>(t.r)))
        throw PoleAtConfiguration("center function is not finite at this configuration");
    return t;
}

template <class T>
Vec2<T> trilinear_to_cartesian(const OrbitTriangle<T>& o, const Trilinear<T>& tr) {
    using std::abs;
    T w1 = tr.p * o.s1, w2 = tr.q * o.s2, w3 = tr.r * o.s3;
    T den = w1 + w2 + w3;
    T scale = abs(w1) + abs(w2) + abs(w3);
    if (!(scale > 0) || abs(den) <= T(1e-13) * scale) throw LineAtInfinity("trilinears map to the line at infinity");
    return (o.P1 * w1 + o.P2 * w2 + o.P3 * w3) / den;
}

template <class T>
Vec2<T> center_position(const CenterSpec& spec, const OrbitTriangle<T>& o) {
    T area = spec.uses_area() ? o.area() : T(0);
    return trilinear_to_cartesian(o, trilinears(spec, o.s1, o.s2, o.s3, area));
}

template <class T>
Vec2<T> derived_vertex(const DerivedTriangleMatrix& m, int row, const OrbitTriangle<T>& o) {
    if (row < 1 || row > 3) throw std::out_of_range("derived triangle row must be 1..3");
    std::array<T, 4> v{o.s1, o.s2, o.s3, o.area()};
    std::span<const T> sv(v);
    const auto& r = m.m[row - 1];
    return trilinear_to_cartesian(o, Trilinear<T>{r[0].eval<T>(sv), r[1].eval<T>(sv), r[2].eval<T>(sv)});
}

}  // namespace billiard
