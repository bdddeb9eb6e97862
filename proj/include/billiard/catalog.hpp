#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "billiard/core.hpp"
#include "billiard/expr.hpp"

namespace billiard {

struct NotElliptic : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct NoSpecialRatio : std::out_of_range {
    using std::out_of_range::out_of_range;
};

enum class Similarity { None, B, BPlus, BT, C, CPlus, CT, J, JT };

std::string_view similarity_name(Similarity s);
Similarity parse_similarity(std::string_view s);

struct SemiAxesFormula {
    std::string id;
    std::string a_src, b_src;
    expr::Expr a_expr, b_expr;
    // Helpers in (u, v); empty when the record has none.
    std::vector<std::pair<std::string, expr::Expr>> helpers;
    Similarity sim = Similarity::None;
};

// Slots of the semi-axis expressions.
const std::vector<std::string>& semiaxes_slots();

class SemiAxesCatalog {
public:
    static SemiAxesCatalog parse(std::string_view text);
    static const SemiAxesCatalog& builtin();

    bool has(std::string_view id) const;
    const SemiAxesFormula& formula(std::string_view id) const;
    const std::vector<std::string>& ids() const { return order_; }

    // Absolute values of the formula pair.
    template <class T>
    std::pair<T, T> semiaxes(std::string_view id, const Shape<T>& s) const;

    Similarity similarity_class(std::string_view id) const { return formula(id).sim; }

    struct Row {
        std::string id, a_expr, b_expr, sim;
    };
    std::vector<Row> table() const;

private:
    std::map<std::string, SemiAxesFormula> formulas_;
    std::vector<std::string> order_;
};

template <class T>
std::pair<T, T> SemiAxesCatalog::semiaxes(std::string_view id, const Shape<T>& s) const {
    using std::abs;
    const SemiAxesFormula& f = formula(id);
    const auto& slots = semiaxes_slots();
    std::vector<T> vals(slots.size(), T(0));
    vals[0] = s.a();
    vals[1] = s.b();
    vals[2] = s.delta();
    vals[3] = s.c2();
    std::array<T, 2> ab{s.a(), s.b()}, ba{s.b(), s.a()};
    for (const auto& [name, e] : f.helpers) {
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i] == name + "_ab") vals[i] = e.template eval<T>(std::span<const T>(ab));
            if (slots[i] == name + "_ba") vals[i] = e.template eval<T>(std::span<const T>(ba));
        }
    }
    std::span<const T> sv(vals);
    return {abs(f.a_expr.template eval<T>(sv)), abs(f.b_expr.template eval<T>(sv))};
}

template <class T>
std::pair<T, T> excentral_axes(const Shape<T>& s) {
    return {(s.b() * s.b() + s.delta()) / s.a(), (s.a() * s.a() + s.delta()) / s.b()};
}

struct SpecialRatio {
    hp_float a_over_b;
    std::string property;  // "b_i=b" or "rotated" ((a_i, b_i) = (b, a))
};

// a/b values where the locus of X3, X4 or X40 touches or matches the billiard.
std::vector<SpecialRatio> special_ratios(std::string_view center_id);

}  // namespace billiard
