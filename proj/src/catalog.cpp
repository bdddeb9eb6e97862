#include "billiard/catalog.hpp"

#include <boost/math/tools/roots.hpp>
#include <cctype>
#include <sstream>

#include "billiard/centers.hpp"
#include "builtin_data.hpp"

namespace billiard {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

const std::vector<std::string>& helper_slots() {
    static const std::vector<std::string> s{"u", "v"};
    return s;
}

}  // namespace

const std::vector<std::string>& semiaxes_slots() {
    static const std::vector<std::string> s{"a",     "b",     "delta",  "c2",     "wp_ab", "wp_ba",
                                            "wpp_ab", "wpp_ba", "w_ab", "w_ba"};
    return s;
}

std::string_view similarity_name(Similarity s) {
    switch (s) {
    case Similarity::None:
        return "none";
    case Similarity::B:
        return "B";
    case Similarity::BPlus:
        return "B+";
    case Similarity::BT:
        return "Bt";
    case Similarity::C:
        return "C";
    case Similarity::CPlus:
        return "C+";
    case Similarity::CT:
        return "Ct";
    case Similarity::J:
        return "J";
    case Similarity::JT:
        return "Jt";
    }
    return "?";
}

Similarity parse_similarity(std::string_view s) {
    for (auto v : {Similarity::None, Similarity::B, Similarity::BPlus, Similarity::BT, Similarity::C, Similarity::CPlus,
                   Similarity::CT, Similarity::J, Similarity::JT})
        if (similarity_name(v) == s) return v;
    throw expr::ParseError("unknown similarity class '" + std::string(s) + "'");
}

SemiAxesCatalog SemiAxesCatalog::parse(std::string_view text) {
    SemiAxesCatalog cat;
    expr::MacroTable macros;
    std::istringstream in{std::string(text)};
    std::string line, section;
    std::vector<std::pair<std::string, std::string>> fields;

    auto flush = [&]() {
        if (section.empty()) return;
        SemiAxesFormula f;
        f.id = normalize_id(section);
        for (auto& [k, v] : fields) {
            if (k == "a")
                f.a_src = v;
            else if (k == "b")
                f.b_src = v;
            else if (k == "sim")
                f.sim = parse_similarity(v);
            else if (k == "wp" || k == "wpp" || k == "w")
                f.helpers.emplace_back(k, expr::Expr::parse(v, helper_slots()));
            else
                throw expr::ParseError(f.id + ": unknown key '" + k + "'");
        }
        if (f.a_src.empty() || f.b_src.empty()) throw expr::ParseError(f.id + ": both a and b are required");
        f.a_expr = expr::Expr::parse(f.a_src, semiaxes_slots(), macros);
        f.b_expr = expr::Expr::parse(f.b_src, semiaxes_slots(), macros);
        cat.order_.push_back(f.id);
        cat.formulas_[f.id] = std::move(f);
        section.clear();
        fields.clear();
    };

    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            flush();
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw expr::ParseError("'=' expected in '" + t + "'");
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string val = trim(std::string_view(t).substr(eq + 1));
        if (section.empty()) {
            if (key.rfind("macro ", 0) != 0) throw expr::ParseError("only macros allowed before records");
            macros[trim(std::string_view(key).substr(6))] = expr::Expr::parse_node(val, semiaxes_slots(), macros);
        } else {
            fields.emplace_back(key, val);
        }
    }
    flush();
    return cat;
}

const SemiAxesCatalog& SemiAxesCatalog::builtin() {
    static const SemiAxesCatalog cat = parse(builtin_semiaxes_text());
    return cat;
}

bool SemiAxesCatalog::has(std::string_view id) const { return formulas_.count(normalize_id(id)) > 0; }

const SemiAxesFormula& SemiAxesCatalog::formula(std::string_view id) const {
    auto it = formulas_.find(normalize_id(id));
    if (it == formulas_.end()) throw NotElliptic(std::string(id) + " is not in the elliptic catalog");
    return it->second;
}

std::vector<SemiAxesCatalog::Row> SemiAxesCatalog::table() const {
    std::vector<Row> rows;
    for (auto& id : order_) {
        const auto& f = formulas_.at(id);
        std::string a = f.a_src, b = f.b_src;
        for (auto& [name, e] : f.helpers) {
            a += "; " + name + "(u,v) = " + e.source();
        }
        rows.push_back({id, a, b, std::string(similarity_name(f.sim))});
    }
    return rows;
}

std::vector<SpecialRatio> special_ratios(std::string_view center_id) {
    using boost::multiprecision::sqrt;
    std::string id = normalize_id(center_id);
    std::vector<SpecialRatio> out;
    if (id == "X3") {
        out.push_back({sqrt(2 * sqrt(hp_float(33)) + 2) / 2, "b_i=b"});
    } else if (id == "X4") {
        out.push_back({sqrt(2 * sqrt(hp_float(2)) - 1), "b_i=b"});
        auto f = [](hp_float x) {
            hp_float x2 = x * x;
            return std::make_pair(x2 * x2 * x2 + x2 * x2 - 4 * x2 * x - x2 - 1,
                                  6 * x2 * x2 * x + 4 * x2 * x - 12 * x2 - 2 * x);
        };
        hp_float root = boost::math::tools::newton_raphson_iterate(f, hp_float(1.5), hp_float(1.2), hp_float(2.0), 160);
        out.push_back({root, "rotated"});
    } else if (id == "X40") {
        out.push_back({sqrt(hp_float(2)), "b_i=b"});
        out.push_back({(1 + sqrt(hp_float(5))) / 2, "rotated"});
    } else {
        throw NoSpecialRatio(id + " has no special aspect ratios");
    }
    return out;
}

}  // namespace billiard
