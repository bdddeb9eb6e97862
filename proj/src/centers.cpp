#include "billiard/centers.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "builtin_data.hpp"

namespace billiard {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

CenterKind parse_kind(const std::string& s) {
    if (s == "rational-h") return CenterKind::RationalH;
    if (s == "heron-h") return CenterKind::HeronH;
    if (s == "matrix-row") return CenterKind::MatrixRow;
    throw expr::ParseError("unknown center kind '" + s + "'");
}

}  // namespace

std::string_view kind_name(CenterKind k) {
    switch (k) {
    case CenterKind::RationalH:
        return "rational-h";
    case CenterKind::HeronH:
        return "heron-h";
    case CenterKind::MatrixRow:
        return "matrix-row";
    }
    return "?";
}

bool CenterSpec::uses_area() const {
    if (kind == CenterKind::MatrixRow)
        return row[0].uses_slot(3) || row[1].uses_slot(3) || row[2].uses_slot(3);
    return h.uses_slot(3);
}

std::string normalize_id(std::string_view id) {
    std::string s = trim(id);
    if (!s.empty() && (s[0] == 'x' || s[0] == 'X')) s = s.substr(1);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return trim(id);
    return "X" + std::to_string(std::stoi(s));
}

CenterCatalog CenterCatalog::parse(std::string_view text) {
    CenterCatalog cat;
    std::istringstream in{std::string(text)};
    std::string line, section;
    std::vector<std::pair<std::string, std::string>> fields;
    int lineno = 0;

    auto flush = [&]() {
        if (section.empty()) return;
        if (section.rfind("triangle ", 0) == 0) {
            DerivedTriangleMatrix m;
            m.name = trim(section.substr(9));
            int seen = 0;
            for (auto& [k, v] : fields) {
                if (k.size() != 4 || k.rfind("row", 0) != 0 || k[3] < '1' || k[3] > '3')
                    throw expr::ParseError("triangle " + m.name + ": unknown key '" + k + "'");
                auto cells = split(v, ';');
                if (cells.size() != 3) throw expr::ParseError("triangle " + m.name + ": row needs 3 entries");
                for (int j = 0; j < 3; ++j)
                    m.m[k[3] - '1'][j] = expr::Expr::parse(cells[j], center_slots(), cat.macros_);
                ++seen;
            }
            if (seen != 3) throw expr::ParseError("triangle " + m.name + " needs row1..row3");
            cat.tri_order_.push_back(m.name);
            cat.triangles_[m.name] = std::move(m);
        } else {
            CenterSpec c;
            c.id = normalize_id(section);
            std::string kind = "rational-h", h, row;
            for (auto& [k, v] : fields) {
                if (k == "name")
                    c.name = v;
                else if (k == "kind")
                    kind = v;
                else if (k == "h")
                    h = v;
                else if (k == "row")
                    row = v;
                else if (k == "source")
                    c.source = v;
                else
                    throw expr::ParseError(c.id + ": unknown key '" + k + "'");
            }
            c.kind = parse_kind(kind);
            if (c.kind == CenterKind::MatrixRow) {
                auto cells = split(row, ';');
                if (cells.size() != 3) throw expr::ParseError(c.id + ": row needs 3 entries");
                for (int j = 0; j < 3; ++j) c.row[j] = expr::Expr::parse(cells[j], center_slots(), cat.macros_);
            } else {
                if (h.empty()) throw expr::ParseError(c.id + ": missing h");
                c.h = expr::Expr::parse(h, center_slots(), cat.macros_);
            }
            if (cat.centers_.count(c.id)) throw expr::ParseError("duplicate center " + c.id);
            cat.order_.push_back(c.id);
            cat.raw_[c.id] = fields;
            cat.centers_[c.id] = std::move(c);
        }
        section.clear();
        fields.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            flush();
            if (t.back() != ']') throw expr::ParseError("line " + std::to_string(lineno) + ": bad section header");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw expr::ParseError("line " + std::to_string(lineno) + ": '=' expected");
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string val = trim(std::string_view(t).substr(eq + 1));
        if (section.empty()) {
            if (key.rfind("macro ", 0) != 0)
                throw expr::ParseError("line " + std::to_string(lineno) + ": only macros allowed before records");
            std::string name = trim(std::string_view(key).substr(6));
            cat.macros_[name] = expr::Expr::parse_node(val, center_slots(), cat.macros_);
            cat.macro_src_.emplace_back(name, val);
        } else {
            fields.emplace_back(key, val);
        }
    }
    flush();
    return cat;
}

const CenterCatalog& CenterCatalog::builtin() {
    static const CenterCatalog cat = parse(builtin_centers_text());
    return cat;
}

CenterCatalog CenterCatalog::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const CenterSpec& CenterCatalog::center(std::string_view id) const {
    auto it = centers_.find(normalize_id(id));
    if (it == centers_.end()) throw std::out_of_range("unknown center " + std::string(id));
    return it->second;
}

const DerivedTriangleMatrix& CenterCatalog::triangle(std::string_view name) const {
    auto it = triangles_.find(std::string(name));
    if (it == triangles_.end()) throw std::out_of_range("unknown derived triangle " + std::string(name));
    return it->second;
}

std::vector<std::string> CenterCatalog::triangle_names() const { return tri_order_; }

std::string CenterCatalog::print() const {
    std::ostringstream out;
    for (auto& [name, src] : macro_src_) out << "macro " << name << " = " << src << "\n";
    for (auto& id : order_) {
        out << "\n[" << id << "]\n";
        for (auto& [k, v] : raw_.at(id)) out << k << " = " << v << "\n";
    }
    for (auto& name : tri_order_) {
        out << "\n[triangle " << name << "]\n";
        const auto& m = triangles_.at(name).m;
        for (int i = 0; i < 3; ++i)
            out << "row" << i + 1 << " = " << m[i][0].source() << " ; " << m[i][1].source() << " ; " << m[i][2].source()
                << "\n";
    }
    return out.str();
}

}  // namespace billiard
