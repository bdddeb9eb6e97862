#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

#include "billiard/catalog.hpp"
#include "billiard/implicitize.hpp"
#include "billiard/locus.hpp"

namespace billiard::cli {

using nlohmann::ordered_json;

namespace {

const CenterCatalog& cat() { return CenterCatalog::builtin(); }

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sci(double v, int digits = 3) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Shape<double> shape_of(const RunConfig& c) { return validate_shape(c.a, c.b); }

const CenterSpec& center_of(const std::string& raw) {
    std::string id = normalize_id(raw);
    if (!cat().has(id)) throw ConfigError("unknown center '" + raw + "'");
    return cat().center(id);
}

std::pair<double, double> t_range(const RunConfig& c) {
    if (c.t1 > c.t0) return {c.t0, c.t1};
    return {0.0, 2 * pi<double>()};
}

ordered_json header(const std::string& command, const RunConfig& c) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["a"] = c.a;
    j["b"] = c.b;
    return j;
}

void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

std::string polyline(const std::vector<Point>& pts, bool close) {
    std::ostringstream o;
    o << std::setprecision(6);
    for (std::size_t i = 0; i < pts.size(); ++i) o << (i ? " " : "") << pts[i].x << "," << -pts[i].y;
    if (close && !pts.empty()) o << " " << pts[0].x << "," << -pts[0].y;
    return o.str();
}

std::vector<Point> ellipse(double a, double b, int n = 720) {
    std::vector<Point> p;
    for (int k = 0; k < n; ++k) {
        double t = 2 * pi<double>() * k / n;
        p.push_back({a * std::cos(t), b * std::sin(t)});
    }
    return p;
}

void write_svg(std::ostream& out, const Shape<double>& s, const LocusSamples& L) {
    double margin = 0.1 * s.a();
    double half = s.a() + margin;
    for (auto& p : L.samples) half = std::max({half, std::abs(p.x) + margin, std::abs(p.y) + margin});
    double stroke = half / 400;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" << -half << " " << -half
        << " " << 2 * half << " " << 2 * half << "\">\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\" points=\""
        << polyline(ellipse(s.a(), s.b()), true) << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"brown\" stroke-width=\"" << stroke << "\" points=\""
        << polyline(ellipse(s.caustic_a(), s.caustic_b()), true) << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"green\" stroke-width=\"" << stroke << "\" points=\""
        << polyline(L.points(), true) << "\"/>\n";
    out << "</svg>\n";
}

LocusSamples sample(const RunConfig& c, const Shape<double>& s, const CenterSpec& spec) {
    if (c.precision == "hp") {
        if (c.t1 > c.t0) throw ConfigError("--precision hp samples the full t-range only");
        return sample_locus_hp(Shape<hp_float>(hp_float(num(c.a)), hp_float(num(c.b))), spec, c.M);
    }
    auto [t0, t1] = t_range(c);
    return sample_locus(s, spec, c.M, t0, t1);
}

}  // namespace

std::vector<std::string> expand_ids(const std::vector<std::string>& specs) {
    std::vector<std::string> ids;
    if (specs.empty()) return cat().ids();
    for (const auto& raw : specs) {
        if (raw == "all") {
            for (auto& id : cat().ids()) ids.push_back(id);
            continue;
        }
        auto dash = raw.find('-');
        if (dash != std::string::npos && dash > 0) {
            std::string lo = normalize_id(raw.substr(0, dash)), hi = normalize_id(raw.substr(dash + 1));
            int a = 0, b = 0;
            try {
                a = std::stoi(lo.substr(1));
                b = std::stoi(hi.substr(1));
            } catch (const std::exception&) {
                throw ConfigError("bad id range '" + raw + "'");
            }
            if (a > b) throw ConfigError("bad id range '" + raw + "'");
            for (int i = a; i <= b; ++i) ids.push_back(center_of("X" + std::to_string(i)).id);
            continue;
        }
        ids.push_back(center_of(raw).id);
    }
    return ids;
}

int cmd_locus(const RunConfig& c, std::ostream& out) {
    Shape<double> s = shape_of(c);
    const CenterSpec& spec = center_of(c.centers.at(0));
    LocusSamples L = sample(c, s, spec);
    std::string format = c.format.empty() ? "csv" : c.format;
    if (format == "csv") {
        out << "t,x,y\n";
        for (auto& p : L.samples) out << num(p.t) << "," << num(p.x) << "," << num(p.y) << "\n";
    } else if (format == "json") {
        ordered_json j = header("locus", c);
        j["center"] = spec.id;
        j["M"] = c.M;
        j["precision"] = c.precision;
        ordered_json t = ordered_json::array(), x = ordered_json::array(), y = ordered_json::array();
        for (auto& p : L.samples) {
            t.push_back(p.t);
            x.push_back(p.x);
            y.push_back(p.y);
        }
        j["t"] = t;
        j["x"] = x;
        j["y"] = y;
        j["dropped"] = L.dropped;
        write_json(out, j);
    } else {
        write_svg(out, s, L);
    }
    return kOk;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
    Shape<double> s = shape_of(c);
    auto ids = expand_ids(c.centers);
    struct Row {
        std::string id;
        std::optional<CenterFit> fit;
        std::string error;
    };
    std::vector<Row> rows(ids.size());
    parallel_for(ids.size(), [&](std::size_t i) {
        rows[i].id = ids[i];
        try {
            rows[i].fit = classify_center(s, cat().center(ids[i]), c.M, c.threshold);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (!a.fit || !b.fit) return a.fit.has_value() && !b.fit.has_value();
        return a.fit->fit.err < b.fit->fit.err;
    });
    std::size_t failed = std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.fit; });
    std::size_t elliptic = std::count_if(rows.begin(), rows.end(), [](const Row& r) {
        return r.fit && r.fit->cls == LocusClass::Elliptic;
    });
    if (c.format == "json") {
        ordered_json j = header("classify", c);
        j["M"] = c.M;
        j["threshold"] = c.threshold;
        j["elliptic"] = elliptic;
        ordered_json arr = ordered_json::array();
        int rank = 0;
        for (auto& r : rows) {
            ordered_json e;
            e["rank"] = ++rank;
            e["id"] = r.id;
            if (r.fit) {
                const auto& f = r.fit->fit;
                e["class"] = class_name(r.fit->cls);
                e["a_hat"] = f.degenerate ? ordered_json() : ordered_json(f.a_hat);
                e["b_hat"] = f.degenerate ? ordered_json() : ordered_json(f.b_hat);
                e["err"] = f.err;
                e["ss"] = f.ss;
                e["m_used"] = f.m_used;
                if (r.fit->at_infinity) e["at_infinity"] = true;
            } else {
                e["class"] = "failed";
                e["error"] = r.error;
            }
            arr.push_back(e);
        }
        j["centers"] = arr;
        write_json(out, j);
    } else {
        out << "rank  id     a_hat     b_hat     err        class\n";
        int rank = 0;
        for (auto& r : rows) {
            ++rank;
            std::ostringstream line;
            line << std::left << std::setw(6) << rank << std::setw(7) << r.id;
            if (!r.fit) {
                line << "failed: " << r.error;
            } else {
                const auto& f = r.fit->fit;
                line << std::setw(10) << (f.degenerate ? "-" : fixed(f.a_hat, 5))
                     << std::setw(10) << (f.degenerate ? "-" : fixed(f.b_hat, 5)) << std::setw(11) << sci(f.err, 2)
                     << class_name(r.fit->cls);
            }
            out << line.str() << "\n";
        }
        out << elliptic << " elliptic of " << rows.size() << "\n";
    }
    return failed == rows.size() && !rows.empty() ? kEvalError : kOk;
}

int cmd_semiaxes(const RunConfig& c, std::ostream& out) {
    Shape<double> s = shape_of(c);
    const auto& sax = SemiAxesCatalog::builtin();
    std::vector<std::string> ids;
    if (c.centers.empty())
        ids = sax.ids();
    else
        for (auto& raw : c.centers) {
            std::string id = normalize_id(raw);
            if (!sax.has(id)) throw ConfigError(id + " has no elliptic locus in the catalog");
            ids.push_back(id);
        }
    std::vector<std::pair<std::string, std::string>> vals;
    for (auto& id : ids) {
        if (c.precision == "hp") {
            auto [ai, bi] = sax.semiaxes<hp_float>(id, Shape<hp_float>(hp_float(num(c.a)), hp_float(num(c.b))));
            vals.emplace_back(ai.str(40), bi.str(40));
        } else {
            auto [ai, bi] = sax.semiaxes<double>(id, s);
            vals.emplace_back(num(ai), num(bi));
        }
    }
    if (c.format == "json") {
        ordered_json j = header("semiaxes", c);
        j["precision"] = c.precision;
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto& f = sax.formula(ids[i]);
            ordered_json e;
            e["id"] = ids[i];
            e["a_i"] = vals[i].first;
            e["b_i"] = vals[i].second;
            e["a_expr"] = f.a_src;
            e["b_expr"] = f.b_src;
            e["similarity"] = std::string(similarity_name(f.sim));
            arr.push_back(e);
        }
        j["centers"] = arr;
        write_json(out, j);
    } else {
        for (std::size_t i = 0; i < ids.size(); ++i)
            out << std::left << std::setw(6) << ids[i] << " " << vals[i].first << " " << vals[i].second << "  "
                << similarity_name(sax.similarity_class(ids[i])) << "\n";
    }
    return kOk;
}

int cmd_quartic(const RunConfig& c, std::ostream& out) {
    Shape<double> s = shape_of(c);
    auto q = x6_quartic(s);
    double ratio = q.area_ratio();
    if (c.format == "json") {
        ordered_json j = header("quartic", c);
        j["c"] = {q.c1, q.c2, q.c3, q.c4, q.c5};
        j["ratios"] = {q.c1 / q.c3, q.c2 / q.c3, q.c4 / q.c3, q.c5 / q.c3};
        j["a6"] = q.a6;
        j["b6"] = q.b6;
        j["area_ratio"] = ratio;
        write_json(out, j);
    } else {
        out << "a/b " << fixed(s.a() / s.b(), 4) << "\n";
        out << "a6 " << fixed(q.a6, 3) << "  b6 " << fixed(q.b6, 3) << "\n";
        out << "c1/c3 " << fixed(q.c1 / q.c3, 3) << "  c2/c3 " << fixed(q.c2 / q.c3, 3) << "  c4/c3 "
            << fixed(q.c4 / q.c3, 3) << "  c5/c3 " << fixed(q.c5 / q.c3, 3) << "\n";
        out << "area ratio " << fixed(ratio, 4) << "\n";
    }
    return kOk;
}

int cmd_winding(const RunConfig& c, std::ostream& out) {
    Shape<double> s = shape_of(c);
    const CenterSpec& spec = center_of(c.centers.at(0));
    auto [t0, t1] = t_range(c);
    LocusSamples L = sample_locus(s, spec, c.M, t0, t1);
    double rho_star = 1 - (s.b() / s.a()) * (s.b() / s.a());
    if (c.rho >= 0) {
        const auto& tri = cat().triangle("intouch");
        auto I = sample_map(s, [&](const OrbitTriangle<double>& o) { return derived_vertex(tri, 1, o); }, c.M, t0, t1);
        auto y = convex_combination_locus(s, L, I, c.rho);
        L = y.locus;
        rho_star = y.rho_star;
    }
    auto pts = L.points();
    int w = winding_number(pts, Point{0, 0});
    if (c.rho < 0 && !(c.t1 > c.t0)) pts = sample_locus(s, spec, c.M, -s.t_star(), s.t_star()).points();
    int si = self_intersections(pts);
    int worst = -1;
    if (c.lines > 0) {
        std::mt19937_64 rng(c.seed);
        double R = 0;
        for (auto& p : pts) R = std::max(R, p.norm());
        std::uniform_real_distribution<double> off(-R, R), ang(0, pi<double>());
        for (int i = 0; i < c.lines; ++i) {
            double th = ang(rng);
            worst = std::max(worst, line_intersections(pts, Point{off(rng), off(rng)}, Point{std::cos(th), std::sin(th)}));
        }
    }
    if (c.format == "json") {
        ordered_json j = header("winding", c);
        j["center"] = spec.id;
        j["M"] = c.M;
        if (c.rho >= 0) j["rho"] = c.rho;
        j["rho_star"] = rho_star;
        j["winding"] = w;
        j["self_intersections"] = si;
        if (c.lines > 0) {
            j["lines"] = c.lines;
            j["seed"] = c.seed;
            j["max_line_intersections"] = worst;
        }
        write_json(out, j);
    } else {
        out << "center " << spec.id << (c.rho >= 0 ? "  rho " + fixed(c.rho, 4) : "") << "\n";
        out << "winding about origin " << w << "\n";
        out << "self-intersections " << si << "\n";
        out << "rho* " << fixed(rho_star, 6) << "\n";
        if (c.lines > 0) out << "max crossings over " << c.lines << " random lines " << worst << "\n";
    }
    return kOk;
}

int cmd_implicitize(const RunConfig& c, std::ostream& out) {
    exact::RationalShape shape;
    try {
        shape = exact::RationalShape::parse(c.a_exact, c.b_exact);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const CenterSpec& spec = center_of(c.centers.at(0));
    exact::ChainOptions opt;
    opt.samples = c.M == 1500 ? 200 : c.M;
    exact::EliminationResult r;
    try {
        r = exact::eliminate_chain(spec, shape, opt);
    } catch (const exact::NotRational& e) {
        throw ConfigError(spec.id + ": " + e.what());
    }
    if (c.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "implicitize";
        j["a"] = shape.a.get_str();
        j["b"] = shape.b.get_str();
        j["center"] = r.center;
        ordered_json steps = ordered_json::array();
        for (auto& st : r.steps) {
            ordered_json e;
            e["name"] = st.name;
            e["e_terms"] = st.e_terms;
            e["f_terms"] = st.f_terms;
            e["seconds"] = st.seconds;
            steps.push_back(e);
        }
        j["steps"] = steps;
        j["L"] = {{"deg_x", r.L.degree(exact::X)}, {"deg_y", r.L.degree(exact::Y)}, {"terms", r.L.size()}};
        ordered_json fs = ordered_json::array();
        for (auto& f : r.factors) {
            ordered_json e;
            e["kind"] = exact::factor_kind_name(f.kind);
            e["multiplicity"] = f.multiplicity;
            e["genuine"] = f.genuine;
            e["vanish_fraction"] = f.vanish_fraction;
            e["median_residual"] = f.median_residual;
            e["terms"] = f.poly.size();
            e["poly"] = f.poly.str();
            fs.push_back(e);
        }
        j["factors"] = fs;
        if (r.semiaxes) j["semiaxes"] = {r.semiaxes->first, r.semiaxes->second};
        j["seconds"] = r.seconds;
        write_json(out, j);
    } else {
        out << exact::report(r);
    }
    return kOk;
}

}  // namespace billiard::cli
