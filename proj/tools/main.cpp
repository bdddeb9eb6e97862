#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "billiard/core.hpp"
#include "commands.hpp"

using namespace billiard::cli;

namespace {

double g_ratio = 0;

void shape_flags(CLI::App* sub, RunConfig& c) {
    auto* a = sub->add_option("--a", c.a, "major semi-axis (default 1.5)");
    sub->add_option("--b", c.b, "minor semi-axis (default 1)");
    sub->add_option("--ratio", g_ratio, "a/b; a is set to ratio * b")->excludes(a);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-periodic orbits of the elliptic billiard and the loci of their triangle centers"};
    app.require_subcommand(1);
    RunConfig c;

    auto* locus = app.add_subcommand("locus", "sample a center locus");
    shape_flags(locus, c);
    locus->add_option("--center", c.centers, "center id")->required()->expected(1);
    locus->add_option("--samples,-M", c.M, "sample count")->check(CLI::Range(8, 10000000));
    locus->add_option("--format", c.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    locus->add_option("--precision", c.precision, "double or hp (50 digits)")->check(CLI::IsMember({"double", "hp"}));
    locus->add_option("--t0", c.t0, "first t");
    locus->add_option("--t1", c.t1, "end of the t-range (exclusive)");
    locus->add_option("--out,-o", c.output, "output file");

    auto* classify = app.add_subcommand("classify", "fit and classify loci");
    shape_flags(classify, c);
    classify->add_option("--centers,--center", c.centers, "ids, ranges (1-100) or 'all'")->delimiter(',');
    classify->add_option("--samples,-M", c.M, "sample count")->check(CLI::Range(8, 10000000));
    classify->add_option("--threshold", c.threshold, "elliptic iff err/M below this");
    classify->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    classify->add_option("--out,-o", c.output, "output file");

    auto* semi = app.add_subcommand("semiaxes", "closed-form semi-axes of the elliptic loci");
    shape_flags(semi, c);
    semi->add_option("--centers,--center", c.centers, "ids; default all 29")->delimiter(',');
    semi->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    semi->add_option("--precision", c.precision, "double or hp")->check(CLI::IsMember({"double", "hp"}));
    semi->add_option("--out,-o", c.output, "output file");

    auto* quartic = app.add_subcommand("quartic", "quartic locus of the symmedian point");
    shape_flags(quartic, c);
    quartic->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    quartic->add_option("--out,-o", c.output, "output file");

    auto* wind = app.add_subcommand("winding", "winding number, self-intersections and line probes");
    shape_flags(wind, c);
    wind->add_option("--center", c.centers, "center id")->required()->expected(1);
    wind->add_option("--samples,-M", c.M, "sample count")->check(CLI::Range(8, 10000000));
    wind->add_option("--rho", c.rho, "use (1-rho) X + rho I1 with I1 the intouch point")->check(CLI::Range(0.0, 1.0));
    wind->add_option("--lines", c.lines, "random line probes");
    wind->add_option("--seed", c.seed, "seed for line probes");
    wind->add_option("--t0", c.t0, "first t");
    wind->add_option("--t1", c.t1, "end of the t-range (exclusive)");
    wind->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    wind->add_option("--out,-o", c.output, "output file");

    auto* imp = app.add_subcommand("implicitize", "exact implicit equation of a rational center locus");
    imp->add_option("--a", c.a_exact, "rational major semi-axis, e.g. 3/2");
    imp->add_option("--b", c.b_exact, "rational minor semi-axis");
    imp->add_option("--center", c.centers, "center id")->required()->expected(1);
    imp->add_option("--samples,-M", c.M, "samples for the spurious-factor filter")->check(CLI::Range(20, 100000));
    imp->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    imp->add_option("--out,-o", c.output, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    if (g_ratio != 0) c.a = g_ratio * c.b;

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!c.output.empty()) {
        file.open(c.output);
        if (!file) {
            std::cerr << "error: cannot open " << c.output << "\n";
            return kConfigError;
        }
        out = &file;
    }
    try {
        if (locus->parsed()) return cmd_locus(c, *out);
        if (classify->parsed()) return cmd_classify(c, *out);
        if (semi->parsed()) return cmd_semiaxes(c, *out);
        if (quartic->parsed()) return cmd_quartic(c, *out);
        if (wind->parsed()) return cmd_winding(c, *out);
        if (imp->parsed()) return cmd_implicitize(c, *out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const billiard::DegenerateShape& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "evaluation failed: " << e.what() << "\n";
        return kEvalError;
    }
    return kConfigError;
}
