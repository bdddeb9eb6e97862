#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace billiard::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kEvalError = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    double a = 1.5, b = 1.0;
    std::string a_exact = "3/2", b_exact = "1";  // implicitize only
    std::vector<std::string> centers;
    int M = 1500;
    double threshold = 1e-8;
    std::string precision = "double";  // or "hp"
    std::string format;
    std::string output;  // empty: stdout
    unsigned seed = 1;
    double rho = -1;      // winding: Y1 convex combination when >= 0
    int lines = 0;        // winding: random line probes
    double t0 = 0, t1 = 0;  // t-range; t1 <= t0 means [0, 2 pi)
};

// Expands "X1", "1-10", "1,2,5" and "all" into catalog ids.
std::vector<std::string> expand_ids(const std::vector<std::string>& specs);

int cmd_locus(const RunConfig& c, std::ostream& out);
int cmd_classify(const RunConfig& c, std::ostream& out);
int cmd_semiaxes(const RunConfig& c, std::ostream& out);
int cmd_quartic(const RunConfig& c, std::ostream& out);
int cmd_winding(const RunConfig& c, std::ostream& out);
int cmd_implicitize(const RunConfig& c, std::ostream& out);

}  // namespace billiard::cli
