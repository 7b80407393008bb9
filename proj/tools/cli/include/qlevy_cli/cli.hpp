#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlevy::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Bad flags, inconsistent settings or unreadable inputs (exit 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::optional<std::string> kernel;
    std::optional<std::string> kernel_a;
    std::optional<std::string> kernel_b;
    std::string engine = "wick";
    std::optional<int> n;
    std::optional<int> nmax;
    double t = 1.0;
    std::vector<int> cells;
    std::optional<double> horizon;
    std::optional<int> depth;
    std::string quad = "gauss:24";
    std::optional<double> tol;
    std::optional<double> drift;
    std::string format; ///< empty: the command's default
    std::optional<std::string> out;
    std::vector<long> subdiv;
    std::optional<std::string> cases;
};

/// Runs one invocation (args exclude the program name) and returns the exit
/// code. Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qlevy::cli
