#ifndef RANDPOLY_CLI_HPP
#define RANDPOLY_CLI_HPP

#include "randpoly/core.hpp"

#include <ostream>
#include <string>

namespace randpoly::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kBudget = 3,
    kNonConverged = 4,
};

/// Distribution spec: inline JSON ({"v": "p/q", ...} or [[v, "p/q"], ...]),
/// one of the names rademacher, uniformLO..HI, signed-uniformM, or a path to
/// a JSON file in either form.
IntegerDistribution parse_distribution(const std::string& spec);

/// Comma-separated coefficients, constant term first.
IntPolynomial parse_polynomial(const std::string& spec);

/// Runs one subcommand; the report goes to `out` (or --out), a one-line JSON
/// error to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace randpoly::cli

#endif
