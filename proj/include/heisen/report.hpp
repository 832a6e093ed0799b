#pragma once

// Verification suites and machine-readable reports.
//
// A CheckRecord captures one numerical verification: a stable identifier, a
// human-readable statement of the property being checked, the measured
// residual, the tolerance it is held to, the outcome, and the wall time.
// Suites group related checks; run_suite executes the suite named in the
// configuration and returns the records in a deterministic order.
//
// Reports are serialized as JSON or CSV.  For a fixed configuration and seed
// the records themselves are bit-reproducible; wall times are not, so the
// JSON serializer segregates them into a dedicated "timing" object that is
// excluded from the reproducibility contract (report_json omits it entirely,
// report_json_with_timing appends it).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace heis {

struct CheckRecord {
    std::string name;      ///< Stable dotted identifier, e.g. "twisted.product_rule.lambda_2".
    std::string property;  ///< The mathematical property this check verifies.
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double seconds = 0.0;  ///< Wall time; excluded from the stable report bytes.
};

/// Configuration for a verification run.  Tolerance overrides replace the
/// built-in per-check tolerances of the corresponding suite when set.
struct RunConfig {
    int n = 1;
    std::vector<double> lambdas = {1.0, -1.0, 2.0};
    int maxDegree = 6;
    int quadPointsPerAxis = 61;
    double boxHalfWidth = 10.0;
    std::uint64_t seed = 42;
    std::string suite = "all";
    std::optional<double> tolBasis;
    std::optional<double> tolRepresentation;
    std::optional<double> tolTwisted;
    std::optional<double> tolWeyl;
    std::optional<double> tolFourier;
    std::optional<double> tolFactorizer;
};

/// Names of the individual suites, in canonical execution order.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument naming the offending field if the
/// configuration is unusable (n < 1, maxDegree < 0, empty or zero lambdas,
/// non-positive quadrature/box/tolerance values, unknown suite).
void validate_config(const RunConfig& config);

/// Runs the configured suite ("all" concatenates every suite in canonical
/// order) and returns one record per check.
std::vector<CheckRecord> run_suite(const RunConfig& config);

bool all_passed(const std::vector<CheckRecord>& records);

/// Stable JSON report: configuration echo plus records, no timing data.
/// Bit-reproducible for a fixed configuration and seed.
std::string report_json(const RunConfig& config, const std::vector<CheckRecord>& records);

/// Same as report_json with a trailing "timing" object (wall seconds per
/// check and a total).  The timing object is outside the reproducibility
/// contract.
std::string report_json_with_timing(const RunConfig& config,
                                    const std::vector<CheckRecord>& records);

/// CSV rendering of the records: header plus one row per record.
std::string report_csv(const std::vector<CheckRecord>& records);

/// Aligned plain-text table suitable for a terminal.
std::string report_text(const std::vector<CheckRecord>& records);

/// Convergence sweep over truncation degrees: for each degree N the
/// compressed-representation unitarity defect on a fixed low-degree window
/// (monotonically nonincreasing in N) and the spectral Plancherel defect on a
/// fixed midpoint grid.  Returns CSV with header "N,unitarity_defect,
/// plancherel_defect"; an empty degree list yields just the header.
std::string convergence_csv(const RunConfig& config, const std::vector<int>& degrees);

/// Frozen phase-space sample points used by the suites (nine points, scaled
/// into the unit-order region componentwise for general n).
std::vector<Eigen::VectorXcd> standard_sample_points(int n);

}  // namespace heis
