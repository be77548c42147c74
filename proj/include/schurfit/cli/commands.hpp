#pragma once

#include "schurfit/partitions.hpp"
#include "schurfit/regress.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace schurfit::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,       ///< bad flags, unreadable file, malformed input
    kNoUniqueSolution = 2, ///< vanishing denominator or fewer points than terms
    kOutOfTolerance = 3,   ///< compare: the two pipelines disagree
};

enum class OutputFormat { json, tsv };

struct JobConfig {
    std::vector<int> degrees;        ///< empty: use degree
    std::optional<int> degree;       ///< sugar for (k, k-1, ..., 0)
    bool exact = false;
    std::string input = "-";         ///< "-" reads standard input
    bool weights = false;            ///< read the w column
    OutputFormat output = OutputFormat::json;
    bool skip_malformed = false;
    bool timing = true;              ///< false: report seconds as null
    std::optional<std::string> snapshot;

    // bench
    std::vector<std::size_t> sizes{40, 80, 120, 160, 200};
    int repetitions = 3;
    double noise = 0.01;             ///< fraction of max |g(x)| on the grid
    std::uint64_t seed = 1;

    /// The exponent tuple from degrees or degree; throws std::invalid_argument
    /// if neither or both are set.
    Exponents exponents() const;
};

/// Each command writes its report to `out` and diagnostics to `err`, and
/// returns an ExitCode.
int cmd_fit(const JobConfig& config, std::ostream& out, std::ostream& err);
int cmd_stream(const JobConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const JobConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const JobConfig& config, std::ostream& out, std::ostream& err);

/// g(x) = x^4 - 2.5e5 x^2 sampled at m equispaced points of [-500, 500], with
/// uniform noise in [-amplitude, amplitude], amplitude = noise * max|g| over
/// the interval (1.5625e10), from a mt19937_64 seeded with `seed`.
struct SampledCurve {
    std::vector<double> x, y;
};
SampledCurve quartic_samples(std::size_t m, double noise, std::uint64_t seed);

struct BenchRow {
    std::size_t m = 0;
    double seconds = 0.0;            ///< fastest of the repetitions
    regress::EvaluationCount evaluations;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double slope = 0.0;
};

/// Times the float-mode fit on quartic_samples for every size in config.sizes
/// and fits log t = slope * log m + c by least squares.
BenchResult run_bench(const JobConfig& config);

/// Least-squares slope of log(t) against log(m); needs at least two sizes.
double loglog_slope(const std::vector<BenchRow>& rows);

} // namespace schurfit::cli
