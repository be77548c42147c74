#include "schurfit/cli/commands.hpp"

#include "schurfit/cli/dataset_io.hpp"
#include "schurfit/errors.hpp"
#include "schurfit/incremental.hpp"
#include "schurfit/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>

namespace schurfit::cli {

using Json = nlohmann::ordered_json;

Exponents JobConfig::exponents() const {
    if (!degrees.empty() && degree) throw std::invalid_argument("give either --degrees or --degree, not both");
    if (!degrees.empty()) return Exponents(degrees);
    if (degree) return Exponents::descending(*degree);
    throw std::invalid_argument("no model given: pass --degrees d1,d2,... or --degree k");
}

namespace {

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

Table load_table(const std::string& path) {
    if (path == "-") return read_table(std::cin);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_table(in);
}

template <numeric::Field T>
Points<T> load_points(const JobConfig& config, std::ostream& err) {
    std::vector<std::string> warnings;
    Points<T> points = to_points<T>(load_table(config.input), config.weights, config.skip_malformed, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return points;
}

template <numeric::Field T>
Json scalars(std::span<const T> values) {
    Json arr = Json::array();
    for (const T& v : values) arr.push_back(numeric::format_scalar(v));
    return arr;
}

Json seconds_field(const JobConfig& config, double seconds) {
    return config.timing ? Json(seconds) : Json(nullptr);
}

template <numeric::Field T>
Json report(const Exponents& d, std::size_t m, std::span<const T> a, const T& denominator, double residual,
            std::uint64_t evaluations, Json seconds) {
    Json j;
    j["degrees"] = std::vector<int>(d.begin(), d.end());
    j["mode"] = std::string(numeric::mode_name<T>());
    j["m"] = m;
    j["coefficients"] = scalars<T>(a);
    j["denominator"] = numeric::format_scalar(denominator);
    j["residual"] = residual;
    j["evaluations"] = evaluations;
    j["seconds"] = std::move(seconds);
    return j;
}

void write_report_tsv(std::ostream& out, const Json& j) {
    out << "degree\tcoefficient\n";
    for (std::size_t i = 0; i < j["degrees"].size(); ++i)
        out << j["degrees"][i].get<int>() << '\t' << j["coefficients"][i].get<std::string>() << '\n';
    out << "# mode\t" << j["mode"].get<std::string>() << '\n';
    out << "# m\t" << j["m"].get<std::size_t>() << '\n';
    out << "# denominator\t" << j["denominator"].get<std::string>() << '\n';
    out << "# residual\t" << j["residual"].dump() << '\n';
    out << "# evaluations\t" << j["evaluations"].get<std::uint64_t>() << '\n';
    out << "# seconds\t" << j["seconds"].dump() << '\n';
}

void emit(const JobConfig& config, std::ostream& out, const Json& j) {
    if (config.output == OutputFormat::json)
        out << j.dump() << '\n';
    else
        write_report_tsv(out, j);
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <numeric::Field T>
int fit_impl(const JobConfig& config, std::ostream& out, std::ostream& err) {
    const Exponents d = config.exponents();
    const Points<T> points = load_points<T>(config, err);
    if (points.size() == 0) throw InsufficientData("no data rows");
    const regress::DataSet<T> data = to_dataset(points);
    const auto start = std::chrono::steady_clock::now();
    const auto result = regress::fit(d, data);
    const double seconds = elapsed(start);
    emit(config, out,
         report<T>(d, data.size(), result.coefficients, result.denominator, result.residual, result.evaluations.terms,
                   seconds_field(config, seconds)));
    return kSuccess;
}

template <numeric::Field T>
std::optional<incremental::RegressionState<T>> load_snapshot(const std::string& path, const Exponents& d, bool weighted) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open snapshot " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("snapshot " + path + " is not valid JSON: " + e.what());
    }
    auto state = incremental::state_from_json<T>(j);
    if (!(state.degrees() == d)) throw std::invalid_argument("snapshot " + path + " was taken with different degrees");
    if (state.weighted() != weighted) throw std::invalid_argument("snapshot " + path + " differs in weighting from --weights");
    return state;
}

template <numeric::Field T>
void save_snapshot(const std::string& path, const incremental::RegressionState<T>& state) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write snapshot " + path);
    out << incremental::to_json(state).dump() << '\n';
    if (!out) throw IoError("cannot write snapshot " + path);
}

template <numeric::Field T>
int stream_impl(const JobConfig& config, std::ostream& out, std::ostream& err) {
    const Exponents d = config.exponents();
    const std::size_t n = d.size();
    std::optional<incremental::RegressionState<T>> restored;
    if (config.snapshot) restored = load_snapshot<T>(*config.snapshot, d, config.weights);
    incremental::RegressionState<T> state = restored ? std::move(*restored) : incremental::RegressionState<T>(d, config.weights);

    const Points<T> points = load_points<T>(config, err);
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points.weighted)
            state.update(points.x[k], points.y[k], points.w[k]);
        else
            state.update(points.x[k], points.y[k]);
        if (state.size() < n) continue;
        if (config.output == OutputFormat::json) {
            Json line;
            line["m"] = state.size();
            line["coefficients"] = state.has_coefficients() ? scalars<T>(state.coefficients()) : Json(nullptr);
            out << line.dump() << '\n';
        } else {
            out << state.size();
            if (state.has_coefficients())
                for (const T& a : state.coefficients()) out << '\t' << numeric::format_scalar(a);
            else
                for (std::size_t i = 0; i < n; ++i) out << "\tnull";
            out << '\n';
        }
    }
    const double seconds = elapsed(start);
    if (config.snapshot) save_snapshot(*config.snapshot, state);

    const auto& a = state.coefficients();  // throws when underdetermined or degenerate
    emit(config, out,
         report<T>(d, state.size(), a, state.denominator(), regress::detail::to_distance(state.residual_sq()),
                   state.evaluations().terms, seconds_field(config, seconds)));
    return kSuccess;
}

template <numeric::Field T>
double max_relative_difference(std::span<const T> a, std::span<const T> b) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (numeric::is_exact_v<T>) {
            if (!(a[i] == b[i])) diff = std::max(diff, numeric::magnitude(T(a[i] - b[i])));
        } else {
            diff = std::max(diff, std::abs(a[i] - b[i]));
        }
        scale = std::max(scale, numeric::magnitude(b[i]));
    }
    if (diff == 0.0) return 0.0;
    return scale == 0.0 ? std::numeric_limits<double>::infinity() : diff / scale;
}

template <numeric::Field T>
int compare_impl(const JobConfig& config, std::ostream& out, std::ostream& err) {
    const Exponents d = config.exponents();
    const Points<T> points = load_points<T>(config, err);
    if (points.size() == 0) throw InsufficientData("no data rows");
    const regress::DataSet<T> data = to_dataset(points);

    std::optional<std::vector<T>> closed, direct;
    std::string closed_error, direct_error;
    try {
        closed = regress::fit(d, data).coefficients;
    } catch (const std::exception& e) {
        closed_error = e.what();
    }
    try {
        if (data.size() < d.size()) throw InsufficientData("need at least " + std::to_string(d.size()) + " data points");
        direct = oracle::solve_normal(d, data);
    } catch (const std::exception& e) {
        direct_error = e.what();
    }

    if (!closed || !direct) {
        if (!closed) err << "fit: " << closed_error << '\n';
        if (!direct) err << "oracle: " << direct_error << '\n';
        return (!closed && !direct) ? kNoUniqueSolution : kOutOfTolerance;
    }

    const double tolerance = numeric::is_exact_v<T> ? 0.0 : 1e-9;
    const double difference = max_relative_difference<T>(*closed, *direct);
    const bool ok = difference <= tolerance;
    Json j;
    j["degrees"] = std::vector<int>(d.begin(), d.end());
    j["mode"] = std::string(numeric::mode_name<T>());
    j["m"] = data.size();
    j["fit"] = scalars<T>(*closed);
    j["oracle"] = scalars<T>(*direct);
    j["max_relative_difference"] = difference;
    j["tolerance"] = tolerance;
    j["within_tolerance"] = ok;
    if (config.output == OutputFormat::json) {
        out << j.dump() << '\n';
    } else {
        out << "degree\tfit\toracle\n";
        for (std::size_t i = 0; i < d.size(); ++i)
            out << d[i] << '\t' << numeric::format_scalar((*closed)[i]) << '\t' << numeric::format_scalar((*direct)[i])
                << '\n';
        out << "# max_relative_difference\t" << Json(difference).dump() << '\n';
        out << "# within_tolerance\t" << (ok ? "true" : "false") << '\n';
    }
    return ok ? kSuccess : kOutOfTolerance;
}

template <numeric::Field T>
BenchResult bench_impl(const JobConfig& config, const Exponents& d) {
    BenchResult result;
    for (std::size_t m : config.sizes) {
        const SampledCurve curve = quartic_samples(m, config.noise, config.seed);
        std::vector<T> x, y;
        for (std::size_t k = 0; k < m; ++k) {
            if constexpr (numeric::is_exact_v<T>) {
                x.push_back(T::from_double(curve.x[k], 0.0));
                y.push_back(T::from_double(curve.y[k], 0.0));
            } else {
                x.emplace_back(curve.x[k]);
                y.emplace_back(curve.y[k]);
            }
        }
        const regress::DataSet<T> data(std::move(x), std::move(y));
        BenchRow row;
        row.m = m;
        row.seconds = std::numeric_limits<double>::infinity();
        for (int rep = 0; rep < std::max(1, config.repetitions); ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const auto fitted = regress::fit(d, data);
            row.seconds = std::min(row.seconds, elapsed(start));
            row.evaluations = fitted.evaluations;
        }
        result.rows.push_back(row);
    }
    result.slope = loglog_slope(result.rows);
    return result;
}

Exponents bench_exponents(const JobConfig& config) {
    if (config.degrees.empty() && !config.degree) return Exponents({4, 2, 0});
    return config.exponents();
}

int run_guarded(std::ostream& err, auto&& body) {
    try {
        return body();
    } catch (const NonUniqueSolution& e) {
        err << "error: " << e.what() << '\n';
        return kNoUniqueSolution;
    } catch (const InsufficientData& e) {
        err << "error: " << e.what() << '\n';
        return kNoUniqueSolution;
    } catch (const MalformedInput& e) {
        err << "error: malformed input, " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

} // namespace

SampledCurve quartic_samples(std::size_t m, double noise, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("need at least two sample points");
    // max |g| on [-500, 500] is attained at x^2 = 1.25e5
    constexpr double kPeak = 1.5625e10;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    SampledCurve c;
    for (std::size_t k = 0; k < m; ++k) {
        const double x = -500.0 + 1000.0 * static_cast<double>(k) / static_cast<double>(m - 1);
        const double x2 = x * x;
        double y = x2 * x2 - 2.5e5 * x2;
        if (noise != 0.0) y += noise * kPeak * unit(rng);
        c.x.push_back(x);
        c.y.push_back(y);
    }
    return c;
}

double loglog_slope(const std::vector<BenchRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("slope needs at least two sizes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double lx = std::log(static_cast<double>(r.m)), ly = std::log(r.seconds);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(rows.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

BenchResult run_bench(const JobConfig& config) {
    const Exponents d = bench_exponents(config);
    return config.exact ? bench_impl<numeric::GaussRational>(config, d) : bench_impl<numeric::Complex>(config, d);
}

int cmd_fit(const JobConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        return config.exact ? fit_impl<numeric::GaussRational>(config, out, err) : fit_impl<numeric::Complex>(config, out, err);
    });
}

int cmd_stream(const JobConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        return config.exact ? stream_impl<numeric::GaussRational>(config, out, err)
                            : stream_impl<numeric::Complex>(config, out, err);
    });
}

int cmd_compare(const JobConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        return config.exact ? compare_impl<numeric::GaussRational>(config, out, err)
                            : compare_impl<numeric::Complex>(config, out, err);
    });
}

int cmd_bench(const JobConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        if (config.sizes.size() < 4) throw std::invalid_argument("bench needs at least four sizes");
        const Exponents d = bench_exponents(config);
        const BenchResult result = run_bench(config);
        if (config.output == OutputFormat::tsv) {
            out << "m\tseconds\tevaluations\n";
            for (const auto& r : result.rows) out << r.m << '\t' << Json(r.seconds).dump() << '\t' << r.evaluations.terms << '\n';
            out << "# slope\t" << Json(result.slope).dump() << '\n';
        } else {
            Json j;
            j["degrees"] = std::vector<int>(d.begin(), d.end());
            j["mode"] = config.exact ? "exact" : "float";
            j["noise"] = config.noise;
            j["seed"] = config.seed;
            Json series = Json::array();
            for (const auto& r : result.rows)
                series.push_back({{"m", r.m}, {"seconds", r.seconds}, {"evaluations", r.evaluations.terms}});
            j["series"] = std::move(series);
            j["slope"] = result.slope;
            out << j.dump() << '\n';
        }
        return static_cast<int>(kSuccess);
    });
}

} // namespace schurfit::cli
