#include "schurfit/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using schurfit::cli::JobConfig;
using schurfit::cli::OutputFormat;

void add_model_options(CLI::App* app, JobConfig& config) {
    app->add_option("--degrees", config.degrees, "Exponents d1 > d2 > ... >= 0, comma separated")->delimiter(',')->allow_extra_args(false);
    app->add_option("--degree", config.degree, "Shorthand for --degrees k,k-1,...,0");
    app->add_flag("--exact", config.exact, "Exact rational arithmetic instead of double precision");
}

void add_input_options(CLI::App* app, JobConfig& config) {
    app->add_option("input", config.input, "Data file with header x,y[,w]; - for standard input");
    app->add_flag("--weights", config.weights, "Use the w column as weights");
    app->add_flag("--skip-malformed", config.skip_malformed, "Drop bad rows with a warning instead of failing");
}

void add_output_option(CLI::App* app, JobConfig& config) {
    const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json}, {"tsv", OutputFormat::tsv}};
    app->add_option("--output", config.output, "Report format")->transform(CLI::CheckedTransformer(formats))->option_text("json|tsv");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app("Least-squares fitting of sparse polynomials via Schur polynomial sums");
    app.require_subcommand(1);
    JobConfig config;
    bool no_timing = false;

    auto* fit = app.add_subcommand("fit", "Fit a polynomial of the given type to a data file");
    add_model_options(fit, config);
    add_input_options(fit, config);
    add_output_option(fit, config);
    fit->add_flag("--no-timing", no_timing, "Report seconds as null");

    auto* stream = app.add_subcommand("stream", "Add points one at a time, reporting coefficients after each");
    add_model_options(stream, config);
    add_input_options(stream, config);
    add_output_option(stream, config);
    stream->add_option("--snapshot", config.snapshot, "State file: resumed from if present, written at the end");
    stream->add_flag("--no-timing", no_timing, "Report seconds as null");

    auto* bench = app.add_subcommand("bench", "Time fits of the quartic test curve over a range of sizes");
    add_model_options(bench, config);
    add_output_option(bench, config);
    bench->add_option("--sizes", config.sizes, "Data sizes m")->delimiter(',')->allow_extra_args(false);
    bench->add_option("--repetitions", config.repetitions, "Timed runs per size; the fastest counts")
        ->check(CLI::PositiveNumber);
    bench->add_option("--noise", config.noise, "Noise amplitude as a fraction of max |g|");
    bench->add_option("--seed", config.seed, "Noise generator seed");

    auto* compare = app.add_subcommand("compare", "Check the closed-form fit against direct elimination");
    add_model_options(compare, config);
    add_input_options(compare, config);
    add_output_option(compare, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return schurfit::cli::kUsageError;
    }
    config.timing = !no_timing;

    if (fit->parsed()) return schurfit::cli::cmd_fit(config, std::cout, std::cerr);
    if (stream->parsed()) return schurfit::cli::cmd_stream(config, std::cout, std::cerr);
    if (bench->parsed()) return schurfit::cli::cmd_bench(config, std::cout, std::cerr);
    return schurfit::cli::cmd_compare(config, std::cout, std::cerr);
}
