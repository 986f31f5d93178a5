#include <CLI11.hpp>
#include <iostream>

#include "cli_run.hpp"

namespace {

using ordeval::cli::RunConfig;

struct SubFlags {
    std::string config_path, input, response, id_column, output_dir, default_scale;
    std::vector<std::string> scale_overrides;
    int k = 10;
    int resamples = 200;
    double alpha = 0.05;
    double tau = 0.6;
    std::uint64_t seed = 0;
    bool colorblind = false;

    CLI::Option *o_config = nullptr, *o_input = nullptr, *o_response = nullptr,
                *o_id = nullptr, *o_default_scale = nullptr, *o_scale = nullptr,
                *o_out = nullptr, *o_seed = nullptr, *o_k = nullptr,
                *o_resamples = nullptr, *o_alpha = nullptr, *o_tau = nullptr,
                *o_colorblind = nullptr;
};

void add_input_flags(CLI::App* cmd, SubFlags& f) {
    f.o_config = cmd->add_option("-c,--config", f.config_path,
                                 "JSON config file; flags override its values");
    f.o_input = cmd->add_option(
        "-i,--input", f.input,
        "input CSV: header row, comma-separated, empty cell = missing answer");
    f.o_response = cmd->add_option("-r,--response", f.response,
                                   "name of the response column");
    f.o_id = cmd->add_option(
        "--id-column", f.id_column,
        "column holding stable row ids (default: 1-based row numbers)");
    f.o_default_scale = cmd->add_option(
        "--default-scale", f.default_scale,
        "scale min:max for columns without an override (default 1:5, the "
        "common five-point Likert convention)");
    f.o_scale = cmd->add_option(
        "--scale", f.scale_overrides,
        "per-column scale override as column=min:max (repeatable)");
}

void add_output_flags(CLI::App* cmd, SubFlags& f) {
    f.o_out = cmd->add_option("-o,--out", f.output_dir,
                              "output directory (default: current directory)");
    f.o_seed = cmd->add_option(
        "--seed", f.seed,
        "RNG seed; required, no wall-clock default: same seed, same bytes");
}

void add_evaluate_flags(CLI::App* cmd, SubFlags& f) {
    f.o_k = cmd->add_option("-k,--neighbors", f.k,
                            "neighborhood size, clamped to [1, n-1] (default 10)");
    f.o_resamples = cmd->add_option(
        "-B,--resamples", f.resamples,
        "response permutations behind the null boxes (default 200)");
    f.o_alpha = cmd->add_option(
        "--alpha", f.alpha,
        "two-sided significance level for the boxes (default 0.05, the usual "
        "testing convention)");
    f.o_tau = cmd->add_option(
        "--tau", f.tau,
        "aggregate-factor threshold for Kano typing (default 0.6, the "
        "method's customary cut)");
    f.o_colorblind = cmd->add_flag(
        "--colorblind", f.colorblind,
        "orange/purple palette instead of the default red/blue");
}

RunConfig build_config(const SubFlags& f) {
    RunConfig cfg;
    if (f.o_config && f.o_config->count())
        ordeval::cli::apply_config_file(cfg, f.config_path);
    if (f.o_input && f.o_input->count()) cfg.input = f.input;
    if (f.o_response && f.o_response->count()) cfg.response_column = f.response;
    if (f.o_id && f.o_id->count()) cfg.id_column = f.id_column;
    if (f.o_default_scale && f.o_default_scale->count())
        cfg.default_scale = ordeval::cli::parse_scale_arg(f.default_scale);
    if (f.o_scale && f.o_scale->count()) {
        for (const std::string& entry : f.scale_overrides) {
            auto eq = entry.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ordeval::Error("scale override must be column=min:max, got: " +
                                     entry);
            cfg.scales[entry.substr(0, eq)] =
                ordeval::cli::parse_scale_arg(entry.substr(eq + 1));
        }
    }
    if (f.o_out && f.o_out->count()) cfg.output_dir = f.output_dir;
    if (f.o_seed && f.o_seed->count()) cfg.seed = f.seed;
    if (f.o_k && f.o_k->count()) cfg.k = f.k;
    if (f.o_resamples && f.o_resamples->count()) cfg.resamples = f.resamples;
    if (f.o_alpha && f.o_alpha->count()) cfg.alpha = f.alpha;
    if (f.o_tau && f.o_tau->count()) cfg.tau = f.tau;
    if (f.o_colorblind && f.o_colorblind->count()) cfg.colorblind = f.colorblind;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ordeval: value-level evaluation of ordinal survey attributes with "
        "permutation significance, Kano typing, and response prediction"};
    app.require_subcommand(1);

    SubFlags vf, ef, pf;
    CLI::App* validate = app.add_subcommand(
        "validate", "check a CSV against its declared scales and summarize answers");
    add_input_flags(validate, vf);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate",
        "compute reinforcement factors, significance boxes, Kano types; write "
        "report.json and SVG plots");
    add_input_flags(evaluate, ef);
    add_output_flags(evaluate, ef);
    add_evaluate_flags(evaluate, ef);

    CLI::App* predict = app.add_subcommand(
        "predict",
        "cross-validate naive Bayes and a decision tree, rank unlabeled rows; "
        "write cv_report.json and ranking.json");
    add_input_flags(predict, pf);
    add_output_flags(predict, pf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed())
            return ordeval::cli::run_validate(build_config(vf), std::cout, std::cerr);
        if (evaluate->parsed())
            return ordeval::cli::run_evaluate(build_config(ef), std::cout, std::cerr);
        return ordeval::cli::run_predict(build_config(pf), std::cout, std::cerr);
    } catch (const ordeval::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
