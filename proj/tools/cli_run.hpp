#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "ordeval/dataset.hpp"

namespace ordeval::cli {

struct RunConfig {
    std::string input;
    std::string response_column;
    std::string id_column;
    Scale default_scale{1, 5};
    std::map<std::string, Scale> scales;
    int k = 10;
    int resamples = 200;
    double alpha = 0.05;
    double tau = 0.6;
    std::optional<std::uint64_t> seed;  // required for evaluate and predict
    std::string output_dir = ".";
    bool colorblind = false;
};

/// Merge config-file values into cfg (JSON object; unknown keys rejected).
/// Flags are applied on top by the caller, so they override the file.
void apply_config_json(RunConfig& cfg, const std::string& json_text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Exit codes shared by all subcommands: 0 success, 2 input or schema
/// error, 3 insufficient data, 1 unexpected failure.
int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// "min:max" -> Scale; throws Error on malformed text.
Scale parse_scale_arg(const std::string& text);

/// File-name-safe plot name for the index-th attribute (0-based), numbered
/// from 1: "attribute_<index+1>_<slug>.svg".
std::string attribute_plot_filename(std::size_t index, const std::string& name);

}  // namespace ordeval::cli
