#include "cli_run.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ordeval/kano.hpp"
#include "ordeval/ordeval.hpp"
#include "ordeval/predict.hpp"
#include "ordeval/report.hpp"
#include "ordeval/significance.hpp"

namespace ordeval::cli {
namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read input: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

CsvSchema schema_from(const RunConfig& cfg) {
    if (cfg.response_column.empty()) throw Error("response column not set");
    CsvSchema schema;
    schema.response_column = cfg.response_column;
    schema.default_scale = cfg.default_scale;
    schema.scales = cfg.scales;
    schema.id_column = cfg.id_column;
    return schema;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const TooFewRows& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const EmptyTrainingSet& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

Scale scale_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("min") || !j.contains("max"))
        throw Error("config: " + where + " must be an object with min and max");
    Scale s{j.at("min").get<int>(), j.at("max").get<int>()};
    if (!s.valid()) throw Error("config: " + where + " needs min < max");
    return s;
}

std::uint64_t require_seed(const RunConfig& cfg, const char* command) {
    if (!cfg.seed)
        throw Error(std::string("seed is required for ") + command);
    return *cfg.seed;
}

}  // namespace

Scale parse_scale_arg(const std::string& text) {
    auto parse_part = [&](std::string_view part) {
        int value = 0;
        auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || end != part.data() + part.size())
            throw Error("scale must look like min:max, got: " + text);
        return value;
    };
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw Error("scale must look like min:max, got: " + text);
    std::string_view view(text);
    Scale s{parse_part(view.substr(0, colon)), parse_part(view.substr(colon + 1))};
    if (!s.valid()) throw Error("scale needs min < max, got: " + text);
    return s;
}

std::string attribute_plot_filename(std::size_t index, const std::string& name) {
    std::string slug;
    for (char c : name) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '_' || c == '-';
        slug += keep ? c : '_';
        if (slug.size() >= 40) break;
    }
    std::string file = "attribute_" + std::to_string(index + 1);
    if (!slug.empty()) file += "_" + slug;
    return file + ".svg";
}

void apply_config_json(RunConfig& cfg, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "input") {
                cfg.input = value.get<std::string>();
            } else if (key == "response_column") {
                cfg.response_column = value.get<std::string>();
            } else if (key == "id_column") {
                cfg.id_column = value.get<std::string>();
            } else if (key == "default_scale") {
                cfg.default_scale = scale_from_json(value, "default_scale");
            } else if (key == "scales") {
                for (const auto& [col, sj] : value.items())
                    cfg.scales[col] = scale_from_json(sj, "scales." + col);
            } else if (key == "k") {
                cfg.k = value.get<int>();
            } else if (key == "resamples") {
                cfg.resamples = value.get<int>();
            } else if (key == "alpha") {
                cfg.alpha = value.get<double>();
            } else if (key == "tau") {
                cfg.tau = value.get<double>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "output_dir") {
                cfg.output_dir = value.get<std::string>();
            } else if (key == "colorblind") {
                cfg.colorblind = value.get<bool>();
            } else {
                throw Error("unknown config key: " + key);
            }
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    apply_config_json(cfg, read_file(path));
}

int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        DatasetDiagnostics diag = inspect_csv(read_file(cfg.input), schema_from(cfg));
        out << "rows: " << diag.n_rows << "\n";
        for (const ColumnDiagnostics& col : diag.columns) {
            out << "column " << col.name << ": missing " << col.missing << ", counts:";
            for (std::size_t s = 0; s < col.value_counts.size(); ++s)
                out << " " << col.scale.min + static_cast<int>(s) << "="
                    << col.value_counts[s];
            auto unused = col.unused_values();
            if (!unused.empty()) {
                out << ", never used:";
                for (int v : unused) out << " " << v;
            }
            out << "\n";
        }
        for (const Violation& v : diag.violations) {
            out << "violation row " << v.row;
            if (!v.column.empty()) out << ", column " << v.column;
            out << ": " << v.detail << "\n";
        }
        if (diag.clean()) {
            out << "no violations\n";
            return 0;
        }
        out << diag.violations.size() << " violation"
            << (diag.violations.size() == 1 ? "" : "s") << "\n";
        return 2;
    });
}

int run_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const std::uint64_t seed = require_seed(cfg, "evaluate");
        if (!(cfg.tau > 0.0 && cfg.tau <= 1.0))
            throw Error("tau must lie in (0, 1]");
        OrdinalDataset ds = parse_dataset(read_file(cfg.input), schema_from(cfg));
        SplitResult split = split_labeled(ds);

        NeighborTable table = build_neighbor_table(split.labeled, cfg.k);
        auto profiles = tally_profiles(split.labeled, table, split.labeled.responses);
        auto significance = estimate_significance(
            split.labeled, table, profiles,
            {cfg.resamples, cfg.alpha, seed});
        auto kano = classify_attributes(profiles, cfg.tau);
        auto hits = detect_thresholds(profiles, significance, cfg.tau);

        ReportParams params;
        params.k = static_cast<int>(table.front().size());
        params.resamples = cfg.resamples;
        params.alpha = cfg.alpha;
        params.tau = cfg.tau;
        params.seed = seed;
        EvaluationReport report =
            build_report(ds, params, profiles, significance, kano, hits);

        const fs::path dir(cfg.output_dir);
        fs::create_directories(dir);
        PlotOptions plot{cfg.colorblind};

        write_file(dir / "report.json", write_report(report) + "\n");
        out << "wrote " << (dir / "report.json").string() << "\n";
        write_file(dir / "summary.svg", render_summary_plot(report, plot));
        out << "wrote " << (dir / "summary.svg").string() << "\n";
        for (std::size_t a = 0; a < report.attributes.size(); ++a) {
            const std::string& name = report.attributes[a].name;
            const fs::path file = dir / attribute_plot_filename(a, name);
            write_file(file, render_attribute_plot(report, name, plot));
            out << "wrote " << file.string() << "\n";
        }
        return 0;
    });
}

int run_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const std::uint64_t seed = require_seed(cfg, "predict");
        OrdinalDataset ds = parse_dataset(read_file(cfg.input), schema_from(cfg));
        SplitResult split = split_labeled(ds);

        constexpr int kFolds = 10;
        ReportCV cv;
        cv.naive_bayes = cross_validate(split.labeled, nb_learner(), kFolds, seed);
        cv.tree = cross_validate(split.labeled, tree_learner(), kFolds, seed);
        cv.selected = cv.tree.within_one_accuracy > cv.naive_bayes.within_one_accuracy
                          ? "tree"
                          : "naive_bayes";

        Learner chosen = cv.selected == "tree" ? tree_learner() : nb_learner();
        Predictor predictor = chosen(split.labeled);
        std::vector<ReportRankedUnit> units;
        for (const RankedUnit& u : rank_targets(predictor, split.unlabeled))
            units.push_back({u.row_id, u.prediction.value, u.prediction.distribution});

        const fs::path dir(cfg.output_dir);
        fs::create_directories(dir);
        write_file(dir / "cv_report.json", write_cv_report(cv) + "\n");
        out << "wrote " << (dir / "cv_report.json").string() << "\n";
        write_file(dir / "ranking.json", write_ranking(units) + "\n");
        out << "wrote " << (dir / "ranking.json").string() << "\n";

        out << "naive_bayes: exact " << cv.naive_bayes.exact_accuracy
            << ", within-one " << cv.naive_bayes.within_one_accuracy << "\n";
        out << "tree: exact " << cv.tree.exact_accuracy << ", within-one "
            << cv.tree.within_one_accuracy << "\n";
        out << "majority baseline: " << cv.naive_bayes.majority_baseline << "\n";
        out << "ranking uses " << cv.selected << " for " << units.size()
            << " unlabeled row" << (units.size() == 1 ? "" : "s") << "\n";
        return 0;
    });
}

}  // namespace ordeval::cli
