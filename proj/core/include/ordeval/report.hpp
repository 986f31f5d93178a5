#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordeval/kano.hpp"
#include "ordeval/predict.hpp"

namespace ordeval {

/// One reinforcement-factor cell as serialized: probability is absent when
/// the factor is undefined (pair_count 0), box is absent when the cell's
/// null distribution was unassessable.
struct ReportCell {
    std::optional<double> probability;
    std::size_t pair_count = 0;
    std::optional<ConfidenceBox> box;
    std::size_t undefined_resamples = 0;
    bool significant = false;

    bool operator==(const ReportCell&) const = default;
};

struct ReportAttribute {
    std::string name;
    Scale scale;
    std::vector<ReportCell> up;    // by value ascending
    std::vector<ReportCell> down;
    ReportCell up_aggregate;
    ReportCell down_aggregate;
    std::string kano;

    bool operator==(const ReportAttribute&) const = default;
};

struct ReportThreshold {
    std::string attribute;
    int value = 0;
    std::string direction;  // "down" or "up"
    double probability = 0.0;
    std::size_t pair_count = 0;
    bool significant = false;

    bool operator==(const ReportThreshold&) const = default;
};

struct ReportColumn {
    std::string name;
    Scale scale;

    bool operator==(const ReportColumn&) const = default;
};

struct ReportDatasetSummary {
    std::size_t n_rows = 0;
    std::size_t n_labeled = 0;
    std::size_t n_unlabeled = 0;
    ReportColumn response;
    std::vector<ReportColumn> attributes;

    bool operator==(const ReportDatasetSummary&) const = default;
};

struct ReportParams {
    int k = 0;
    int resamples = 0;
    double alpha = 0.05;
    double tau = kDefaultTau;
    std::uint64_t seed = 0;

    bool operator==(const ReportParams&) const = default;
};

struct ReportCV {
    CVReport naive_bayes;
    CVReport tree;
    std::string selected;  // learner whose ranking ships: higher within-one
                           // accuracy, ties to naive_bayes

    bool operator==(const ReportCV&) const = default;
};

struct ReportRankedUnit {
    std::string row_id;
    int predicted = 0;
    std::vector<double> distribution;

    bool operator==(const ReportRankedUnit&) const = default;
};

/// Self-contained analysis record: plots re-render from this alone, and the
/// canonical text round-trips losslessly.
struct EvaluationReport {
    int schema_version = 1;
    ReportDatasetSummary dataset;
    ReportParams params;
    std::vector<ReportAttribute> attributes;
    std::vector<ReportThreshold> thresholds;
    std::optional<ReportCV> cv;
    std::optional<std::vector<ReportRankedUnit>> ranking;

    bool operator==(const EvaluationReport&) const = default;

    const ReportAttribute& attribute(std::string_view name) const;
};

/// Assemble the report from per-module products. Throws InconsistentProducts
/// when the pieces disagree on the attribute set.
EvaluationReport build_report(
    const OrdinalDataset& full, const ReportParams& params,
    const std::vector<AttributeProfile>& profiles,
    const std::vector<AttributeSignificance>& significance,
    const std::vector<KanoClassification>& kano,
    const std::vector<ThresholdHit>& thresholds,
    std::optional<ReportCV> cv = std::nullopt,
    std::optional<std::vector<ReportRankedUnit>> ranking = std::nullopt);

/// Canonical JSON text: keys sorted, doubles at 17 significant digits,
/// UTF-8, no trailing newline.
std::string write_report(const EvaluationReport& report);
EvaluationReport parse_report(std::string_view json_text);

/// Standalone documents for the prediction artifacts, same canonical form.
std::string write_cv_report(const ReportCV& cv);
std::string write_ranking(const std::vector<ReportRankedUnit>& ranking);

struct PlotOptions {
    bool colorblind = false;  // swap red/blue for orange/purple
};

/// Bar pixels per factor unit; bar length = probability * kPxPerUnit.
inline constexpr double kPxPerUnit = 160.0;

/// Two-layer track per value: red bar right for the upward factor, blue bar
/// left for the downward factor, the permutation null box-and-whiskers
/// drawn above each bar on the same axis, "n/a" where undefined. Every
/// defined cell yields exactly one rect of class "factor-bar".
std::string render_attribute_plot(const EvaluationReport& report,
                                  std::string_view attribute,
                                  const PlotOptions& options = {});

/// One track per attribute (aggregate factors and boxes, Kano label),
/// sorted by max aggregate descending.
std::string render_summary_plot(const EvaluationReport& report,
                                const PlotOptions& options = {});

}  // namespace ordeval
