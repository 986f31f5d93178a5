#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordeval/errors.hpp"

namespace ordeval {

/// Inclusive ordered value range {min..max} of one column.
struct Scale {
    int min = 1;
    int max = 5;

    int size() const { return max - min + 1; }
    bool contains(int v) const { return v >= min && v <= max; }
    bool valid() const { return max > min; }

    bool operator==(const Scale&) const = default;
};

using CellValue = std::optional<int>;
using Row = std::vector<CellValue>;

/// Respondents x ordered-valued attributes plus an ordered response column.
/// Attribute order matches the source column order; `column_order` keeps the
/// full original header (id and response included) so serialization is exact.
struct OrdinalDataset {
    std::vector<std::string> attribute_names;
    std::vector<Scale> scales;
    std::string response_name;
    Scale response_scale;
    std::vector<Row> rows;
    std::vector<CellValue> responses;
    std::vector<std::string> row_ids;
    std::vector<std::string> column_order;
    std::string id_name;  // empty when row ids are synthesized row numbers

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_attributes() const { return attribute_names.size(); }
    /// Index of a named attribute; throws UnknownAttribute.
    std::size_t attribute_index(std::string_view name) const;

    bool operator==(const OrdinalDataset&) const = default;
};

/// Column typing for CSV ingestion. Columns without an override use
/// `default_scale`. `id_column` may name a column of stable row labels.
struct CsvSchema {
    std::string response_column;
    Scale default_scale{1, 5};
    std::map<std::string, Scale> scales;
    std::string id_column;

    Scale scale_for(const std::string& column) const {
        auto it = scales.find(column);
        return it == scales.end() ? default_scale : it->second;
    }
};

/// Parse the fixed CSV dialect: comma-separated, first row header, empty
/// cell = missing, UTF-8, integer values within their declared scale.
/// Throws MissingResponseColumn, SchemaViolation, EmptyDataset.
OrdinalDataset parse_dataset(std::string_view csv_text, const CsvSchema& schema);

/// Inverse of parse_dataset: emits the identical dialect with the original
/// column layout, '\n' line endings, and a trailing newline.
std::string serialize_dataset(const OrdinalDataset& ds);

struct SplitResult {
    OrdinalDataset labeled;    // rows with a present response
    OrdinalDataset unlabeled;  // rows with a missing response
};

/// Partition rows by response presence; row ids and column order preserved.
SplitResult split_labeled(const OrdinalDataset& ds);

enum class PlantedType { basic, performance, excitement, noise };

struct PlantedAttribute {
    std::string name;
    PlantedType type = PlantedType::noise;
    int pivot = 3;  // unused for performance/noise
    Scale scale{1, 5};
};

struct SyntheticSpec {
    int n = 0;
    std::vector<PlantedAttribute> attributes;
    double noise_level = 0.0;  // Gaussian sd in units of one response step
    Scale response_scale{1, 5};
    std::string response_name = "response";
};

/// Deterministic synthetic dataset. Attribute values are uniform over their
/// scales; the response is the contribution sum (performance: v, basic:
/// min(v, pivot), excitement: max(v - pivot, 0), noise: 0) affinely mapped
/// onto the response scale, plus noise, rounded half-up, clamped.
OrdinalDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

struct Violation {
    std::size_t row = 0;  // 1-based data row, 0 for structural problems
    std::string column;
    std::string detail;
};

struct ColumnDiagnostics {
    std::string name;
    Scale scale;
    std::size_t missing = 0;
    std::vector<std::size_t> value_counts;  // indexed by value - scale.min

    std::vector<int> unused_values() const;
};

/// Validation sweep over a CSV: collects every violation instead of stopping
/// at the first, plus per-column missingness and per-value answer counts.
/// Throws only for structural failures (missing response column, no rows).
struct DatasetDiagnostics {
    std::size_t n_rows = 0;
    std::vector<Violation> violations;
    std::vector<ColumnDiagnostics> columns;  // attribute columns then response

    bool clean() const { return violations.empty(); }
};

DatasetDiagnostics inspect_csv(std::string_view csv_text, const CsvSchema& schema);

}  // namespace ordeval
