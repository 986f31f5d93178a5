#include "ordeval/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "ordeval/rng.hpp"

namespace ordeval {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

// Strict integer: optional '-', digits, nothing else.
std::optional<int> parse_int(std::string_view field) {
    int value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

struct CsvLayout {
    std::vector<std::string> header;
    std::size_t response_col = 0;
    std::optional<std::size_t> id_col;
    std::vector<std::size_t> attribute_cols;
};

CsvLayout read_header(const std::vector<std::string_view>& lines,
                      const CsvSchema& schema) {
    if (lines.empty()) throw EmptyDataset();
    CsvLayout layout;
    for (auto f : split_fields(lines[0])) layout.header.emplace_back(f);
    for (std::size_t i = 0; i < layout.header.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.header.size(); ++j) {
            if (layout.header[i] == layout.header[j])
                throw Error("duplicate column name: " + layout.header[i]);
        }
    }
    bool found_response = false;
    bool found_id = false;
    for (std::size_t i = 0; i < layout.header.size(); ++i) {
        const std::string& name = layout.header[i];
        if (name == schema.response_column) {
            layout.response_col = i;
            found_response = true;
        } else if (!schema.id_column.empty() && name == schema.id_column) {
            layout.id_col = i;
            found_id = true;
        } else {
            layout.attribute_cols.push_back(i);
        }
    }
    if (!found_response) throw MissingResponseColumn(schema.response_column);
    if (!schema.id_column.empty() && !found_id)
        throw Error("id column not found: " + schema.id_column);
    if (layout.attribute_cols.empty())
        throw Error("no attribute columns besides the response");
    return layout;
}

}  // namespace

std::size_t OrdinalDataset::attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attribute_names.size(); ++i)
        if (attribute_names[i] == name) return i;
    throw UnknownAttribute(std::string(name));
}

OrdinalDataset parse_dataset(std::string_view csv_text, const CsvSchema& schema) {
    auto lines = split_lines(csv_text);
    CsvLayout layout = read_header(lines, schema);

    OrdinalDataset ds;
    ds.column_order = layout.header;
    ds.response_name = layout.header[layout.response_col];
    ds.response_scale = schema.scale_for(ds.response_name);
    if (layout.id_col) ds.id_name = layout.header[*layout.id_col];
    for (std::size_t col : layout.attribute_cols) {
        ds.attribute_names.push_back(layout.header[col]);
        ds.scales.push_back(schema.scale_for(layout.header[col]));
    }

    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto fields = split_fields(lines[li]);
        std::size_t row_number = li;  // 1-based data row
        if (fields.size() != layout.header.size())
            throw Error("row " + std::to_string(row_number) + ": expected " +
                        std::to_string(layout.header.size()) + " fields, got " +
                        std::to_string(fields.size()));

        auto cell = [&](std::size_t col, const Scale& scale) -> CellValue {
            std::string_view raw = fields[col];
            if (raw.empty()) return std::nullopt;
            auto value = parse_int(raw);
            if (!value || !scale.contains(*value))
                throw SchemaViolation(row_number, layout.header[col],
                                      std::string(raw));
            return value;
        };

        Row row;
        row.reserve(layout.attribute_cols.size());
        for (std::size_t a = 0; a < layout.attribute_cols.size(); ++a)
            row.push_back(cell(layout.attribute_cols[a], ds.scales[a]));
        ds.rows.push_back(std::move(row));
        ds.responses.push_back(cell(layout.response_col, ds.response_scale));
        ds.row_ids.push_back(layout.id_col
                                 ? std::string(fields[*layout.id_col])
                                 : std::to_string(row_number));
    }
    if (ds.rows.empty()) throw EmptyDataset();
    return ds;
}

std::string serialize_dataset(const OrdinalDataset& ds) {
    std::string out;
    for (std::size_t c = 0; c < ds.column_order.size(); ++c) {
        if (c) out += ',';
        out += ds.column_order[c];
    }
    out += '\n';

    auto write_cell = [&](const CellValue& v) {
        if (v) out += std::to_string(*v);
    };
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        for (std::size_t c = 0; c < ds.column_order.size(); ++c) {
            if (c) out += ',';
            const std::string& name = ds.column_order[c];
            if (name == ds.response_name) {
                write_cell(ds.responses[r]);
            } else if (!ds.id_name.empty() && name == ds.id_name) {
                out += ds.row_ids[r];
            } else {
                write_cell(ds.rows[r][ds.attribute_index(name)]);
            }
        }
        out += '\n';
    }
    return out;
}

SplitResult split_labeled(const OrdinalDataset& ds) {
    SplitResult result;
    auto shell = ds;
    shell.rows.clear();
    shell.responses.clear();
    shell.row_ids.clear();
    result.labeled = shell;
    result.unlabeled = shell;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        OrdinalDataset& side = ds.responses[r] ? result.labeled : result.unlabeled;
        side.rows.push_back(ds.rows[r]);
        side.responses.push_back(ds.responses[r]);
        side.row_ids.push_back(ds.row_ids[r]);
    }
    return result;
}

OrdinalDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    if (spec.n < 1) throw InvalidSpec("n must be at least 1");
    if (spec.attributes.empty()) throw InvalidSpec("no attributes");
    if (!spec.response_scale.valid()) throw InvalidSpec("bad response scale");
    if (spec.noise_level < 0.0) throw InvalidSpec("negative noise level");
    for (std::size_t i = 0; i < spec.attributes.size(); ++i) {
        const PlantedAttribute& a = spec.attributes[i];
        if (a.name.empty() || a.name == spec.response_name)
            throw InvalidSpec("bad attribute name: " + a.name);
        if (!a.scale.valid())
            throw InvalidSpec("bad scale for attribute: " + a.name);
        bool pivoted =
            a.type == PlantedType::basic || a.type == PlantedType::excitement;
        if (pivoted && !a.scale.contains(a.pivot))
            throw InvalidSpec("pivot outside scale for attribute: " + a.name);
        for (std::size_t j = i + 1; j < spec.attributes.size(); ++j)
            if (a.name == spec.attributes[j].name)
                throw InvalidSpec("duplicate attribute name: " + a.name);
    }

    auto contribution = [](const PlantedAttribute& a, int v) -> double {
        switch (a.type) {
            case PlantedType::performance: return v;
            case PlantedType::basic: return std::min(v, a.pivot);
            case PlantedType::excitement: return std::max(v - a.pivot, 0);
            case PlantedType::noise: return 0.0;
        }
        return 0.0;
    };

    double sum_lo = 0.0, sum_hi = 0.0;
    for (const auto& a : spec.attributes) {
        sum_lo += contribution(a, a.scale.min);
        sum_hi += contribution(a, a.scale.max);
    }

    OrdinalDataset ds;
    ds.response_name = spec.response_name;
    ds.response_scale = spec.response_scale;
    for (const auto& a : spec.attributes) {
        ds.attribute_names.push_back(a.name);
        ds.scales.push_back(a.scale);
        ds.column_order.push_back(a.name);
    }
    ds.column_order.push_back(spec.response_name);

    const double r_lo = spec.response_scale.min;
    const double r_hi = spec.response_scale.max;
    auto eng = rng::make_engine(seed);
    for (int r = 0; r < spec.n; ++r) {
        Row row;
        row.reserve(spec.attributes.size());
        double sum = 0.0;
        for (const auto& a : spec.attributes) {
            int v = rng::uniform_int(eng, a.scale.min, a.scale.max);
            row.push_back(v);
            sum += contribution(a, v);
        }
        double raw = sum_hi > sum_lo
                         ? r_lo + (sum - sum_lo) * (r_hi - r_lo) / (sum_hi - sum_lo)
                         : 0.5 * (r_lo + r_hi);
        if (spec.noise_level > 0.0) raw += spec.noise_level * rng::normal(eng);
        int response = static_cast<int>(std::floor(raw + 0.5));
        response = std::clamp(response, spec.response_scale.min,
                              spec.response_scale.max);
        ds.rows.push_back(std::move(row));
        ds.responses.push_back(response);
        ds.row_ids.push_back(std::to_string(r + 1));
    }
    return ds;
}

std::vector<int> ColumnDiagnostics::unused_values() const {
    std::vector<int> unused;
    for (std::size_t i = 0; i < value_counts.size(); ++i)
        if (value_counts[i] == 0) unused.push_back(scale.min + static_cast<int>(i));
    return unused;
}

DatasetDiagnostics inspect_csv(std::string_view csv_text, const CsvSchema& schema) {
    auto lines = split_lines(csv_text);
    CsvLayout layout = read_header(lines, schema);

    DatasetDiagnostics diag;
    std::vector<std::size_t> checked_cols = layout.attribute_cols;
    checked_cols.push_back(layout.response_col);
    for (std::size_t col : checked_cols) {
        ColumnDiagnostics cd;
        cd.name = layout.header[col];
        cd.scale = schema.scale_for(cd.name);
        cd.value_counts.assign(cd.scale.size(), 0);
        diag.columns.push_back(std::move(cd));
    }

    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto fields = split_fields(lines[li]);
        std::size_t row_number = li;
        diag.n_rows += 1;
        if (fields.size() != layout.header.size()) {
            diag.violations.push_back(
                {row_number, "",
                 "expected " + std::to_string(layout.header.size()) +
                     " fields, got " + std::to_string(fields.size())});
            continue;
        }
        for (std::size_t c = 0; c < checked_cols.size(); ++c) {
            ColumnDiagnostics& cd = diag.columns[c];
            std::string_view raw = fields[checked_cols[c]];
            if (raw.empty()) {
                cd.missing += 1;
                continue;
            }
            auto value = parse_int(raw);
            if (!value) {
                diag.violations.push_back(
                    {row_number, cd.name, "not an integer: " + std::string(raw)});
            } else if (!cd.scale.contains(*value)) {
                diag.violations.push_back(
                    {row_number, cd.name,
                     "value " + std::string(raw) + " outside scale [" +
                         std::to_string(cd.scale.min) + "," +
                         std::to_string(cd.scale.max) + "]"});
            } else {
                cd.value_counts[*value - cd.scale.min] += 1;
            }
        }
    }
    if (diag.n_rows == 0) throw EmptyDataset();
    return diag;
}

}  // namespace ordeval
