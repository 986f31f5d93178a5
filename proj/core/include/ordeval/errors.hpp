#pragma once

#include <stdexcept>
#include <string>

namespace ordeval {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingResponseColumn : Error {
    explicit MissingResponseColumn(const std::string& column)
        : Error("response column not found: " + column) {}
};

/// A cell violates its declared scale (out of range or not an integer).
struct SchemaViolation : Error {
    SchemaViolation(std::size_t row, std::string column, std::string value)
        : Error("schema violation at row " + std::to_string(row) + ", column " + column +
                ": value '" + value + "'"),
          row(row),
          column(std::move(column)),
          value(std::move(value)) {}

    std::size_t row;  // 1-based data row (header not counted)
    std::string column;
    std::string value;
};

struct EmptyDataset : Error {
    EmptyDataset() : Error("dataset has no rows") {}
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct TooFewRows : Error {
    using Error::Error;
};

struct MismatchedShapes : Error {
    using Error::Error;
};

struct EmptyTrainingSet : Error {
    EmptyTrainingSet() : Error("training set is empty") {}
};

struct InconsistentProducts : Error {
    using Error::Error;
};

struct UnknownAttribute : Error {
    explicit UnknownAttribute(const std::string& name) : Error("unknown attribute: " + name) {}
};

}  // namespace ordeval
