#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ordeval::canon {

/// JSON document with one canonical text form: object keys sorted (std::map
/// iteration order), doubles printed with 17 significant digits so parsing
/// the text recovers the exact bit pattern, two-space indentation, UTF-8.
class JValue {
public:
    using Object = std::map<std::string, JValue>;
    using Array = std::vector<JValue>;

    JValue() : v_(nullptr) {}
    JValue(std::nullptr_t) : v_(nullptr) {}
    JValue(bool b) : v_(b) {}
    JValue(int i) : v_(static_cast<std::int64_t>(i)) {}
    JValue(std::int64_t i) : v_(i) {}
    JValue(std::uint64_t u) : v_(u) {}
    JValue(double d);  // rejects non-finite values
    JValue(const char* s) : v_(std::string(s)) {}
    JValue(std::string s) : v_(std::move(s)) {}
    JValue(Object o) : v_(std::move(o)) {}
    JValue(Array a) : v_(std::move(a)) {}

    static JValue object() { return JValue(Object{}); }
    static JValue array() { return JValue(Array{}); }

    JValue& operator[](const std::string& key);
    void push_back(JValue item);

    std::string dump() const;

private:
    std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double,
                 std::string, Object, Array>
        v_;

    void write(std::string& out, int indent) const;
};

/// Shortest-of-17-significant-digits rendering (printf %.17g semantics):
/// integral doubles print without a decimal point, all values round-trip.
std::string format_double(double value);

std::string escape_string(std::string_view raw);

}  // namespace ordeval::canon
