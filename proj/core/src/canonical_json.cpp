#include "ordeval/canonical_json.hpp"

#include <charconv>
#include <cmath>

#include "ordeval/errors.hpp"

namespace ordeval::canon {

JValue::JValue(double d) : v_(d) {
    if (!std::isfinite(d))
        throw Error("non-finite number has no canonical JSON form");
}

JValue& JValue::operator[](const std::string& key) {
    if (!std::holds_alternative<Object>(v_)) v_ = Object{};
    return std::get<Object>(v_)[key];
}

void JValue::push_back(JValue item) {
    if (!std::holds_alternative<Array>(v_)) v_ = Array{};
    std::get<Array>(v_).push_back(std::move(item));
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string escape_string(std::string_view raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    out += '"';
    for (unsigned char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    constexpr char hex[] = "0123456789abcdef";
                    out += "\\u00";
                    out += hex[c >> 4];
                    out += hex[c & 0xf];
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
    return out;
}

void JValue::write(std::string& out, int indent) const {
    auto pad = [&](int level) { out.append(static_cast<std::size_t>(level) * 2, ' '); };
    std::visit(
        [&](const auto& value) {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t> ||
                                 std::is_same_v<T, std::uint64_t>) {
                out += std::to_string(value);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_double(value);
            } else if constexpr (std::is_same_v<T, std::string>) {
                out += escape_string(value);
            } else if constexpr (std::is_same_v<T, Object>) {
                if (value.empty()) {
                    out += "{}";
                    return;
                }
                out += "{\n";
                std::size_t i = 0;
                for (const auto& [key, child] : value) {
                    pad(indent + 1);
                    out += escape_string(key);
                    out += ": ";
                    child.write(out, indent + 1);
                    if (++i < value.size()) out += ',';
                    out += '\n';
                }
                pad(indent);
                out += '}';
            } else if constexpr (std::is_same_v<T, Array>) {
                if (value.empty()) {
                    out += "[]";
                    return;
                }
                out += "[\n";
                for (std::size_t i = 0; i < value.size(); ++i) {
                    pad(indent + 1);
                    value[i].write(out, indent + 1);
                    if (i + 1 < value.size()) out += ',';
                    out += '\n';
                }
                pad(indent);
                out += ']';
            }
        },
        v_);
}

std::string JValue::dump() const {
    std::string out;
    write(out, 0);
    return out;
}

}  // namespace ordeval::canon
