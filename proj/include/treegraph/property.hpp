#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "treegraph/error.hpp"

namespace treegraph {

// Scalar property value: integer, float, string or boolean.
// Ordering comparisons are only defined between values of the same tag.
class PropertyValue {
public:
    using Storage = std::variant<std::int64_t, double, std::string, bool>;

    enum class Tag { Int = 0, Float = 1, Str = 2, Bool = 3 };

    PropertyValue() : v_(std::int64_t{0}) {}
    PropertyValue(std::int64_t v) : v_(v) {}
    PropertyValue(int v) : v_(static_cast<std::int64_t>(v)) {}
    PropertyValue(double v) : v_(v) {}
    PropertyValue(std::string v) : v_(std::move(v)) {}
    PropertyValue(const char* v) : v_(std::string(v)) {}
    PropertyValue(bool v) : v_(v) {}

    Tag tag() const { return static_cast<Tag>(v_.index()); }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    double as_float() const { return std::get<double>(v_); }
    const std::string& as_str() const { return std::get<std::string>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }

    // Equality across tags is false, never an error.
    bool operator==(const PropertyValue& o) const { return v_ == o.v_; }
    bool operator!=(const PropertyValue& o) const { return !(*this == o); }

    bool operator<(const PropertyValue& o) const {
        if (tag() != o.tag())
            throw Error("cannot order property values of different types");
        return v_ < o.v_;
    }

    std::string to_string() const;

    // Parses `text` according to a CSV type name: int, float, str, bool.
    static PropertyValue parse(const std::string& text, const std::string& type);

    static const char* tag_name(Tag t);

private:
    Storage v_;
};

using PropertyMap = std::map<std::string, PropertyValue>;

}  // namespace treegraph
