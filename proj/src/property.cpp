#include "treegraph/property.hpp"

#include <cstdio>
#include <cstdlib>

namespace treegraph {

std::string PropertyValue::to_string() const {
    switch (tag()) {
        case Tag::Int:
            return std::to_string(as_int());
        case Tag::Float: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", as_float());
            return buf;
        }
        case Tag::Str:
            return as_str();
        case Tag::Bool:
            return as_bool() ? "true" : "false";
    }
    return {};
}

PropertyValue PropertyValue::parse(const std::string& text, const std::string& type) {
    if (type == "int") {
        char* end = nullptr;
        long long v = std::strtoll(text.c_str(), &end, 10);
        if (end == text.c_str() || *end != '\0')
            throw Error("bad int property value: " + text);
        return PropertyValue(static_cast<std::int64_t>(v));
    }
    if (type == "float") {
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0')
            throw Error("bad float property value: " + text);
        return PropertyValue(v);
    }
    if (type == "str") return PropertyValue(text);
    if (type == "bool") {
        if (text == "true" || text == "1") return PropertyValue(true);
        if (text == "false" || text == "0") return PropertyValue(false);
        throw Error("bad bool property value: " + text);
    }
    throw Error("unknown property type: " + type);
}

const char* PropertyValue::tag_name(Tag t) {
    switch (t) {
        case Tag::Int: return "int";
        case Tag::Float: return "float";
        case Tag::Str: return "str";
        case Tag::Bool: return "bool";
    }
    return "?";
}

}  // namespace treegraph
