#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ulpt/instance.hpp"

namespace ulpt {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits round-trips any binary64 value through text.
inline std::string format_number(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot serialize a non-finite number");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Instance file format: a JSON object with "speeds" and "tasks" arrays
/// (both non-increasing; m and n are implied by the lengths) and an
/// optional "name" string.
inline Instance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed instance file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance file must be a JSON object");
    if (!doc.contains("speeds")) throw ParseError("missing field \"speeds\"");
    if (!doc.contains("tasks")) throw ParseError("missing field \"tasks\"");

    Instance inst;
    auto read_array = [](const nlohmann::json& arr, const char* field, std::vector<double>& out) {
        if (!arr.is_array()) throw ParseError(std::string("field \"") + field + "\" must be an array");
        for (const auto& v : arr) {
            if (!v.is_number())
                throw ParseError(std::string("field \"") + field + "\" must contain only numbers");
            out.push_back(v.get<double>());
        }
    };
    read_array(doc["speeds"], "speeds", inst.speeds);
    read_array(doc["tasks"], "tasks", inst.sizes);
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("field \"name\" must be a string");
        inst.name = doc["name"].get<std::string>();
    }
    // Optional explicit counts must agree with the array lengths.
    if (doc.contains("m") && doc["m"] != inst.m())
        throw ParseError("declared m does not match the length of \"speeds\"");
    if (doc.contains("n") && doc["n"] != inst.n())
        throw ParseError("declared n does not match the length of \"tasks\"");

    auto errors = validate(inst);
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid instance:";
        for (const auto& e : errors) msg << " " << e << ";";
        throw ParseError(msg.str());
    }
    return inst;
}

inline std::string serialize_instance(const Instance& inst) {
    require_valid(inst);
    std::ostringstream out;
    out << "{\n";
    if (!inst.name.empty()) out << "  \"name\": " << nlohmann::json(inst.name).dump() << ",\n";
    out << "  \"speeds\": [";
    for (int p = 0; p < inst.m(); ++p) {
        if (p) out << ", ";
        out << format_number(inst.speeds[static_cast<std::size_t>(p)]);
    }
    out << "],\n  \"tasks\": [";
    for (int i = 0; i < inst.n(); ++i) {
        if (i) out << ", ";
        out << format_number(inst.sizes[static_cast<std::size_t>(i)]);
    }
    out << "]\n}\n";
    return out.str();
}

inline Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

inline void save_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << serialize_instance(inst);
}

}  // namespace ulpt
