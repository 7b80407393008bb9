#include "qlevy_cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace qlevy::cli {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << '\n';
}

namespace {

void emit(std::ostream& os, const nlohmann::json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
    case nlohmann::json::value_t::object: {
        if (v.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        // nlohmann::json objects are std::map-backed, so iteration is key-sorted
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << inner << nlohmann::json(it.key()).dump() << ": ";
            emit(os, it.value(), indent + 1);
        }
        os << '\n' << pad << '}';
        return;
    }
    case nlohmann::json::value_t::array: {
        if (v.empty()) {
            os << "[]";
            return;
        }
        const bool flat = std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_primitive(); });
        if (flat) {
            os << '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ", ";
                emit(os, v[i], indent + 1);
            }
            os << ']';
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ",\n";
            os << inner;
            emit(os, v[i], indent + 1);
        }
        os << '\n' << pad << ']';
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double x = v.get<double>();
        os << (std::isfinite(x) ? format_double(x) : "null");
        return;
    }
    default:
        os << v.dump();
    }
}

} // namespace

void write_json(std::ostream& os, const nlohmann::json& value) {
    emit(os, value, 0);
    os << '\n';
}

} // namespace qlevy::cli
