// io.hpp — deterministic CSV/JSON emission: fixed 12-significant-digit
// scientific formatting, no locale or wall-clock dependence.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "qdeco/version.hpp"

namespace qdeco::io {

inline std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }

// A flat record: ordered (name, preformatted value) pairs.
using Record = std::vector<std::pair<std::string, std::string>>;

inline std::string csv_table(const std::string& provenance, const std::vector<std::string>& columns,
                             const std::vector<std::vector<std::string>>& rows,
                             const std::vector<std::string>& extra_header = {}) {
    std::string out;
    out += "# qdeco ";
    out += kVersion;
    out += "\n# provenance: " + provenance + "\n";
    for (const auto& line : extra_header) out += "# " + line + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ",";
        out += columns[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

// "inf"/"nan" are not JSON numbers; quote them.
inline std::string json_value(const std::string& formatted) {
    if (formatted == "inf" || formatted == "-inf" || formatted == "nan") {
        return "\"" + formatted + "\"";
    }
    if (formatted == "true" || formatted == "false") return formatted;
    return formatted;
}

inline std::string json_table(const std::string& provenance, const std::vector<std::string>& columns,
                              const std::vector<std::vector<std::string>>& rows,
                              const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::string out = "{\n";
    out += "  \"artifact\": \"qdeco " + std::string(kVersion) + "\",\n";
    out += "  \"provenance\": \"" + provenance + "\",\n";
    for (const auto& [k, v] : extra) {
        out += "  \"" + json_escape(k) + "\": " + json_value(v) + ",\n";
    }
    out += "  \"records\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += r ? ",\n    {" : "\n    {";
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            if (i) out += ", ";
            out += "\"" + json_escape(columns[i]) + "\": " + json_value(rows[r][i]);
        }
        out += "}";
    }
    out += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace qdeco::io
