#pragma once

#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace lgx {

/// One inequality (or identity) instance: flat so every check is a
/// grep-able row with its own verdict.
struct ReportRow {
    std::string table;  // which check family the row belongs to
    std::string probe;  // probe label (index or coordinates)
    std::string scale;  // n, t, or delta as text
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

struct Report {
    std::string id;
    std::map<std::string, std::string> scalars; // named summary values
    std::vector<ReportRow> rows;
    bool pass = true;

    void add(ReportRow row) {
        if (!row.pass) pass = false;
        rows.push_back(std::move(row));
    }

    void set(const std::string& key, const std::string& value) { scalars[key] = value; }
    void set(const std::string& key, double value) {
        std::ostringstream os;
        os << std::setprecision(17) << value;
        scalars[key] = os.str();
    }
};

/// Deterministic JSON serialization: fixed key order, fixed precision,
/// no timestamps. Identical inputs give byte-identical output.
inline std::string report_json(const Report& rep) {
    std::ostringstream os;
    os << std::setprecision(17);
    const auto esc = [](const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r;
    };
    os << "{\n  \"id\": \"" << esc(rep.id) << "\",\n  \"pass\": " << (rep.pass ? "true" : "false")
       << ",\n  \"scalars\": {";
    bool first = true;
    for (const auto& [k, v] : rep.scalars) { // std::map: already sorted
        os << (first ? "\n" : ",\n") << "    \"" << esc(k) << "\": \"" << esc(v) << "\"";
        first = false;
    }
    os << (first ? "" : "\n  ") << "},\n  \"rows\": [";
    first = true;
    for (const auto& r : rep.rows) {
        os << (first ? "\n" : ",\n") << "    {\"table\": \"" << esc(r.table) << "\", \"probe\": \""
           << esc(r.probe) << "\", \"scale\": \"" << esc(r.scale) << "\", \"lhs\": " << r.lhs
           << ", \"rhs\": " << r.rhs << ", \"pass\": " << (r.pass ? "true" : "false") << "}";
        first = false;
    }
    os << (first ? "" : "\n  ") << "]\n}\n";
    return os.str();
}

inline std::string report_csv(const Report& rep) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "table,probe,scale,lhs,rhs,pass\n";
    for (const auto& r : rep.rows)
        os << r.table << ',' << r.probe << ',' << r.scale << ',' << r.lhs << ',' << r.rhs << ','
           << (r.pass ? 1 : 0) << '\n';
    return os.str();
}

} // namespace lgx
