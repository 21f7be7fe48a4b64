#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bosemi/errors.hpp"

namespace bosemi::tab {

/// %.12e with the C locale; the one float format every emitted table uses,
/// so plot scripts and regression tests share a parser.
inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

/// One table cell: a real (formatted %.12e), an integer, text, or null
/// (missing value; "nan" in CSV, null in JSON).
struct Cell {
    enum class Kind { Real, Int, Text, Null } kind = Kind::Null;
    double real = 0.0;
    long long integer = 0;
    std::string text;

    static Cell of(double v) {
        if (std::isnan(v)) return null();
        Cell c;
        c.kind = Kind::Real;
        c.real = v;
        return c;
    }
    static Cell of_int(long long v) {
        Cell c;
        c.kind = Kind::Int;
        c.integer = v;
        return c;
    }
    static Cell of_text(std::string s) {
        Cell c;
        c.kind = Kind::Text;
        c.text = std::move(s);
        return c;
    }
    static Cell null() { return Cell{}; }

    std::string csv() const {
        switch (kind) {
            case Kind::Real: return fmt_real(real);
            case Kind::Int: return std::to_string(integer);
            case Kind::Text: return text;
            case Kind::Null: return "nan";
        }
        return "";
    }
};

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
};

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.headers.size(); ++i)
        os << (i ? "," : "") << t.headers[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i].csv();
        os << '\n';
    }
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// JSON lines: one object per row, keys in CSV header order, reals kept in
/// the same %.12e spelling as the CSV.
inline void write_jsonl(std::ostream& os, const Table& t) {
    for (const auto& row : t.rows) {
        os << '{';
        for (std::size_t i = 0; i < row.size() && i < t.headers.size(); ++i) {
            if (i) os << ',';
            os << '"' << detail::json_escape(t.headers[i]) << "\":";
            switch (row[i].kind) {
                case Cell::Kind::Real: os << fmt_real(row[i].real); break;
                case Cell::Kind::Int: os << row[i].integer; break;
                case Cell::Kind::Text:
                    os << '"' << detail::json_escape(row[i].text) << '"';
                    break;
                case Cell::Kind::Null: os << "null"; break;
            }
        }
        os << "}\n";
    }
}

/// Parsed text table (strings only); CSV counterpart of the writers above.
struct ParsedTable {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < headers.size(); ++i)
            if (headers[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline ParsedTable parse_csv(std::istream& is) {
    ParsedTable t;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (const char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (first) {
            t.headers = std::move(fields);
            first = false;
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    return t;
}

}  // namespace bosemi::tab
