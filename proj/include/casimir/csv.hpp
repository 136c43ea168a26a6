#pragma once

#include "casimir/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace casimir::csv {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Parse a full token as double; accepts "inf". Returns false on trailing garbage.
inline bool parse_double(std::string_view token, double& out) {
    token = trim(token);
    if (token.empty()) return false;
    if (token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

/// Shortest decimal text that parses back to the same double.
inline std::string exact(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

/// Fixed 12-significant-digit text used for all tool output.
inline std::string sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct TwoColumns {
    std::vector<double> first;
    std::vector<double> second;
};

/// Two-column numeric CSV. Blank lines and '#' comments are skipped; a single
/// non-numeric header line before the data is allowed.
inline TwoColumns read_two_columns(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open table file: " + path);
    TwoColumns cols;
    std::string line;
    int lineno = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto comma = t.find(',');
        if (comma == std::string_view::npos) throw ParseError(path, lineno, "expected two comma-separated columns");
        double a = 0.0;
        double b = 0.0;
        const bool ok = parse_double(t.substr(0, comma), a) && parse_double(t.substr(comma + 1), b);
        if (!ok) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw ParseError(path, lineno, "non-numeric value");
        }
        header_allowed = false;
        cols.first.push_back(a);
        cols.second.push_back(b);
    }
    return cols;
}

inline void write_two_columns(std::ostream& out, std::string_view header, const std::vector<double>& a,
                              const std::vector<double>& b) {
    out << header << '\n';
    for (std::size_t i = 0; i < a.size(); ++i) out << exact(a[i]) << ',' << exact(b[i]) << '\n';
}

} // namespace casimir::csv
