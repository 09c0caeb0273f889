#pragma once

// Set file format: ASCII, one strictly increasing positive integer per line.
// Lines starting with '#' are comments, blank lines are ignored.

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "addcomp/errors.hpp"
#include "addcomp/natset.hpp"

namespace addcomp {

inline std::vector<nat> parse_set_values(std::istream& in, const std::string& source = "<stream>") {
    std::vector<nat> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r')) sv.remove_suffix(1);
        if (sv.empty() || sv.front() == '#') continue;
        nat v = 0;
        auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || ptr != sv.data() + sv.size() || v == 0)
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": not a positive integer: '" + std::string(sv) + "'");
        if (!values.empty() && v <= values.back())
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": values must be strictly increasing");
        values.push_back(v);
    }
    return values;
}

inline std::vector<nat> read_set_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open set file: " + path);
    return parse_set_values(in, path);
}

// Without an explicit horizon the largest value (or 1 for an empty file) is used.
inline NatSet read_set_file(const std::string& path, std::optional<nat> horizon = std::nullopt) {
    auto values = read_set_values(path);
    nat h = horizon.value_or(values.empty() ? 1 : values.back());
    return NatSet::from_sorted(values, h);
}

inline void write_set(std::ostream& out, const NatSet& s, std::string_view comment = {}) {
    if (!comment.empty()) out << "# " << comment << '\n';
    s.for_each([&](nat x) { out << x << '\n'; });
}

inline void write_set_file(const std::string& path, const NatSet& s, std::string_view comment = {}) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write set file: " + path);
    write_set(out, s, comment);
}

} // namespace addcomp
