#pragma once

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace ldabcd {

struct LabeledDataset {
    std::string name;
    DenseMatrix patterns;  // one pattern per row
    std::optional<std::vector<std::string>> labels;

    std::size_t size() const noexcept { return patterns.rows(); }
    std::size_t dims() const noexcept { return patterns.cols(); }

    std::vector<std::string> distinct_labels() const {
        if (!labels) return {};
        std::set<std::string> s(labels->begin(), labels->end());
        return {s.begin(), s.end()};
    }

    // Indices of the patterns carrying `label`.
    std::vector<std::size_t> members_of(const std::string& label) const {
        std::vector<std::size_t> out;
        if (!labels) return out;
        for (std::size_t i = 0; i < labels->size(); ++i)
            if ((*labels)[i] == label) out.push_back(i);
        return out;
    }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    for (auto& c : cells) {
        const auto b = c.find_first_not_of(" \t");
        const auto e = c.find_last_not_of(" \t");
        c = b == std::string::npos ? std::string{} : c.substr(b, e - b + 1);
    }
    return cells;
}

inline std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) return std::nullopt;
    return v;
}

inline bool is_integer(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

// Reads a comma-separated file with one pattern per line. A first line with
// any non-numeric cell is treated as a header. `label_column` is a header
// name or a zero-based column index; that column is kept verbatim as the
// label and excluded from the features.
inline LabeledDataset load_csv(const std::string& path, const std::optional<std::string>& label_column = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    LabeledDataset ds;
    ds.name = path;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(detail::split_csv_line(line));
        line_numbers.push_back(line_no);
    }
    if (rows.empty()) throw DataError("'" + path + "' contains no rows");

    std::vector<std::string> header;
    const bool has_header = std::any_of(rows.front().begin(), rows.front().end(),
                                        [](const std::string& c) { return !detail::parse_double(c); });
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
        line_numbers.erase(line_numbers.begin());
    }
    if (rows.empty()) throw DataError("'" + path + "' has a header but no data rows");

    const std::size_t width = has_header ? header.size() : rows.front().size();
    std::optional<std::size_t> label_idx;
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        } else if (detail::is_integer(*label_column)) {
            label_idx = std::stoul(*label_column);
        } else {
            throw DataError("label column '" + *label_column + "' not found in '" + path + "'");
        }
        if (*label_idx >= width) throw DataError("label column index " + *label_column + " out of range");
    }

    const std::size_t dims = width - (label_idx ? 1 : 0);
    if (dims == 0) throw DataError("'" + path + "' has no feature columns");
    ds.patterns = DenseMatrix(rows.size(), dims);
    if (label_idx) ds.labels.emplace();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != width)
            throw DataError(path + ":" + std::to_string(line_numbers[r]) + ": expected " + std::to_string(width) +
                            " columns, found " + std::to_string(cells.size()));
        std::size_t f = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (label_idx && c == *label_idx) {
                ds.labels->push_back(cells[c]);
                continue;
            }
            auto v = detail::parse_double(cells[c]);
            if (!v) {
                const std::string col = has_header ? "'" + header[c] + "'" : std::to_string(c + 1);
                throw DataError(path + ":" + std::to_string(line_numbers[r]) + ": column " + col +
                                ": non-numeric value '" + cells[c] + "'");
            }
            ds.patterns(r, f++) = *v;
        }
    }
    return ds;
}

// Features first, then a trailing "label" column when labels are present.
inline void save_csv(const LabeledDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out.precision(17);
    for (std::size_t c = 0; c < ds.dims(); ++c) out << (c ? "," : "") << "x" << (c + 1);
    if (ds.labels) out << ",label";
    out << '\n';
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t c = 0; c < ds.dims(); ++c) out << (c ? "," : "") << ds.patterns(r, c);
        if (ds.labels) out << ',' << (*ds.labels)[r];
        out << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

// Rescales every feature to [0,1]; constant features become 0.
inline void minmax_normalize(LabeledDataset& ds) {
    for (std::size_t c = 0; c < ds.dims(); ++c) {
        double lo = ds.patterns(0, c), hi = lo;
        for (std::size_t r = 1; r < ds.size(); ++r) {
            lo = std::min(lo, ds.patterns(r, c));
            hi = std::max(hi, ds.patterns(r, c));
        }
        const double span = hi - lo;
        for (std::size_t r = 0; r < ds.size(); ++r)
            ds.patterns(r, c) = span > 0.0 ? (ds.patterns(r, c) - lo) / span : 0.0;
    }
}

}  // namespace ldabcd
