#pragma once

#include "schurfit/numeric.hpp"
#include "schurfit/regress.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurfit::cli {

class MalformedInput : public std::runtime_error {
public:
    MalformedInput(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A parsed delimiter-separated file. The first non-blank, non-comment line
/// is the header; '#' starts a comment anywhere on a line. The delimiter is a
/// comma if the header has one, else a tab if it has one, else runs of spaces.
struct Table {
    std::vector<std::string> header;
    std::size_t header_line = 0;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  ///< 1-based source line of each row
};

Table read_table(std::istream& in);

/// Column index of `name` in the header (exact match after trimming).
std::optional<std::size_t> find_column(const Table& table, const std::string& name);

template <numeric::Field T>
struct Points {
    std::vector<T> x, y, w;
    bool weighted = false;
    std::size_t size() const { return x.size(); }
};

/// Converts the x, y (and w when `weighted`) columns. A bad row throws
/// MalformedInput, or with `skip_malformed` is dropped and reported through
/// `warnings` (one message per dropped row).
template <numeric::Field T>
Points<T> to_points(const Table& table, bool weighted, bool skip_malformed, std::vector<std::string>* warnings = nullptr) {
    const auto xc = find_column(table, "x");
    const auto yc = find_column(table, "y");
    if (!xc || !yc) throw MalformedInput(table.header_line, "header needs columns x and y");
    std::optional<std::size_t> wc;
    if (weighted) {
        wc = find_column(table, "w");
        if (!wc) throw MalformedInput(table.header_line, "--weights given but the header has no w column");
    }
    Points<T> out;
    out.weighted = weighted;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        try {
            if (row.size() != table.header.size())
                throw MalformedInput(table.lines[r], "expected " + std::to_string(table.header.size()) + " fields, got " +
                                                         std::to_string(row.size()));
            T x, y, w(1);
            try {
                x = numeric::parse_scalar<T>(row[*xc]);
                y = numeric::parse_scalar<T>(row[*yc]);
                if (wc) w = numeric::parse_scalar<T>(row[*wc]);
            } catch (const std::invalid_argument& e) {
                throw MalformedInput(table.lines[r], e.what());
            }
            if (wc && numeric::is_zero(w)) throw MalformedInput(table.lines[r], "weight is zero");
            out.x.push_back(std::move(x));
            out.y.push_back(std::move(y));
            if (wc) out.w.push_back(std::move(w));
        } catch (const MalformedInput& e) {
            if (!skip_malformed) throw;
            if (warnings) warnings->push_back(std::string("skipped ") + e.what());
        }
    }
    return out;
}

template <numeric::Field T>
regress::DataSet<T> to_dataset(const Points<T>& p) {
    return p.weighted ? regress::DataSet<T>(p.x, p.y, p.w) : regress::DataSet<T>(p.x, p.y);
}

/// Writes a header and one comma-separated row per point; read_table followed
/// by to_points restores exact values unchanged.
template <numeric::Field T>
void write_dataset(std::ostream& out, const regress::DataSet<T>& data) {
    out << (data.weighted() ? "x,y,w\n" : "x,y\n");
    for (std::size_t k = 0; k < data.size(); ++k) {
        out << numeric::format_scalar(data.x()[k]) << ',' << numeric::format_scalar(data.y()[k]);
        if (data.weighted()) out << ',' << numeric::format_scalar(data.weights()[k]);
        out << '\n';
    }
}

} // namespace schurfit::cli
