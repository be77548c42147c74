#include "schurfit/cli/dataset_io.hpp"

#include <istream>
#include <string_view>

namespace schurfit::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line, char delimiter) {
    std::vector<std::string> cells;
    if (delimiter == ' ') {
        std::size_t pos = 0;
        while (pos < line.size()) {
            const auto start = line.find_first_not_of(" \t", pos);
            if (start == std::string_view::npos) break;
            auto end = line.find_first_of(" \t", start);
            if (end == std::string_view::npos) end = line.size();
            cells.emplace_back(line.substr(start, end - start));
            pos = end;
        }
        return cells;
    }
    std::size_t start = 0;
    for (;;) {
        const auto end = line.find(delimiter, start);
        cells.emplace_back(trim(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return cells;
}

} // namespace

Table read_table(std::istream& in) {
    Table table;
    char delimiter = 0;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (delimiter == 0) {
            delimiter = line.find(',') != std::string_view::npos ? ',' : line.find('\t') != std::string_view::npos ? '\t' : ' ';
            table.header = split(line, delimiter);
            table.header_line = line_no;
            continue;
        }
        table.rows.push_back(split(line, delimiter));
        table.lines.push_back(line_no);
    }
    if (delimiter == 0) throw MalformedInput(line_no == 0 ? 1 : line_no, "no header line");
    return table;
}

std::optional<std::size_t> find_column(const Table& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name) return i;
    return std::nullopt;
}

} // namespace schurfit::cli
