#include "blockrip/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blockrip/types.hpp"

namespace blockrip {

namespace {

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out = join(header) + "\n";
    for (const auto& row : rows) out += join(row) + "\n";
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw Error("failed writing '" + path + "'");
}

void write_csv(const CsvTable& table, const std::string& path) { write_text(table.to_string(), path); }

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            table.header = split(line);
            first = false;
        } else {
            auto row = split(line);
            if (row.size() != table.header.size()) {
                throw Error("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                            std::to_string(table.header.size()));
            }
            table.rows.push_back(std::move(row));
        }
    }
    if (first) throw Error("CSV input is empty");
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str());
    } catch (const Error& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

}  // namespace blockrip
