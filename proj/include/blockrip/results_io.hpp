#pragma once

#include <string>
#include <vector>

namespace blockrip {

/// Minimal CSV table: a header plus rows of already-formatted fields.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

/// Lossless text form of a double (17 significant digits).
std::string format_double(double v);

/// Writes `table` to `path`; "-" writes to stdout. Throws with the path on failure.
void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

void write_text(const std::string& text, const std::string& path);

}  // namespace blockrip
