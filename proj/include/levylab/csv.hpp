#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace levylab {

// Shortest round-trip decimal representation.
std::string format_double(double v);

// RFC-4180 writer for purely numeric/simple-token tables: header row
// mandatory, CRLF record separators, no quoting needed.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);

private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace levylab
