#pragma once

#include <string>
#include <vector>

namespace fujita {

/// Shortest decimal string that round-trips the double (used in file names).
std::string format_compact(double v);

/// Fixed 17-significant-digit representation with '.' as decimal separator,
/// independent of the process locale.
std::string format_full(double v);

/// Minimal CSV writer: one header, rows of doubles, '\n' line endings.
class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> header);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

private:
    struct Impl;
    Impl* impl_;
};

/// Flat key = value text file (diagnostics).
void write_key_values(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& items);

}  // namespace fujita
