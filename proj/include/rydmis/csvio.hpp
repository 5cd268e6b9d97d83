#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rydmis {

inline constexpr const char* kCsvFormatVersion = "rydmis-csv-1";

inline std::string csv_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// CSV table with two leading comment lines: a format-version string and
// the fully resolved run configuration (one-line JSON), so every output
// file records its provenance. Floats are written with 17 significant
// digits; wall-time columns are the only nondeterministic ones and are
// named so checks can strip them.
class CsvWriter {
public:
    CsvWriter(std::string path, const std::vector<std::string>& columns,
              const std::string& config_json)
        : path_(std::move(path)), n_cols_(columns.size()) {
        out_.open(path_, std::ios::binary);
        if (!out_) throw std::runtime_error("cannot open for writing: " + path_);
        out_ << "# format_version=" << kCsvFormatVersion << "\n";
        out_ << "# config=" << config_json << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != n_cols_) throw std::runtime_error("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    }

    void close() { out_.close(); }

private:
    std::string path_;
    std::size_t n_cols_;
    std::ofstream out_;
};

}  // namespace rydmis
