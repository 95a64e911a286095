#include "gibbslab/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace gibbslab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::string path, std::string configStamp, std::vector<std::string> header)
    : path_(std::move(path)), stamp_(std::move(configStamp)), header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvWriter: row width does not match header");
    rows_.push_back(cells);
}

void CsvWriter::close() {
    if (closed_) return;
    const std::string tmp = path_ + ".tmp";
    std::FILE* fp = std::fopen(tmp.c_str(), "wb");
    if (!fp) throw std::runtime_error("CsvWriter: cannot open " + tmp + " for writing");
    auto put = [&](const std::string& s) {
        if (std::fwrite(s.data(), 1, s.size(), fp) != s.size()) {
            std::fclose(fp);
            throw std::runtime_error("CsvWriter: short write to " + tmp);
        }
    };
    put("# " + stamp_ + "\n");
    for (std::size_t i = 0; i < header_.size(); ++i)
        put(header_[i] + (i + 1 < header_.size() ? "," : "\n"));
    for (const auto& row : rows_)
        for (std::size_t i = 0; i < row.size(); ++i)
            put(row[i] + (i + 1 < row.size() ? "," : "\n"));
    if (std::fclose(fp) != 0) throw std::runtime_error("CsvWriter: close failed for " + tmp);
    if (std::rename(tmp.c_str(), path_.c_str()) != 0)
        throw std::runtime_error("CsvWriter: rename to " + path_ + " failed");
    closed_ = true;
}

}  // namespace gibbslab
