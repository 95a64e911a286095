// csv.hpp
// Atomic CSV output: rows accumulate in memory and land on disk via a
// temp-file rename. Every file carries a header row and a comment line with
// the fully resolved configuration so runs can be reproduced byte-for-byte.
#pragma once

#include <string>
#include <vector>

namespace gibbslab {

std::string format_double(double v);  // shortest round-trippable decimal

class CsvWriter {
public:
    CsvWriter(std::string path, std::string configStamp, std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    void close();  // writes temp file and renames; throws on I/O failure

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::string stamp_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    bool closed_ = false;
};

}  // namespace gibbslab
