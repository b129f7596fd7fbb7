#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace harmext {

// Rows of doubles with a header line; numbers are written with 17 significant
// digits so that every double round-trips exactly.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v);

void write_csv(const std::filesystem::path& path, const CsvTable& table);

CsvTable read_csv(const std::filesystem::path& path);

// Atomic text write: temp file in the same directory, then rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace harmext
