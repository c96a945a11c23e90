#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fanocav {

using CsvRow = std::vector<std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

/// 17 significant digits (reads back bit-identical). NaN becomes an empty field.
std::string format_double(double v);

/// Parses a field written by format_double; empty fields read back as NaN.
double parse_double(std::string_view field);

/// RFC 4180 text with '\n' line endings. Fields containing ',', '"' or newlines are quoted.
std::string to_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

/// Atomic write (temporary file in the same directory, then rename). Throws IoError with the path.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Writes header + rows; every row must have header.size() fields.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows);

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace fanocav
