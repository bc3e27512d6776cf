#ifndef BNKIT_IO_HPP
#define BNKIT_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bnkit {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form (17 significant digits).
std::string format_g17(double v);

std::string fnv1a_hex(const std::string& data);

/// CSV with comma separator, '.' decimal point, header row, LF endings.
/// Numeric cells are written with 17 significant digits so a fixed config
/// reproduces files byte for byte.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& columns);

    CsvWriter& cell(double v);
    CsvWriter& cell(int v);
    CsvWriter& cell(std::size_t v);
    CsvWriter& cell(const std::string& v);
    void end_row();

    const std::string& str() const { return data_; }

private:
    std::string data_;
    std::size_t n_columns_;
    std::size_t row_cells_ = 0;
};

/// Write via a temp file in the same directory, then rename into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace bnkit

#endif
