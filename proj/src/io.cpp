#include "bnkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bnkit {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CsvWriter::CsvWriter(const std::vector<std::string>& columns) : n_columns_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) data_ += ',';
        data_ += columns[i];
    }
    data_ += '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_g17(v)); }
CsvWriter& CsvWriter::cell(int v) { return cell(std::to_string(v)); }
CsvWriter& CsvWriter::cell(std::size_t v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
    if (row_cells_ >= n_columns_) throw std::logic_error("CsvWriter: too many cells in row");
    if (row_cells_) data_ += ',';
    data_ += v;
    ++row_cells_;
    return *this;
}

void CsvWriter::end_row() {
    if (row_cells_ != n_columns_) throw std::logic_error("CsvWriter: row is incomplete");
    data_ += '\n';
    row_cells_ = 0;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_file: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace bnkit
