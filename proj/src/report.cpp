#include "ccch/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ccch {

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : n_columns_(columns.size()) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) text_ += ',';
        text_ += columns[i];
    }
    text_ += '\n';
}

void CsvWriter::begin_row() {
    if (in_row_) throw std::logic_error("csv row already open");
    in_row_ = true;
    row_fill_ = 0;
}

void CsvWriter::push(double value) { push(format_g17(value)); }

void CsvWriter::push(const std::string& value) {
    if (!in_row_) throw std::logic_error("csv cell outside a row");
    if (row_fill_) text_ += ',';
    text_ += value;
    ++row_fill_;
}

void CsvWriter::end_row() {
    if (row_fill_ != n_columns_) throw std::logic_error("csv row has wrong arity");
    text_ += '\n';
    in_row_ = false;
}

void CsvWriter::write(const std::filesystem::path& path) const { write_text_file(path, text_); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace ccch
