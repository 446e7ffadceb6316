#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ccch {

/// Full round-trip decimal formatting (17 significant digits) so regression
/// diffs of CSV output are meaningful.
std::string format_g17(double value);

/// Minimal CSV assembler; every numeric cell goes through format_g17.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);

    void begin_row();
    void push(double value);
    void push(const std::string& value);
    void end_row();

    const std::string& text() const { return text_; }
    void write(const std::filesystem::path& path) const;

  private:
    size_t n_columns_;
    size_t row_fill_ = 0;
    bool in_row_ = false;
    std::string text_;
};

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ccch
