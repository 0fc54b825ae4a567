#pragma once

// Seeds, CSV tables and plot data.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace conflab::output {

/// One splitmix64 step: advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);
/// Seed for stage `stage` derived from a single experiment seed.
std::uint64_t stage_seed(std::uint64_t seed, std::uint64_t stage);

/// "%.17g", so equal doubles always print identically.
std::string number(double x);

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

/// Writes "x,y" plus one row per point. `comment`, when nonempty, is written
/// first as a "# ..." line.
void emit_plot_data(const Series& series, const std::filesystem::path& path, const std::string& comment = {});

/// Column-oriented CSV with an optional leading "# ..." comment line.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_row(std::vector<std::string> cells);
  std::string str(const std::string& comment = {}) const;
  void write(const std::filesystem::path& path, const std::string& comment = {}) const;
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `text` to `path`, creating parent directories; throws
/// ValidationError when the path is unwritable.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace conflab::output
