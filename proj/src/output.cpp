#include "conflab/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "conflab/error.hpp"

namespace conflab::output {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stage_seed(std::uint64_t seed, std::uint64_t stage) {
  std::uint64_t state = seed;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= stage; ++i) out = splitmix64(state);
  return out;
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw ValidationError("write failed for '" + path.string() + "'");
}

void emit_plot_data(const Series& series, const std::filesystem::path& path, const std::string& comment) {
  if (series.x.empty()) throw ValidationError("emit_plot_data: empty series");
  if (series.x.size() != series.y.size()) throw ValidationError("emit_plot_data: x and y differ in length");
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "x,y\n";
  for (std::size_t i = 0; i < series.x.size(); ++i) os << number(series.x[i]) << ',' << number(series.y[i]) << '\n';
  write_text(path, os.str());
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw ValidationError("csv: row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str(const std::string& comment) const {
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << '\n';
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

void CsvTable::write(const std::filesystem::path& path, const std::string& comment) const {
  write_text(path, str(comment));
}

}  // namespace conflab::output
