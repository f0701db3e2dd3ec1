#include "cavicool/csv.hpp"

#include <cstdio>

namespace cavicool {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvWriter::comment(const std::string& text) { os_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& names) { cells(names); }

void CsvWriter::cells(const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os_ << ",";
    os_ << values[i];
  }
  os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells_out;
  cells_out.reserve(values.size());
  for (double v : values) cells_out.push_back(format_double(v));
  cells(cells_out);
}

}  // namespace cavicool
