#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cavicool {

// 17 significant digits: enough to round-trip any double exactly.
std::string format_double(double v);

// Minimal CSV emission: comma-separated cells, '#'-prefixed comment lines,
// '\n' line ends. Output depends only on the values passed in, so identical
// runs produce byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& text);
  void header(const std::vector<std::string>& names);
  void cells(const std::vector<std::string>& values);
  void row(const std::vector<double>& values);

 private:
  std::ostream& os_;
};

}  // namespace cavicool
