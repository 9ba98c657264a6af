#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "setsim/errors.hpp"

namespace setsim {

// Shortest decimal form with 9 significant digits.
std::string format_sig9(double v);

// RFC 4180 writer: UTF-8, LF line endings, quoting only where required.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace setsim
