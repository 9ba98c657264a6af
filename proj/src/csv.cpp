#include "setsim/csv.hpp"

#include <cstdio>

namespace setsim {

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw IoError("cannot open for writing: " + path);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  std::string line;
  for (size_t i = 0; i < fields.size(); ++i) {
    const std::string& f = fields[i];
    const bool quote = f.find_first_of(",\"\n\r") != std::string::npos;
    if (i) line += ',';
    if (quote) {
      line += '"';
      for (char c : f) {
        if (c == '"') line += '"';
        line += c;
      }
      line += '"';
    } else {
      line += f;
    }
  }
  line += '\n';
  out_ << line;
  if (!out_) throw IoError("write failed: " + path_);
}

}  // namespace setsim
