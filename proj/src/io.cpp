#include "tps/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace tps {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream os;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << ',';
    os << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::invalid_argument("to_csv: row width mismatch");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (const double* d = std::get_if<double>(&row[c]))
        os << format_double(*d);
      else if (const long long* i = std::get_if<long long>(&row[c]))
        os << *i;
      else
        os << std::get<std::string>(row[c]);
    }
    os << '\n';
  }
  return os.str();
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open " + path);
  out << content;
  if (!out) throw std::runtime_error("emit: write failed for " + path);
}

}  // namespace tps
