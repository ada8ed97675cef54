#pragma once

#include <string>
#include <variant>
#include <vector>

namespace tps {

// Deterministic report emission: CSV with a stable column order and floats
// printed to 17 significant digits, or canonical JSON (sorted keys, shortest
// round-trip floats). Same config and seed gives byte-identical files.

using Cell = std::variant<double, long long, std::string>;

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v);  // %.17g
std::string to_csv(const CsvTable& table);

// Writes content to path, or to stdout when path is empty. Throws on I/O
// failure.
void emit(const std::string& content, const std::string& path);

}  // namespace tps
