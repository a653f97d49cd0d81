#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cnnperf {

/// A rendered value: the display text plus its numeric value when it has one.
/// The number is the rounded value, so every output format agrees.
struct Cell {
  std::string text;
  std::optional<double> number;
};

Cell text_cell(std::string text);
Cell integer_cell(std::int64_t value);
/// Round half up to `decimals` places.
Cell fixed_cell(double value, int decimals);
/// Scientific notation with `significant` digits, e.g. 1.40e-02.
Cell scientific_cell(double value, int significant = 3);

inline Cell seconds_cell(double s) { return fixed_cell(s, 3); }
inline Cell minutes_cell(double s) { return fixed_cell(s / 60.0, 1); }
inline Cell percent_cell(double pct) { return fixed_cell(pct, 2); }

double round_half_up(double value, int decimals);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json, Text };

Format parse_format(std::string_view text);

std::string render(const Table& table, Format format);

}  // namespace cnnperf
