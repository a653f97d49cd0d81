#include "cnnperf/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "cnnperf/error.hpp"

namespace cnnperf {

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

Cell text_cell(std::string text) { return {std::move(text), std::nullopt}; }

Cell integer_cell(std::int64_t value) {
  return {std::to_string(value), static_cast<double>(value)};
}

Cell fixed_cell(double value, int decimals) {
  const double rounded = round_half_up(value, decimals);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  // Parse the text back so the JSON number matches the printed digits.
  return {buf, std::strtod(buf, nullptr)};
}

Cell scientific_cell(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", std::max(0, significant - 1), value);
  return {buf, std::strtod(buf, nullptr)};
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorKind::Validation, "table row has " + std::to_string(row.size()) +
                                           " cells for " + std::to_string(columns.size()) +
                                           " columns");
  }
  rows.push_back(std::move(row));
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "table" || text == "text") return Format::Text;
  throw validation_error("unknown format '" + std::string(text) + "' (expected csv, json or table)");
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    out << (c ? "," : "") << csv_escape(t.columns[c]);
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c].text);
    out << '\n';
  }
  for (const auto& [key, cell] : t.summary) out << "# " << key << '=' << cell.text << '\n';
  return out.str();
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (cell.number) return *cell.number;
  return cell.text;
}

std::string render_json(const Table& t) {
  nlohmann::ordered_json doc;
  doc["columns"] = t.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = cell_json(row[c]);
    doc["rows"].push_back(std::move(obj));
  }
  if (!t.summary.empty()) {
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [key, cell] : t.summary) summary[key] = cell_json(cell);
    doc["summary"] = std::move(summary);
  }
  return doc.dump(2) + "\n";
}

std::string render_text(const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].text.size());
  }
  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t w, bool right) {
    const std::string fill(w - s.size(), ' ');
    out << (right ? fill + s : s + fill);
  };
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out << "  ";
    const bool numeric = !t.rows.empty() && t.rows.front()[c].number.has_value();
    pad(t.columns[c], width[c], numeric);
  }
  out << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out << "  ";
    out << std::string(width[c], '-');
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      pad(row[c].text, width[c], row[c].number.has_value());
    }
    out << '\n';
  }
  if (!t.summary.empty()) {
    out << '\n';
    for (const auto& [key, cell] : t.summary) out << key << ": " << cell.text << '\n';
  }
  return out.str();
}

}  // namespace

std::string render(const Table& table, Format format) {
  switch (format) {
    case Format::Csv: return render_csv(table);
    case Format::Json: return render_json(table);
    case Format::Text: return render_text(table);
  }
  return {};
}

}  // namespace cnnperf
