#include "gmseries/report_io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace gmseries {

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << dump_json(doc);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return doc;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_string(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_number(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << csv_string(header, rows);
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm_utc);
  return buf;
}

std::string plot_columns_csv(const json& report) {
  // Preference order for the x column, then the y column.
  static const char* kXKeys[] = {"grid", "n"};
  static const char* kYKeys[] = {"ratios", "values", "norm_values"};
  const json* x = nullptr;
  const json* y = nullptr;
  for (const char* k : kXKeys)
    if (report.contains(k) && report[k].is_array()) {
      x = &report[k];
      break;
    }
  for (const char* k : kYKeys)
    if (report.contains(k) && report[k].is_array()) {
      y = &report[k];
      break;
    }
  if (!x || !y || x->size() != y->size())
    throw ConfigError("report has no matching grid/value columns to plot");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < x->size(); ++i)
    rows.push_back({(*x)[i].get<double>(), (*y)[i].get<double>()});
  return csv_string({"x", "y"}, rows);
}

}  // namespace gmseries
