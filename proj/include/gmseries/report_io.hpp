#pragma once

#include <string>
#include <vector>

#include "gmseries/sequences.hpp"

namespace gmseries {

/// Canonical dump: 2-space indent, keys in insertion order, trailing
/// newline.  Same document => byte-identical file.
std::string dump_json(const json& doc);
void write_json_file(const std::string& path, const json& doc);
json read_json_file(const std::string& path);

/// One row per grid point; numbers at full round-trip precision.
void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);
std::string csv_string(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

/// UTC timestamp for report file names (never report bodies).
std::string timestamp_utc();

/// Extracts plot-ready (x, y) columns from a report document: grid vs
/// ratios/values for scan reports, or any two named numeric arrays.
std::string plot_columns_csv(const json& report);

}  // namespace gmseries
