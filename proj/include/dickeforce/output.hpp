#pragma once

// Flat-file datasets: locale-independent CSV, JSON, and minimal SVG plots.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dickeforce {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-oriented numeric table with an optional string tag per row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Name of the tag column; empty when rows carry no tag.
  std::string tag_column;
  std::vector<std::string> tags;

  void add_row(std::vector<double> values, std::string tag = {});
};

/// 15 significant digits, '.' decimal point, "-0" folded to "0".
std::string format_number(double value);

void write_csv(std::ostream& os, const Table& table);
/// Array of objects, one per row, keyed by column name.
void write_json(std::ostream& os, const Table& table);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot with a frame, axis extents, and a legend.
std::string render_svg(const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label);

/// Throws OutputError when the file cannot be written.
void write_file(const std::string& path, const std::string& contents);

}  // namespace dickeforce
