#include "dickeforce/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dickeforce {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

void Table::add_row(std::vector<double> values, std::string tag) {
  rows.push_back(std::move(values));
  if (!tag_column.empty()) {
    tags.push_back(std::move(tag));
  }
}

std::string format_number(double value) {
  if (value == 0.0) {
    return "0";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table) {
  bool first = true;
  for (const auto& c : table.columns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  if (!table.tag_column.empty()) {
    os << (first ? "" : ",") << table.tag_column;
  }
  os << '\n';
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    first = true;
    for (const double v : table.rows[i]) {
      os << (first ? "" : ",") << format_number(v);
      first = false;
    }
    if (!table.tag_column.empty()) {
      os << (first ? "" : ",") << table.tags.at(i);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    nlohmann::ordered_json row;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      row[table.columns[c]] = table.rows[i].at(c);
    }
    if (!table.tag_column.empty()) {
      row[table.tag_column] = table.tags.at(i);
    }
    rows.push_back(std::move(row));
  }
  os << rows.dump(2) << '\n';
}

std::string render_svg(const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 400.0;
  constexpr double kLeft = 60.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 50.0;

  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (const double v : s.x) xr.include(v);
    for (const double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();
  const auto px = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight);
  };
  const auto py = [&](double v) {
    return kHeight - kBottom -
           (v - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth
      << R"(" height=")" << kHeight << R"(" font-family="sans-serif" font-size="12">)"
      << '\n';
  svg << R"(<rect x=")" << kLeft << R"(" y=")" << kTop << R"(" width=")"
      << kWidth - kLeft - kRight << R"(" height=")" << kHeight - kTop - kBottom
      << R"(" fill="none" stroke="black"/>)" << '\n';
  svg << R"(<text x=")" << kWidth / 2 << R"(" y="24" text-anchor="middle">)"
      << escape_xml(title) << "</text>\n";
  svg << R"(<text x=")" << kWidth / 2 << R"(" y=")" << kHeight - 12
      << R"(" text-anchor="middle">)" << escape_xml(x_label) << "</text>\n";
  svg << R"(<text x=")" << kLeft << R"(" y=")" << kHeight - kBottom + 16
      << R"(" text-anchor="middle">)" << format_number(xr.lo) << "</text>\n";
  svg << R"(<text x=")" << kWidth - kRight << R"(" y=")" << kHeight - kBottom + 16
      << R"(" text-anchor="middle">)" << format_number(xr.hi) << "</text>\n";
  svg << R"(<text x=")" << kLeft - 6 << R"(" y=")" << kHeight - kBottom
      << R"(" text-anchor="end">)" << format_number(yr.lo) << "</text>\n";
  svg << R"(<text x=")" << kLeft - 6 << R"(" y=")" << kTop + 10
      << R"(" text-anchor="end">)" << format_number(yr.hi) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    svg << R"(<polyline fill="none" stroke=")" << colour
        << R"(" stroke-width="1.5" points=")";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isfinite(s.x[j]) && std::isfinite(s.y[j])) {
        svg << format_number(px(s.x[j])) << ',' << format_number(py(s.y[j]))
            << (j + 1 < n ? " " : "");
      }
    }
    svg << "\"/>\n";
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(i);
    svg << R"(<text x=")" << kWidth - kRight - 8 << R"(" y=")" << ly
        << R"(" text-anchor="end" fill=")" << colour << R"(">)"
        << escape_xml(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw OutputError("cannot open '" + path + "' for writing");
  }
  out << contents;
  out.flush();
  if (!out) {
    throw OutputError("failed writing '" + path + "'");
  }
}

}  // namespace dickeforce
