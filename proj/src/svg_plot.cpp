#include "asymdlms/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

namespace asymdlms {

namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1b6ca8", "#c8401f", "#2d8a4a", "#7b4fa6",
                          "#b8860b", "#3b7f8c", "#8b4513", "#555555"};

struct Point {
  long iteration;
  double msd_db;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

}  // namespace

std::string render_svg_from_csv(std::string_view csv_text) {
  std::map<std::string, std::vector<Point>> series;
  long max_iter = 0;
  long min_iter = 0;
  double min_db = 0.0;
  double max_db = 0.0;
  bool first_row = true;

  std::size_t pos = 0;
  int line_no = 0;
  while (pos < csv_text.size()) {
    const std::size_t eol = csv_text.find('\n', pos);
    std::string line{csv_text.substr(
        pos, eol == std::string_view::npos ? csv_text.size() - pos : eol - pos)};
    pos = eol == std::string_view::npos ? csv_text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    if (line_no == 1) {
      if (line != "iteration,algorithm,msd_db")
        throw std::runtime_error("malformed CSV: expected header iteration,algorithm,msd_db");
      continue;
    }
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw std::runtime_error("malformed CSV row at line " + std::to_string(line_no));
    char* end = nullptr;
    const std::string iter_text = line.substr(0, c1);
    const long iteration = std::strtol(iter_text.c_str(), &end, 10);
    if (end == iter_text.c_str() || *end != '\0')
      throw std::runtime_error("malformed iteration at line " + std::to_string(line_no));
    const std::string name = line.substr(c1 + 1, c2 - c1 - 1);
    if (name.empty())
      throw std::runtime_error("empty algorithm name at line " + std::to_string(line_no));
    const std::string value_text = line.substr(c2 + 1);
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0' || !std::isfinite(value))
      throw std::runtime_error("malformed msd_db at line " + std::to_string(line_no));

    if (first_row) {
      min_iter = max_iter = iteration;
      min_db = max_db = value;
      first_row = false;
    } else {
      min_iter = std::min(min_iter, iteration);
      max_iter = std::max(max_iter, iteration);
      min_db = std::min(min_db, value);
      max_db = std::max(max_db, value);
    }
    series[name].push_back({iteration, value});
  }
  if (line_no == 0) throw std::runtime_error("malformed CSV: empty file");
  if (first_row) throw std::runtime_error("no data rows");

  if (max_iter == min_iter) max_iter = min_iter + 1;
  double lo = min_db;
  double hi = max_db;
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto x_of = [&](double iteration) {
    return kMarginLeft + plot_w * (iteration - static_cast<double>(min_iter)) /
                             static_cast<double>(max_iter - min_iter);
  };
  auto y_of = [&](double db) {
    return kMarginTop + plot_h * (hi - db) / (hi - lo);
  };

  std::string svg;
  svg += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
             "viewBox=\"0 0 %.0f %.0f\">\n",
             kWidth, kHeight, kWidth, kHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
             "stroke=\"#222222\"/>\n",
             static_cast<double>(kMarginLeft), static_cast<double>(kMarginTop), plot_w,
             plot_h);

  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double frac = static_cast<double>(t) / ticks;
    const double iter_value = min_iter + frac * (max_iter - min_iter);
    const double x = x_of(iter_value);
    svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#222222\"/>\n",
               x, kMarginTop + plot_h, x, kMarginTop + plot_h + 6.0);
    char label[64];
    std::snprintf(label, sizeof(label), "%.6g", iter_value);
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"12\" "
               "text-anchor=\"middle\">",
               x, kMarginTop + plot_h + 20.0);
    svg += label;
    svg += "</text>\n";

    const double db_value = lo + frac * (hi - lo);
    const double y = y_of(db_value);
    svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#222222\"/>\n",
               kMarginLeft - 6.0, y, static_cast<double>(kMarginLeft), y);
    std::snprintf(label, sizeof(label), "%.6g", db_value);
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"12\" "
               "text-anchor=\"end\">",
               kMarginLeft - 10.0, y + 4.0);
    svg += label;
    svg += "</text>\n";
  }
  svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"13\" "
             "text-anchor=\"middle\">iteration</text>\n",
             kMarginLeft + plot_w / 2.0, static_cast<double>(kHeight - 10));
  svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"13\" "
             "text-anchor=\"middle\" transform=\"rotate(-90 %.1f %.1f)\">MSD (dB)</text>\n",
             16.0, kMarginTop + plot_h / 2.0, 16.0, kMarginTop + plot_h / 2.0);

  int index = 0;
  for (const auto& [name, points] : series) {
    const char* color = kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string poly = "<polyline fill=\"none\" stroke=\"";
    poly += color;
    poly += "\" stroke-width=\"1.5\" points=\"";
    for (const Point& p : points)
      poly += fmt("%.2f,%.2f ", x_of(static_cast<double>(p.iteration)), y_of(p.msd_db));
    if (!points.empty() && poly.back() == ' ') poly.pop_back();
    poly += "\"/>\n";
    svg += poly;

    const double ly = kMarginTop + 16.0 + 18.0 * index;
    const double lx = kMarginLeft + plot_w - 150.0;
    svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"", lx,
               ly - 4.0, lx + 24.0, ly - 4.0);
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"12\">",
               lx + 30.0, ly);
    svg += name;
    svg += "</text>\n";
    ++index;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace asymdlms
