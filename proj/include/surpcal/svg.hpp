#pragma once

// Minimal hand-emitted SVG line charts: axes, legend, one polyline per
// series. Accuracy curves only need eyeballing; the CSV is the source of
// truth.

#include <sstream>
#include <string>
#include <vector>

namespace surpcal {

struct ChartSeries {
  std::string name;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

inline std::string render_line_chart(const std::string& title,
                                     const std::vector<ChartSeries>& series,
                                     double xMin, double xMax, double yMin, double yMax) {
  const double width = 640, height = 440;
  const double left = 70, right = 600, top = 50, bottom = 390;
  auto sx = [&](double x) { return left + (x - xMin) / (xMax - xMin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - yMin) / (yMax - yMin) * (bottom - top); };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
     << bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xMin + (xMax - xMin) * i / 5.0;
    const double fy = yMin + (yMax - yMin) * i / 5.0;
    os << "<text x=\"" << sx(fx) << "\" y=\"" << bottom + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fx << "</text>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << sy(fy) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << fy << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << sy(fy) << "\" x2=\"" << right << "\" y2=\""
       << sy(fy) << "\" stroke=\"#dddddd\"/>\n";
  }
  double legendY = top + 6;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << sx(s.x[i]) << ',' << sy(s.y[i]) << (i + 1 < s.x.size() ? " " : "");
    os << "\"/>\n";
    os << "<line x1=\"" << right - 140 << "\" y1=\"" << legendY << "\" x2=\"" << right - 120
       << "\" y2=\"" << legendY << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << right - 114 << "\" y=\"" << legendY + 4 << "\" font-size=\"12\">"
       << s.name << "</text>\n";
    legendY += 18;
  }
  os << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"12\">lambda_B</text>\n";
  os << "<text x=\"18\" y=\"" << (top + bottom) / 2
     << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
     << (top + bottom) / 2 << ")\">accuracy</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace surpcal
