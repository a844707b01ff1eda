#include "cancoord/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cancoord::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 55;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

struct Frame {
  Range xr, yr;
  double px(double x) const { return kLeft + xr.frac(x) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - yr.frac(y) * (kHeight - kTop - kBottom); }
};

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& x_label,
          const std::string& y_label) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  os << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x1)
     << "\" y2=\"" << fixed(y0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x0)
     << "\" y2=\"" << fixed(y1) << "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = f.xr.lo + (f.xr.hi - f.xr.lo) * i / kTicks;
    const double yv = f.yr.lo + (f.yr.hi - f.yr.lo) * i / kTicks;
    os << "<text x=\"" << fixed(f.px(xv)) << "\" y=\"" << fixed(y0 + 16)
       << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    os << "<text x=\"" << fixed(x0 - 6) << "\" y=\"" << fixed(f.py(yv) + 4)
       << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  os << "<text x=\"" << fixed((x0 + x1) / 2) << "\" y=\"" << fixed(kHeight - 12)
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << fixed((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << fixed((y0 + y1) / 2) << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series) {
  Frame f;
  for (const auto& s : series) {
    for (double v : s.x) f.xr.add(v);
    for (double v : s.y) f.yr.add(v);
  }
  f.xr.pad();
  f.yr.pad();

  std::ostringstream os;
  header(os, title);
  axes(os, f, x_label, y_label);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (i) os << ' ';
      os << fixed(f.px(s.x[i])) << ',' << fixed(f.py(s.y[i]));
    }
    os << "\"/>\n";
    os << "<text x=\"" << fixed(kWidth - kRight - 4) << "\" y=\"" << fixed(kTop + 14 + 14.0 * k)
       << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<double>& x,
                        const std::vector<double>& y, const std::vector<std::vector<double>>& z) {
  Frame f;
  for (double v : x) f.xr.add(v);
  for (double v : y) f.yr.add(v);
  f.xr.pad();
  f.yr.pad();
  Range zr;
  for (const auto& row : z) {
    for (double v : row) zr.add(v);
  }
  zr.pad();

  std::ostringstream os;
  header(os, title);
  const double cw = (kWidth - kLeft - kRight) / static_cast<double>(std::max<std::size_t>(x.size(), 1));
  const double ch = (kHeight - kTop - kBottom) / static_cast<double>(std::max<std::size_t>(y.size(), 1));
  for (std::size_t i = 0; i < y.size() && i < z.size(); ++i) {
    for (std::size_t j = 0; j < x.size() && j < z[i].size(); ++j) {
      const double t = zr.frac(z[i][j]);
      const int r = static_cast<int>(std::lround(255 * t));
      const int b = 255 - r;
      os << "<rect x=\"" << fixed(kLeft + j * cw) << "\" y=\""
         << fixed(kHeight - kBottom - (i + 1) * ch) << "\" width=\"" << fixed(cw) << "\" height=\""
         << fixed(ch) << "\" fill=\"rgb(" << r << ",0," << b << ")\"/>\n";
    }
  }
  axes(os, f, x_label, y_label);
  os << "</svg>\n";
  return os.str();
}

}  // namespace cancoord::cli
