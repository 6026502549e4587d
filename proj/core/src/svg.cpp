#include "povatlas/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "povatlas/artifacts.hpp"

namespace povatlas {

using artifacts::format_double;

namespace {
constexpr int kMargin = 40;
}

SvgPlot::SvgPlot(double min_x, double min_y, double max_x, double max_y, int width_px,
                 const std::string& title)
    : title_(title) {
  double span_x = max_x - min_x;
  double span_y = max_y - min_y;
  if (span_x <= 0) span_x = 1.0;  // degenerate/empty data still gets a frame
  if (span_y <= 0) span_y = 1.0;
  double pad_x = 0.05 * span_x;
  double pad_y = 0.05 * span_y;
  min_x_ = min_x - pad_x;
  min_y_ = min_y - pad_y;
  scale_ = (width_px - 2 * kMargin) / (span_x + 2 * pad_x);
  width_ = width_px;
  height_ = static_cast<int>(std::lround((span_y + 2 * pad_y) * scale_)) + 2 * kMargin;
}

double SvgPlot::tx(double x) const { return kMargin + (x - min_x_) * scale_; }
double SvgPlot::ty(double y) const { return height_ - kMargin - (y - min_y_) * scale_; }

void SvgPlot::circle(double cx, double cy, double world_r, const std::string& stroke,
                     bool dashed) {
  std::ostringstream s;
  s << "<circle cx=\"" << format_double(tx(cx)) << "\" cy=\"" << format_double(ty(cy))
    << "\" r=\"" << format_double(world_r * scale_) << "\" fill=\"none\" stroke=\"" << stroke
    << "\"";
  if (dashed) s << " stroke-dasharray=\"6 4\"";
  s << "/>\n";
  body_ += s.str();
}

void SvgPlot::dot(double cx, double cy, double px_r, const std::string& fill) {
  std::ostringstream s;
  s << "<circle cx=\"" << format_double(tx(cx)) << "\" cy=\"" << format_double(ty(cy))
    << "\" r=\"" << format_double(px_r) << "\" fill=\"" << fill << "\"/>\n";
  body_ += s.str();
}

void SvgPlot::cross(double cx, double cy, double px_r, const std::string& stroke) {
  double x = tx(cx), y = ty(cy);
  std::ostringstream s;
  s << "<path d=\"M" << format_double(x - px_r) << ' ' << format_double(y - px_r) << " L"
    << format_double(x + px_r) << ' ' << format_double(y + px_r) << " M"
    << format_double(x - px_r) << ' ' << format_double(y + px_r) << " L"
    << format_double(x + px_r) << ' ' << format_double(y - px_r) << "\" stroke=\"" << stroke
    << "\" fill=\"none\"/>\n";
  body_ += s.str();
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts,
                       const std::string& stroke, double px_width) {
  if (pts.empty()) return;
  std::ostringstream s;
  s << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
    << format_double(px_width) << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s << ' ';
    s << format_double(tx(pts[i].first)) << ',' << format_double(ty(pts[i].second));
  }
  s << "\"/>\n";
  body_ += s.str();
}

void SvgPlot::text(double cx, double cy, const std::string& t, const std::string& fill) {
  std::ostringstream s;
  s << "<text x=\"" << format_double(tx(cx)) << "\" y=\"" << format_double(ty(cy))
    << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << fill << "\">" << t
    << "</text>\n";
  body_ += s.str();
}

void SvgPlot::legend(const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ostringstream s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    double y = kMargin + 14.0 * (static_cast<double>(i) + 1);
    s << "<circle cx=\"" << (width_ - kMargin - 110) << "\" cy=\"" << format_double(y - 4)
      << "\" r=\"4\" fill=\"" << entries[i].first << "\"/>\n"
      << "<text x=\"" << (width_ - kMargin - 100) << "\" y=\"" << format_double(y)
      << "\" font-size=\"11\" font-family=\"sans-serif\">" << entries[i].second
      << "</text>\n";
  }
  body_ += s.str();
}

std::string SvgPlot::str() const {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
    << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << width_ << "\" height=\"" << height_
    << "\" fill=\"white\"/>\n"
    << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << width_ - 2 * kMargin
    << "\" height=\"" << height_ - 2 * kMargin
    << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  if (!title_.empty())
    s << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 10
      << "\" font-size=\"13\" font-family=\"sans-serif\">" << title_ << "</text>\n";
  s << body_ << "</svg>\n";
  return s.str();
}

void SvgPlot::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  out << str();
}

std::string SvgPlot::hue_color(double hue) {
  hue -= std::floor(hue);
  double h6 = hue * 6.0;
  int sect = static_cast<int>(h6) % 6;
  double f = h6 - std::floor(h6);
  double q = 1.0 - f;
  double r = 0, g = 0, b = 0;
  switch (sect) {
    case 0: r = 1; g = f; break;
    case 1: r = q; g = 1; break;
    case 2: g = 1; b = f; break;
    case 3: g = q; b = 1; break;
    case 4: r = f; b = 1; break;
    default: r = 1; b = q; break;
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(r * 255.0),
                static_cast<int>(g * 255.0), static_cast<int>(b * 255.0));
  return buf;
}

}  // namespace povatlas
