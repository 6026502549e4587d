#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace povatlas {

// Minimal standalone-SVG builder over world coordinates (y up).
class SvgPlot {
 public:
  SvgPlot(double min_x, double min_y, double max_x, double max_y, int width_px = 640,
          const std::string& title = "");

  void circle(double cx, double cy, double world_r, const std::string& stroke,
              bool dashed = false);
  void dot(double cx, double cy, double px_r, const std::string& fill);
  void cross(double cx, double cy, double px_r, const std::string& stroke);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double px_width = 1.5);
  void text(double cx, double cy, const std::string& s, const std::string& fill = "#444");
  void legend(const std::vector<std::pair<std::string, std::string>>& entries);  // color, label

  std::string str() const;
  void save(const std::filesystem::path& path) const;

  // hue in [0, 1) -> "#rrggbb"
  static std::string hue_color(double hue);

 private:
  double tx(double x) const;
  double ty(double y) const;

  double min_x_, min_y_, scale_;
  int width_, height_;
  std::string body_;
  std::string title_;
};

}  // namespace povatlas
