#include "netinf/svg_plot.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace netinf {

namespace {
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginL = 60;
constexpr int kMarginR = 150;
constexpr int kMarginT = 40;
constexpr int kMarginB = 50;
}  // namespace

void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  const double xr = spec.x_max - spec.x_min;
  const double yr = spec.y_max - spec.y_min;
  auto px = [&](double x) { return kMarginL + (x - spec.x_min) / xr * plot_w; };
  auto py = [&](double y) { return kMarginT + plot_h - (y - spec.y_min) / yr * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << spec.title << "</text>\n";

  // axes and ticks
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[256];
  for (int t = 0; t <= 4; ++t) {
    const double fx = spec.x_min + xr * t / 4.0;
    const double fy = spec.y_min + yr * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\" font-size=\"11\">%g</text>\n",
                  px(fx), kHeight - kMarginB + 18, fx);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\" font-size=\"11\">%g</text>\n",
                  kMarginL - 6, py(fy) + 4, fy);
    out << buf;
  }
  out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">" << spec.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginT + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kMarginT + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : spec.series[s].points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      out << buf;
    }
    out << "\"/>\n";
    const double ly = kMarginT + 16.0 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << kWidth - kMarginR + 10 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kMarginR + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kMarginR + 40 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << spec.series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace netinf
