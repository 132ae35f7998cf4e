#include "gevreyflow/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  bool log = false;
  double lo = 0, hi = 1;  // in transformed units

  double transform(double v) const { return log ? std::log10(v) : v; }

  void fit(double a, double b) {
    lo = a;
    hi = b;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo))) {
      const double pad = log ? 0.5 : std::max(0.5 * std::abs(lo), 0.5);
      lo -= pad;
      hi += pad;
    } else if (!log) {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    } else {
      lo = std::floor(lo);
      hi = std::ceil(hi);
    }
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      const int step = std::max(1, static_cast<int>(std::ceil((hi - lo) / 8.0)));
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += step) t.push_back(e);
      return t;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(v);
    return t;
  }

  std::string label(double tv) const { return log ? "1e" + tick_label(tv) : tick_label(std::abs(tv) < 1e-14 ? 0 : tv); }
};

}  // namespace

std::string plot_series(const Series& series, const PlotSpec& style) {
  if (series.rows.empty()) throw ConfigError("cannot plot empty series '" + series.name + "'");
  if (style.y.empty()) throw ConfigError("plot '" + style.file + "' names no y columns");
  auto column = [&](const std::string& name) {
    try {
      return series.column(name);
    } catch (const std::out_of_range& e) {
      throw ConfigError(e.what());
    }
  };
  const auto xs = column(style.x);

  Axis ax{style.log_x}, ay{style.log_y};
  std::vector<std::vector<std::pair<double, double>>> curves;
  double xlo = HUGE_VAL, xhi = -HUGE_VAL, ylo = HUGE_VAL, yhi = -HUGE_VAL;
  for (const auto& col : style.y) {
    const auto ys = column(col);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i], y = ys[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((ax.log && x <= 0) || (ay.log && y <= 0)) continue;
      const double tx = ax.transform(x), ty = ay.transform(y);
      xlo = std::min(xlo, tx);
      xhi = std::max(xhi, tx);
      ylo = std::min(ylo, ty);
      yhi = std::max(yhi, ty);
      pts.emplace_back(tx, ty);
    }
    curves.push_back(std::move(pts));
  }
  if (xlo > xhi) throw ConfigError("plot '" + style.file + "' has no plottable points");
  ax.fit(xlo, xhi);
  ay.fit(ylo, yhi);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double tx) { return kLeft + (tx - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double ty) { return kTop + (ay.hi - ty) / (ay.hi - ay.lo) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(style.title.empty() ? series.name : style.title) << "</text>\n";
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    s << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\"" << kTop + ph
      << "\" stroke=\"#ddd\"/>\n";
    s << "<text x=\"" << num(x) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << ax.label(t)
      << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    s << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << num(y)
      << "\" stroke=\"#ddd\"/>\n";
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << ay.label(t)
      << "</text>\n";
  }
  s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">"
    << escape(style.x) << (ax.log ? " (log)" : "") << "</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    const auto& pts = curves[c];
    if (pts.size() >= 2) {
      s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [tx, ty] : pts) s << num(px(tx)) << ',' << num(py(ty)) << ' ';
      s << "\"/>\n";
    }
    if (pts.size() <= 40) {
      for (const auto& [tx, ty] : pts) {
        s << "<circle cx=\"" << num(px(tx)) << "\" cy=\"" << num(py(ty)) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
      }
    }
    const double ly = kTop + 14 + 18.0 * static_cast<double>(c);
    s << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << kLeft + pw + 32
      << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << num(ly) << "\">" << escape(style.y[c])
      << (ay.log ? " (log)" : "") << "</text>\n";
  }
  if (!style.annotation.empty()) {
    s << "<text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 16 << "\" fill=\"#444\">" << escape(style.annotation)
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace gevreyflow
