#include "jssp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace jssp {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string esc(const std::string& s) {
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

std::string header(double w, double h, const std::string& config_echo) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- jsspsel-figure v1 config: " + (config_echo.empty() ? "{}" : config_echo) + " -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";
  return out;
}

std::string text(double x, double y, const std::string& s, int size, const char* anchor,
                 const char* extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
         "\" text-anchor=\"" + anchor + "\"" + extra + ">" + esc(s) + "</text>\n";
}

// Tick spacing of the form {1,2,5} * 10^k giving roughly `target` ticks.
double nice_step(double range, int target) {
  if (range <= 0) return 1;
  double rough = range / target;
  double mag = std::pow(10.0, std::floor(std::log10(rough)));
  for (double mult : {1.0, 2.0, 5.0, 10.0})
    if (mag * mult >= rough) return mag * mult;
  return mag * 10.0;
}

std::string job_color(int job, int num_jobs) {
  int hue = (job * 360) / std::max(1, num_jobs);
  return "hsl(" + std::to_string(hue) + ",62%,55%)";
}

}  // namespace

std::string gantt_svg(const ScheduleState& state, const std::string& title,
                      const std::string& config_echo) {
  const Instance& inst = state.instance();
  const double row_h = 26, row_gap = 6;
  const double left = 70, top = 46, right = 150, bottom = 40;
  const double plot_w = 720;
  const double plot_h = inst.num_machines * row_h + (inst.num_machines - 1) * row_gap;
  const double w = left + plot_w + right, h = top + plot_h + bottom;
  std::int64_t span = std::max<std::int64_t>(state.partial_makespan, 1);
  const double sx = plot_w / static_cast<double>(span);

  std::string out = header(w, h, config_echo);
  out += text(left, 24, title, 14, "start", " font-weight=\"bold\"");

  for (int m = 0; m < inst.num_machines; ++m) {
    double y = top + m * (row_h + row_gap);
    out += text(left - 8, y + row_h / 2 + 4, "M" + std::to_string(m), 11, "end");
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(y + row_h) + "\" x2=\"" +
           num(left + plot_w) + "\" y2=\"" + num(y + row_h) +
           "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
  }

  for (const DispatchEntry& e : state.log) {
    double x = left + e.start * sx;
    double bw = (e.end - e.start) * sx;
    double y = top + e.machine * (row_h + row_gap);
    out += "<rect class=\"op\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(bw) +
           "\" height=\"" + num(row_h) + "\" fill=\"" + job_color(e.job, inst.num_jobs) +
           "\" stroke=\"#333\" stroke-width=\"0.6\"><title>job " + std::to_string(e.job) +
           " op " + std::to_string(e.op) + " [" + std::to_string(e.start) + "," +
           std::to_string(e.end) + ")</title></rect>\n";
    if (bw > 18)
      out += text(x + bw / 2, y + row_h / 2 + 4, "J" + std::to_string(e.job), 10, "middle");
  }

  double step = nice_step(static_cast<double>(span), 8);
  double axis_y = top + plot_h;
  for (double t = 0; t <= static_cast<double>(span) + step / 2; t += step) {
    double x = left + t * sx;
    if (x > left + plot_w + 1) break;
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(axis_y) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(axis_y + 5) + "\" stroke=\"#333\"/>\n";
    char lbl[32];
    std::snprintf(lbl, sizeof(lbl), "%.0f", t);
    out += text(x, axis_y + 18, lbl, 10, "middle");
  }

  double lx = left + plot_w + 16;
  for (int j = 0; j < inst.num_jobs; ++j) {
    double y = top + j * 18;
    out += "<rect x=\"" + num(lx) + "\" y=\"" + num(y) + "\" width=\"12\" height=\"12\" fill=\"" +
           job_color(j, inst.num_jobs) + "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
    out += text(lx + 18, y + 10, "job " + std::to_string(j), 10, "start");
  }

  out += "</svg>\n";
  return out;
}

std::string bar_chart_svg(const std::vector<std::pair<std::string, double>>& bars,
                          const std::string& title, const std::string& y_label,
                          const std::string& config_echo) {
  if (bars.empty()) throw std::invalid_argument("bar_chart_svg: no bars");
  const double left = 64, top = 46, right = 24, bottom = 90;
  const double plot_w = std::max<double>(360, 46.0 * static_cast<double>(bars.size()));
  const double plot_h = 300;
  const double w = left + plot_w + right, h = top + plot_h + bottom;
  double vmax = 0;
  for (const auto& [_, v] : bars) vmax = std::max(vmax, v);
  if (vmax <= 0) vmax = 1;

  std::string out = header(w, h, config_echo);
  out += text(left, 24, title, 14, "start", " font-weight=\"bold\"");
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(top + plot_h) + "\" stroke=\"#333\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" +
         num(left + plot_w) + "\" y2=\"" + num(top + plot_h) + "\" stroke=\"#333\"/>\n";

  double step = nice_step(vmax, 6);
  for (double t = 0; t <= vmax + step / 2; t += step) {
    double y = top + plot_h - (t / vmax) * plot_h;
    if (y < top - 1) break;
    out += "<line x1=\"" + num(left - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + plot_w) +
           "\" y2=\"" + num(y) + "\" stroke=\"#eee\"/>\n";
    out += text(left - 8, y + 3, num(t), 9, "end");
  }
  out += text(14, top + plot_h / 2, y_label, 11, "middle",
              (" transform=\"rotate(-90 14 " + num(top + plot_h / 2) + ")\"").c_str());

  const double slot = plot_w / static_cast<double>(bars.size());
  const double bw = slot * 0.64;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    double v = std::max(0.0, bars[i].second);
    double bh = (v / vmax) * plot_h;
    double x = left + static_cast<double>(i) * slot + (slot - bw) / 2;
    double y = top + plot_h - bh;
    out += "<rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(bw) +
           "\" height=\"" + num(bh) + "\" fill=\"hsl(210,55%,55%)\" stroke=\"#333\" "
           "stroke-width=\"0.6\"/>\n";
    out += text(x + bw / 2, y - 4, num(bars[i].second), 9, "middle");
    double cx = x + bw / 2, cy = top + plot_h + 12;
    out += text(cx, cy, bars[i].first, 9, "end",
                (" transform=\"rotate(-40 " + num(cx) + " " + num(cy) + ")\"").c_str());
  }
  out += "</svg>\n";
  return out;
}

std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& config_echo, bool log_x) {
  if (points.empty()) throw std::invalid_argument("scatter_svg: no points");
  const double left = 68, top = 46, right = 40, bottom = 64;
  const double plot_w = 560, plot_h = 340;
  const double w = left + plot_w + right, h = top + plot_h + bottom;

  auto xv = [&](double x) { return log_x ? std::log10(std::max(x, 1e-9)) : x; };
  double xmin = xv(points[0].x), xmax = xmin, ymin = points[0].y, ymax = ymin;
  for (const ScatterPoint& p : points) {
    xmin = std::min(xmin, xv(p.x));
    xmax = std::max(xmax, xv(p.x));
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (xmax - xmin < 1e-12) { xmin -= 1; xmax += 1; }
  if (ymax - ymin < 1e-12) { ymin -= 1; ymax += 1; }
  double xpad = (xmax - xmin) * 0.06, ypad = (ymax - ymin) * 0.08;
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
  auto px = [&](double x) { return left + (xv(x) - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

  std::string out = header(w, h, config_echo);
  out += text(left, 24, title, 14, "start", " font-weight=\"bold\"");
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(top + plot_h) + "\" stroke=\"#333\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" +
         num(left + plot_w) + "\" y2=\"" + num(top + plot_h) + "\" stroke=\"#333\"/>\n";

  double ystep = nice_step(ymax - ymin, 6);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax; t += ystep) {
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(left + plot_w) +
           "\" y2=\"" + num(py(t)) + "\" stroke=\"#eee\"/>\n";
    out += text(left - 8, py(t) + 3, num(t), 9, "end");
  }
  if (log_x) {
    for (double e = std::floor(xmin); e <= std::ceil(xmax); e += 1) {
      double x = left + (e - xmin) / (xmax - xmin) * plot_w;
      if (x < left - 1 || x > left + plot_w + 1) continue;
      char lbl[32];
      std::snprintf(lbl, sizeof(lbl), "1e%.0f", e);
      out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(top + plot_h + 5) + "\" stroke=\"#333\"/>\n";
      out += text(x, top + plot_h + 18, lbl, 9, "middle");
    }
  } else {
    double xstep = nice_step(xmax - xmin, 7);
    for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax; t += xstep) {
      double x = px(t);
      out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(top + plot_h + 5) + "\" stroke=\"#333\"/>\n";
      out += text(x, top + plot_h + 18, num(t), 9, "middle");
    }
  }
  out += text(left + plot_w / 2, h - 14, x_label, 11, "middle");
  out += text(16, top + plot_h / 2, y_label, 11, "middle",
              (" transform=\"rotate(-90 16 " + num(top + plot_h / 2) + ")\"").c_str());

  for (const ScatterPoint& p : points) {
    out += "<circle class=\"pt\" cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
           "\" r=\"4\" fill=\"hsl(18,70%,52%)\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
    if (!p.label.empty())
      out += text(px(p.x) + 6, py(p.y) - 5, p.label, 8, "start");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace jssp
