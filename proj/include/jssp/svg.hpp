#pragma once
// Self-contained SVG rendering for schedules and report figures.

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "jssp/schedule.hpp"

namespace jssp {

/// Machines as rows, one rectangle per scheduled operation, colored by job.
/// The config echo is embedded as an XML comment.
std::string gantt_svg(const ScheduleState& state, const std::string& title,
                      const std::string& config_echo);

std::string bar_chart_svg(const std::vector<std::pair<std::string, double>>& bars,
                          const std::string& title, const std::string& y_label,
                          const std::string& config_echo);

struct ScatterPoint {
  double x = 0;
  double y = 0;
  std::string label;
};

std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& config_echo, bool log_x = false);

}  // namespace jssp
