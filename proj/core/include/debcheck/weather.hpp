#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace debcheck {

enum class WeatherCategory { Clear, FewClouds, Clouds, Showers, Storm };

// Intervals are closed on the left: [0, 1%) clear, [1%, 2%) few clouds,
// [2%, 3%) clouds, [3%, 4%) showers, 4% and up storm.
// Throws std::domain_error outside [0, 1].
WeatherCategory weather_category(double fraction);

std::string_view to_string(WeatherCategory category);  // "clear", "few_clouds", ...
std::optional<WeatherCategory> parse_weather(std::string_view text);

struct WeatherSummary {
  std::size_t total = 0;
  std::size_t broken = 0;
  double fraction = 0.0;
  WeatherCategory category = WeatherCategory::Clear;
};

WeatherSummary summarize(std::size_t total, std::size_t broken);

} // namespace debcheck
