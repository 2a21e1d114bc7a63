#include "debcheck/weather.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace debcheck {

namespace {
constexpr std::array<std::string_view, 5> kNames = {"clear", "few_clouds", "clouds", "showers",
                                                    "storm"};
}

WeatherCategory weather_category(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::domain_error("fraction out of range: " + std::to_string(fraction));
  if (fraction < 0.01) return WeatherCategory::Clear;
  if (fraction < 0.02) return WeatherCategory::FewClouds;
  if (fraction < 0.03) return WeatherCategory::Clouds;
  if (fraction < 0.04) return WeatherCategory::Showers;
  return WeatherCategory::Storm;
}

std::string_view to_string(WeatherCategory category) {
  return kNames[static_cast<std::size_t>(category)];
}

std::optional<WeatherCategory> parse_weather(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == text) return static_cast<WeatherCategory>(i);
  return std::nullopt;
}

WeatherSummary summarize(std::size_t total, std::size_t broken) {
  if (broken > total) throw std::invalid_argument("more broken packages than packages");
  WeatherSummary s{total, broken, 0.0, WeatherCategory::Clear};
  if (total > 0) s.fraction = static_cast<double>(broken) / static_cast<double>(total);
  s.category = weather_category(s.fraction);
  return s;
}

} // namespace debcheck
