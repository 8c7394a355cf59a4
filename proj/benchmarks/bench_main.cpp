#include <benchmark/benchmark.h>

#include <random>

#include "ecodom/building_io.hpp"
#include "ecodom/comfort.hpp"
#include "ecodom/rules.hpp"
#include "ecodom/solar.hpp"
#include "ecodom/thermal.hpp"

using namespace ecodom;

namespace {

std::filesystem::path fixture(const char* name) { return std::filesystem::path(ECODOM_DATA_DIR) / "fixtures" / name; }

void BM_ComplianceReport(benchmark::State& state) {
  const auto b = load_building(fixture("la_decouverte_initial.json"));
  const auto& cat = RuleCatalogue::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(compliance_report(b, cat));
}
BENCHMARK(BM_ComplianceReport);

void BM_SimulateWeek(benchmark::State& state) {
  ZoneOptions o;
  o.ventilation = VentilationMode::Cross;
  const auto zone = zone_from_building(load_building(fixture("typical_uninsulated.json")), o);
  const auto weather = load_weather(fixture("weather_reunion_7day.csv"));
  SimulationOptions opt;
  opt.substeps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(zone, weather, opt));
}
BENCHMARK(BM_SimulateWeek)->Arg(1)->Arg(4)->Arg(16);

void BM_SimulateYear(benchmark::State& state) {
  SyntheticWeatherParams p;
  p.days = 365;
  const auto weather = synthetic_weather(p);
  const auto zone = zone_from_building(load_building(fixture("ecodom_flat_top.json")));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(zone, weather));
}
BENCHMARK(BM_SimulateYear)->Unit(benchmark::kMillisecond);

void BM_ShadingFraction(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<OverhangGeometry, SolarPosition>> cases(1024);
  for (auto& [g, s] : cases) {
    g = {2 * u(rng), 0.2 + 2 * u(rng), u(rng)};
    s.altitude_deg = 90 * u(rng);
    s.azimuth_deg = 360 * u(rng);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [g, s] = cases[i++ & 1023];
    benchmark::DoNotOptimize(overhang_shading_fraction(g, 180.0, s));
  }
}
BENCHMARK(BM_ShadingFraction);

void BM_SolarPosition(benchmark::State& state) {
  auto t = *parse_timestamp("2024-01-15T00:00:00Z");
  for (auto _ : state) {
    benchmark::DoNotOptimize(solar_position(-21.1, 55.5, t));
    t += std::chrono::minutes{7};
  }
}
BENCHMARK(BM_SolarPosition);

void BM_DiscomfortFraction(benchmark::State& state) {
  const auto series = load_indoor(fixture("indoor_two_zones_30min.csv"));
  const auto zone = ComfortZone::default_zone();
  for (auto _ : state) benchmark::DoNotOptimize(discomfort_fraction(series, zone));
}
BENCHMARK(BM_DiscomfortFraction);

}  // namespace

BENCHMARK_MAIN();
