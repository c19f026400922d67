// Copyright 2026 The arlidar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arl/bench/scenario_dir.hpp"

#include "arl/scene/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace arl::bench {

using nlohmann::json;

void write_scenario_dir(const std::filesystem::path& dir, const ScenarioDir& scenario) {
  std::filesystem::create_directories(dir);
  write_index_with_clouds(dir / "index.jsonl", scenario.index);
  std::vector<double> heights, elevations;
  for (int j = 0; j < scenario.beams.rows(); ++j) {
    heights.push_back(scenario.beams.height(j));
    elevations.push_back(scenario.beams.elevation(j));
  }
  const json sensor{{"heights", heights},
                    {"elevations", elevations},
                    {"width", scenario.width},
                    {"r_max", scenario.norm.r_max},
                    {"cadence", scenario.cadence}};
  std::ofstream out(dir / "sensor.json");
  if (!out) throw FormatError("cannot write " + (dir / "sensor.json").string());
  out << sensor.dump(2) << "\n";
}

ScenarioDir load_scenario_dir(const std::filesystem::path& dir) {
  const auto sensor_path = dir / "sensor.json";
  std::ifstream in(sensor_path);
  if (!in) throw FormatError("missing " + sensor_path.string());
  ScenarioDir sc;
  try {
    const json sensor = json::parse(in);
    sc.beams = BeamTable(sensor.at("heights").get<std::vector<double>>(),
                         sensor.at("elevations").get<std::vector<double>>());
    sc.width = sensor.at("width").get<int>();
    sc.norm.r_max = sensor.at("r_max").get<double>();
    sc.cadence = sensor.at("cadence").get<double>();
  } catch (const json::exception& e) {
    throw FormatError(sensor_path.string() + ": " + e.what());
  }
  if (sc.width <= 0 || !(sc.norm.r_max > 0.0) || !(sc.cadence > 0.0)) {
    throw ValidationError(sensor_path.string() + ": width, r_max and cadence must be positive");
  }
  sc.index = ingest(dir / "index.jsonl");
  return sc;
}

}  // namespace arl::bench
