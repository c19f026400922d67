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

#pragma once

#include "arl/bench/index.hpp"
#include "arl/range/beam_table.hpp"
#include "arl/scene/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace arl::bench {

// Yawed cuboid resting on the ground, moving at constant velocity.
struct Cuboid {
  Vec3 center = Vec3::Zero();  // at t = 0, global frame
  Vec3 size = Vec3::Ones();
  double yaw = 0.0;
  Vec3 velocity = Vec3::Zero();
  int category = 0;
  bool annotated = true;

  Vec3 center_at(double t) const { return center + velocity * t; }
  // Annotation box: `margin` larger than the solid on the sides and top, its
  // floor lifted by `lift` so ground returns stay outside. Surface hits then
  // sit strictly inside instead of on the boundary.
  BBox box_at(double t, double margin = 0.1, double lift = 0.05) const {
    const Vec3 c = center_at(t);
    const double lo = c.z() - 0.5 * size.z() + lift, hi = c.z() + 0.5 * size.z() + margin;
    return BBox::from_center(Vec3(c.x(), c.y(), 0.5 * (lo + hi)),
                             Vec3(size.x() + 2 * margin, size.y() + 2 * margin, hi - lo), yaw, category);
  }
};

struct SynthWorld {
  bool ground = true;  // plane z = 0
  std::vector<Cuboid> cuboids;
};

// Ego moving straight along its heading at constant speed.
struct EgoMotion {
  Vec3 start = Vec3::Zero();
  double yaw = 0.0;
  double speed = 0.0;
  Pose li2ego = Pose::translation(0.9, 0.0, 0.0);

  Pose ego2glb_at(double t) const;
  EgoState state_at(double t) const;
};

struct RaycastOptions {
  double max_range = 80.0;
  double box_intensity = 0.8;
  double ground_intensity = 0.3;
};

// One ray per (row, column) from (0, 0, h_j) in the sensor frame at the
// column's centre azimuth; nearest hit among the ground and all cuboids at
// `time`. Points are returned in the sensor frame, row by row.
PointCloud raycast(const SynthWorld& world, double time, const Pose& sensor2glb, const BeamTable& beams, int width,
                   const RaycastOptions& opts = {});

// Rows at 1.84 m spanning elevations -0.45 .. -0.03 rad.
BeamTable default_beams(int rows);

struct SynthConfig {
  int frames = 20;
  double cadence = 0.5;
  double t0 = 0.0;
  BeamTable beams = default_beams(16);
  int width = 128;
  double ego_speed_min = 3.0;
  double ego_speed_max = 8.0;
  int moving = 2;
  int parked = 3;
  bool buildings = true;
  bool static_world = false;  // ego and cuboids at rest
  std::string scene_token = "synth";
  RaycastOptions raycast{};
};

struct SynthScenario {
  SynthWorld world;
  EgoMotion ego;
  std::vector<FrameRecord> frames;  // annotated boxes in the sensor frame
  BeamTable beams = default_beams(16);
  int width = 128;
  double cadence = 0.5;
};

SynthScenario synth_scenario(std::uint64_t seed, const SynthConfig& cfg);
// Frames with cloud files named clouds/<scene>_<frame>.lgpc.
ScenarioIndex to_index(const SynthScenario& scenario);
// Ground-truth frame at time t for an existing world.
FrameRecord render_frame(const SynthWorld& world, const EgoMotion& ego, double t, const BeamTable& beams, int width,
                         const std::string& scene_token, const RaycastOptions& opts = {});

}  // namespace arl::bench
