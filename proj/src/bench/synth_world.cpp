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

#include "arl/bench/synth_world.hpp"

#include "arl/scene/errors.hpp"
#include "arl/scene/rng.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace arl::bench {

namespace {

constexpr double kPi = std::numbers::pi;

// Entry distance of a ray into a yawed cuboid, or +inf.
double hit_cuboid(const Cuboid& c, double time, const Vec3& origin, const Vec3& dir) {
  const double cy = std::cos(c.yaw), sy = std::sin(c.yaw);
  const Vec3 rel = origin - c.center_at(time);
  const Vec3 o(cy * rel.x() + sy * rel.y(), -sy * rel.x() + cy * rel.y(), rel.z());
  const Vec3 d(cy * dir.x() + sy * dir.y(), -sy * dir.x() + cy * dir.y(), dir.z());
  const Vec3 half = c.size * 0.5;
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (std::abs(d[k]) < 1e-15) {
      if (std::abs(o[k]) > half[k]) return std::numeric_limits<double>::infinity();
      continue;
    }
    double t1 = (-half[k] - o[k]) / d[k];
    double t2 = (half[k] - o[k]) / d[k];
    if (t1 > t2) std::swap(t1, t2);
    t_near = std::max(t_near, t1);
    t_far = std::min(t_far, t2);
  }
  if (t_near > t_far || t_near <= 1e-9) return std::numeric_limits<double>::infinity();
  return t_near;
}

bool overlaps(const Cuboid& a, const Cuboid& b, double margin) {
  // Conservative: bounding circles in the x-y plane.
  const double ra = 0.5 * std::hypot(a.size.x(), a.size.y());
  const double rb = 0.5 * std::hypot(b.size.x(), b.size.y());
  return (a.center.head<2>() - b.center.head<2>()).norm() < ra + rb + margin;
}

}  // namespace

Pose EgoMotion::ego2glb_at(double t) const {
  const Vec3 p = start + Vec3(std::cos(yaw), std::sin(yaw), 0.0) * (speed * t);
  return Pose::translation(p.x(), p.y(), p.z()) * Pose::rotation_z(yaw);
}

EgoState EgoMotion::state_at(double t) const {
  EgoState s;
  s.speed = speed;
  s.ego2glb = ego2glb_at(t);
  s.li2ego = li2ego;
  return s;
}

PointCloud raycast(const SynthWorld& world, double time, const Pose& sensor2glb, const BeamTable& beams, int width,
                   const RaycastOptions& opts) {
  if (width <= 0) throw ValidationError("raycast width must be positive");
  PointCloud cloud;
  const Mat3 rot = sensor2glb.rotation();
  for (int j = 0; j < beams.rows(); ++j) {
    const double h = beams.height(j);
    const double phi = beams.elevation(j);
    const Vec3 origin_s(0.0, 0.0, h);
    const Vec3 origin = sensor2glb.apply(origin_s);
    for (int u = 0; u < width; ++u) {
      const double theta = kPi - 2.0 * kPi * (u + 0.5) / width;
      const Vec3 dir_s(std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta), std::sin(phi));
      const Vec3 dir = rot * dir_s;
      double best = std::numeric_limits<double>::infinity();
      double intensity = 0.0;
      if (world.ground && dir.z() < -1e-15) {
        const double t = -origin.z() / dir.z();
        if (t > 1e-9) {
          best = t;
          intensity = opts.ground_intensity;
        }
      }
      for (const auto& c : world.cuboids) {
        const double t = hit_cuboid(c, time, origin, dir);
        if (t < best) {
          best = t;
          intensity = opts.box_intensity;
        }
      }
      if (!std::isfinite(best) || best > opts.max_range) continue;
      const Vec3 p = origin_s + dir_s * best;
      cloud.points.push_back({p.x(), p.y(), p.z(), intensity});
    }
  }
  return cloud;
}

BeamTable default_beams(int rows) { return BeamTable::uniform(rows, 1.84, -0.45, -0.03); }

FrameRecord render_frame(const SynthWorld& world, const EgoMotion& ego, double t, const BeamTable& beams, int width,
                         const std::string& scene_token, const RaycastOptions& opts) {
  FrameRecord f;
  f.timestamp = t;
  f.scene_token = scene_token;
  f.ego = ego.state_at(t);
  const Pose sensor2glb = f.ego.sensor2glb();
  f.cloud = raycast(world, t, sensor2glb, beams, width, opts);
  const Pose glb2sensor = sensor2glb.inverse();
  for (const auto& c : world.cuboids) {
    if (c.annotated) f.boxes.push_back(c.box_at(t).transformed(glb2sensor));
  }
  return f;
}

SynthScenario synth_scenario(std::uint64_t seed, const SynthConfig& cfg) {
  if (cfg.frames <= 0 || !(cfg.cadence > 0.0)) throw ValidationError("synthetic scenario needs frames and a cadence");
  Rng rng(seed);
  SynthScenario sc;
  sc.beams = cfg.beams;
  sc.width = cfg.width;
  sc.cadence = cfg.cadence;
  const double duration = cfg.cadence * (cfg.frames - 1);

  sc.ego.start = Vec3(rng.uniform(-5.0, 5.0), rng.uniform(-0.5, 0.5), 0.0);
  sc.ego.yaw = rng.uniform(-0.05, 0.05);
  sc.ego.speed = cfg.static_world ? 0.0 : rng.uniform(cfg.ego_speed_min, cfg.ego_speed_max);
  const double reach = sc.ego.speed * duration;

  auto place = [&](Cuboid c) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      bool clear = true;
      for (const auto& o : sc.world.cuboids) clear = clear && !overlaps(c, o, 0.5);
      if (clear) {
        sc.world.cuboids.push_back(c);
        return;
      }
      c.center.x() += rng.uniform(2.0, 6.0);
    }
  };

  // Movers share a lane per direction with a common speed, so they never collide.
  const double lane_speed[2] = {rng.uniform(2.0, 10.0), rng.uniform(2.0, 10.0)};
  for (int i = 0; i < cfg.moving; ++i) {
    const int lane = i % 2;
    Cuboid c;
    c.size = Vec3(rng.uniform(3.8, 4.8), rng.uniform(1.7, 2.0), rng.uniform(1.4, 1.9));
    const double y = lane == 0 ? -3.5 : 3.5;
    c.center = Vec3(rng.uniform(-15.0, 35.0), y, 0.5 * c.size.z());
    c.yaw = lane == 0 ? 0.0 : kPi;
    c.category = 0;
    if (!cfg.static_world) c.velocity = Vec3(lane == 0 ? lane_speed[0] : -lane_speed[1], 0.0, 0.0);
    place(c);
  }
  for (int i = 0; i < cfg.parked; ++i) {
    Cuboid c;
    const bool truck = rng.uniform() < 0.3;
    c.size = truck ? Vec3(rng.uniform(6.0, 8.0), 2.4, rng.uniform(2.6, 3.2))
                   : Vec3(rng.uniform(3.8, 4.8), rng.uniform(1.7, 2.0), rng.uniform(1.4, 1.9));
    const double y = rng.uniform() < 0.5 ? -7.0 : 7.0;
    c.center = Vec3(rng.uniform(-20.0, 40.0 + reach), y, 0.5 * c.size.z());
    c.yaw = rng.uniform() < 0.5 ? 0.0 : kPi;
    c.category = truck ? 1 : 0;
    place(c);
  }
  if (cfg.buildings) {
    for (int side = 0; side < 2; ++side) {
      double x = -60.0;
      while (x < 80.0 + reach) {
        Cuboid b;
        const double len = rng.uniform(8.0, 25.0);
        const double depth = rng.uniform(6.0, 12.0);
        const double setback = rng.uniform(12.0, 18.0);
        b.size = Vec3(len, depth, rng.uniform(5.0, 14.0));
        b.center = Vec3(x + 0.5 * len, (side == 0 ? -1.0 : 1.0) * (setback + 0.5 * depth), 0.5 * b.size.z());
        b.annotated = false;
        sc.world.cuboids.push_back(b);
        x += len + rng.uniform(2.0, 10.0);
      }
    }
  }
  for (int f = 0; f < cfg.frames; ++f) {
    const double t = cfg.cadence * f;
    FrameRecord fr = render_frame(sc.world, sc.ego, t, sc.beams, sc.width, cfg.scene_token, cfg.raycast);
    fr.timestamp = cfg.t0 + t;
    sc.frames.push_back(std::move(fr));
  }
  return sc;
}

ScenarioIndex to_index(const SynthScenario& scenario) {
  ScenarioIndex index;
  for (std::size_t i = 0; i < scenario.frames.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "_%06zu.lgpc", i);
    index.frames.push_back({scenario.frames[i], "clouds/" + scenario.frames[i].scene_token + name});
  }
  return index;
}

}  // namespace arl::bench
