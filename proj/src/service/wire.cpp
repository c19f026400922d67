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

#include "arl/service/wire.hpp"

#include "arl/bench/cloud_io.hpp"
#include "arl/service/base64.hpp"

#include <sstream>

namespace arl::service {

namespace {

template <typename F>
auto structural(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw WireError(std::string(what) + ": " + e.what());
  }
}

Vec3 vec3(const json& j, const char* field) {
  const auto v = j.at(field).get<std::vector<double>>();
  if (v.size() != 3) throw WireError(std::string("field '") + field + "' needs 3 numbers");
  return Vec3(v[0], v[1], v[2]);
}

Pose pose(const json& j, const char* field) {
  const auto v = j.at(field).get<std::vector<double>>();
  if (v.size() != 16) throw WireError(std::string("field '") + field + "' needs 16 numbers");
  return Pose::from_row_major(v);
}

}  // namespace

std::string cloud_to_base64(const PointCloud& cloud) {
  std::ostringstream out(std::ios::binary);
  bench::write_cloud(out, cloud);
  return base64_encode(out.str());
}

PointCloud cloud_from_base64(const std::string& text) {
  std::istringstream in(base64_decode(text), std::ios::binary);
  return bench::read_cloud(in);
}

std::string image_to_base64(const RangeImage& img) {
  std::ostringstream out(std::ios::binary);
  write_range_image(out, img);
  return base64_encode(out.str());
}

json box_to_json(const BBox& box, std::size_t id) {
  json corners = json::array();
  for (const auto& c : box.corners()) corners.push_back({c.x(), c.y(), c.z()});
  return {{"id", id}, {"category", box.category()}, {"corners", corners}};
}

BBox box_from_json(const json& j) {
  return structural("box", [&] {
    const int category = j.at("category").get<int>();
    if (j.contains("corners")) {
      const auto pts = j.at("corners").get<std::vector<std::vector<double>>>();
      if (pts.size() != 8) throw WireError("box needs 8 corners");
      std::array<Vec3, 8> corners;
      for (std::size_t k = 0; k < 8; ++k) {
        if (pts[k].size() != 3) throw WireError("box corner needs 3 numbers");
        corners[k] = Vec3(pts[k][0], pts[k][1], pts[k][2]);
      }
      return BBox(corners, category);
    }
    return BBox::from_center(vec3(j, "center"), vec3(j, "size"), j.value("yaw", 0.0), category);
  });
}

std::vector<rollout::EditOp> edits_from_json(const json& body) {
  return structural("edits", [&] {
    std::vector<rollout::EditOp> out;
    if (body.is_null() || !body.contains("edits")) return out;
    for (const auto& e : body.at("edits")) {
      const std::string op = e.at("op").get<std::string>();
      if (op == "move") {
        out.push_back(rollout::EditOp::move(e.at("box_id").get<std::size_t>(), vec3(e, "delta")));
      } else if (op == "remove") {
        out.push_back(rollout::EditOp::remove(e.at("box_id").get<std::size_t>()));
      } else if (op == "add") {
        out.push_back(rollout::EditOp::add(box_from_json(e.at("box"))));
      } else {
        throw WireError("unknown edit op '" + op + "'");
      }
    }
    return out;
  });
}

json frame_to_json(const rollout::GeneratedFrame& frame) {
  json boxes = json::array();
  for (std::size_t i = 0; i < frame.boxes.size(); ++i) boxes.push_back(box_to_json(frame.boxes[i], frame.box_ids[i]));
  const auto& p = frame.provenance;
  return {{"step", frame.step},
          {"timestamp", frame.timestamp},
          {"points", frame.cloud.size()},
          {"cloud", cloud_to_base64(frame.cloud)},
          {"range_image", image_to_base64(frame.image)},
          {"boxes", boxes},
          {"provenance",
           {{"seed", p.seed},
            {"generator", p.generator},
            {"input_step", p.input_step},
            {"input_generated", p.input_generated}}}};
}

InlineScenario inline_scenario_from_json(const json& j) {
  return structural("scenario", [&] {
    InlineScenario sc;
    const auto& sensor = j.at("sensor");
    sc.beams = BeamTable(sensor.at("heights").get<std::vector<double>>(),
                         sensor.at("elevations").get<std::vector<double>>());
    sc.width = sensor.at("width").get<int>();
    sc.norm.r_max = sensor.value("r_max", 80.0);
    if (sc.width <= 0 || !(sc.norm.r_max > 0.0)) throw ValidationError("sensor width and r_max must be positive");
    const auto& frames = j.at("frames");
    if (!frames.is_array() || frames.empty()) throw ValidationError("scenario needs at least one frame");
    for (const auto& f : frames) {
      FrameRecord r;
      r.timestamp = f.value("timestamp", 0.0);
      r.scene_token = f.value("scene", std::string("inline"));
      r.ego.ego2glb = pose(f, "ego2glb");
      r.ego.li2ego = pose(f, "li2ego");
      r.ego.speed = f.value("speed", 0.0);
      r.ego.acceleration = f.value("acceleration", 0.0);
      r.ego.steering_angle = f.value("steering", 0.0);
      for (const auto& b : f.value("boxes", json::array())) r.boxes.push_back(box_from_json(b));
      sc.frames.push_back(std::move(r));
    }
    sc.frames.front().cloud = cloud_from_base64(j.at("cloud").get<std::string>());
    return sc;
  });
}

}  // namespace arl::service
