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

#include "arl/sde/sde.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace arl::sde {

std::size_t DecoupledScene::foreground_size() const {
  std::size_t n = 0;
  for (const auto& [key, g] : groups) n += g.cloud.size();
  return n;
}

DecoupledScene decouple(const FrameRecord& frame) {
  const auto& boxes = frame.boxes;
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].category() < boxes[b].category(); });

  const auto& pts = frame.cloud.points;
  std::vector<bool> taken(pts.size(), false);
  DecoupledScene out;
  out.background.frame_id = frame.cloud.frame_id;
  for (std::size_t b : order) {
    const GroupKey key{boxes[b].category(), b};
    PointGroup& g = out.groups[key];
    g.cloud.frame_id = frame.cloud.frame_id;
    const BoxSelection sel = points_in_box(frame.cloud, boxes[b]);
    for (std::size_t i : sel.indices) {
      if (taken[i]) continue;
      taken[i] = true;
      g.indices.push_back(i);
      g.cloud.points.push_back(pts[i]);
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (taken[i]) continue;
    out.background_indices.push_back(i);
    out.background.points.push_back(pts[i]);
  }
  return out;
}

BoxMatching match_boxes(const std::vector<BBox>& prev_boxes, const std::vector<BBox>& cur_boxes,
                        const Pose& e_rel) {
  std::vector<Vec3> prev_centers;
  prev_centers.reserve(prev_boxes.size());
  for (const auto& b : prev_boxes) prev_centers.push_back(e_rel.apply(box_center(b)));

  BoxMatching m;
  m.matched.resize(cur_boxes.size());
  for (std::size_t i = 0; i < cur_boxes.size(); ++i) {
    const Vec3 c = box_center(cur_boxes[i]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < prev_boxes.size(); ++j) {
      if (prev_boxes[j].category() != cur_boxes[i].category()) continue;
      const double d = (prev_centers[j] - c).norm();
      if (d < best - 1e-12) {
        best = d;
        m.matched[i] = j;
      }
    }
  }
  return m;
}

PointCloud estimate_foreground(const DecoupledScene& prev, const std::vector<BBox>& prev_boxes,
                               const std::vector<BBox>& cur_boxes, const Pose& e_rel) {
  const BoxMatching m = match_boxes(prev_boxes, cur_boxes, e_rel);
  PointCloud out;
  out.frame_id = prev.background.frame_id;
  for (std::size_t i = 0; i < cur_boxes.size(); ++i) {
    if (!m.matched[i]) continue;
    const std::size_t j = *m.matched[i];
    const auto it = prev.groups.find(GroupKey{prev_boxes[j].category(), j});
    if (it == prev.groups.end()) continue;
    const Vec3 delta = box_center(cur_boxes[i]) - e_rel.apply(box_center(prev_boxes[j]));
    for (const Point& p : apply_pose(it->second.cloud, e_rel).points) {
      out.points.push_back({p.x + delta.x(), p.y + delta.y(), p.z + delta.z(), p.intensity});
    }
  }
  return out;
}

PointCloud estimate_background(const PointCloud& prev_bg, const Pose& e_rel) {
  return apply_pose(prev_bg, rotation_only(e_rel));
}

SdeEstimate sde_step(const FrameRecord& prev_frame, const std::vector<BBox>& cur_boxes, const EgoState& cur_ego) {
  const Pose e_rel = compose_relative(prev_frame.ego, cur_ego);
  const DecoupledScene scene = decouple(prev_frame);
  SdeEstimate est;
  est.foreground = estimate_foreground(scene, prev_frame.boxes, cur_boxes, e_rel);
  est.background = estimate_background(scene.background, e_rel);
  return est;
}

}  // namespace arl::sde
