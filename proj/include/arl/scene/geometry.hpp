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

#include "arl/scene/types.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace arl {

// Transform mapping previous-sensor coordinates into current-sensor
// coordinates: (ego2glb_cur * li2ego_cur)^-1 * (ego2glb_prev * li2ego_prev).
Pose compose_relative(const EgoState& prev, const EgoState& cur);

PointCloud apply_pose(const PointCloud& cloud, const Pose& pose);

// Same rotation, zero translation.
Pose rotation_only(const Pose& pose);

struct BoxSelection {
  PointCloud inside;
  std::vector<std::size_t> indices;  // ascending indices into the input cloud
};

// Boundary-inclusive containment in the box's own orthogonal frame.
// Throws ValidationError for a degenerate box (any extent < 1e-9 m).
BoxSelection points_in_box(const PointCloud& cloud, const BBox& box);
bool box_contains(const BBox& box, const Vec3& p);

Vec3 box_center(const BBox& box);

// Corner indices of the face with minimal mean z, in perimeter order.
std::array<int, 4> bottom_face_indices(const BBox& box);
std::array<Vec3, 4> bottom_face(const BBox& box);

}  // namespace arl
