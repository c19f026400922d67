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

#include "arl/cond/features.hpp"

namespace arl::cond {

EgoFeature ego_feature(const EgoState& ego) {
  EgoFeature f{};
  f[0] = ego.speed;
  f[1] = ego.acceleration;
  f[2] = ego.steering_angle;
  const auto m = ego.ego2glb.row_major();
  for (std::size_t i = 0; i < 16; ++i) f[3 + i] = m[i];
  return f;
}

RelPoseVector relpose_vector(const Pose& e_rel) { return e_rel.row_major(); }

Pose relpose_to_pose(const RelPoseVector& v) { return Pose::from_row_major(v); }

}  // namespace arl::cond
