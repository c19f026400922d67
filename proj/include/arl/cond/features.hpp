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

namespace arl::cond {

// (speed, acceleration, steering angle, ego-to-global matrix row-major).
using EgoFeature = std::array<double, 19>;
// Relative sensor pose, row-major.
using RelPoseVector = std::array<double, 16>;

EgoFeature ego_feature(const EgoState& ego);
RelPoseVector relpose_vector(const Pose& e_rel);
Pose relpose_to_pose(const RelPoseVector& v);

}  // namespace arl::cond
