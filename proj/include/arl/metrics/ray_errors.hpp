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

#include "arl/range/range_image.hpp"

namespace arl::metrics {

struct RayErrors {
  double l1 = 0.0;      // metres
  double absrel = 0.0;  // percent
  std::size_t rays = 0;
};

// Over pixels occupied in gt. An empty generated pixel counts as r_max.
RayErrors ray_errors(const RangeImage& gen, const RangeImage& gt);

}  // namespace arl::metrics
