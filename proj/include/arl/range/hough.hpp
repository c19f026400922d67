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

#include "arl/range/beam_table.hpp"
#include "arl/scene/types.hpp"

#include <vector>

namespace arl {

struct HoughBins {
  int height_bins = 64;
  double height_lo = -1.0;
  double height_hi = 4.0;
  int elev_bins = 256;
  double elev_lo = -0.6;
  double elev_hi = 0.2;

  double height_width() const { return (height_hi - height_lo) / height_bins; }
  double elev_width() const { return (elev_hi - elev_lo) / elev_bins; }
};

// Recovers per-row (height, elevation) from raw scans. Every point of row j
// satisfies z - h_j = sin(phi_j) * r, i.e. it traces the curve
// phi(h) = atan2(z - h, rho) through the (h, phi) accumulator.
BeamTable hough_calibrate(const std::vector<PointCloud>& clouds, int rows, const HoughBins& bins = {});

}  // namespace arl
