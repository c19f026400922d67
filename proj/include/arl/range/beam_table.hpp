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

#include <cstddef>
#include <vector>

namespace arl {

// Per-row ray geometry: row j emanates from (0, 0, height[j]) at elevation elevation[j].
// Row 0 is the bottom row of the range image.
class BeamTable {
 public:
  BeamTable(std::vector<double> heights, std::vector<double> elevations);

  // Evenly spaced elevations over [lo, hi], shared height.
  static BeamTable uniform(int rows, double height, double elev_lo, double elev_hi);

  int rows() const { return static_cast<int>(heights_.size()); }
  double height(int row) const { return heights_[static_cast<std::size_t>(row)]; }
  double elevation(int row) const { return elevations_[static_cast<std::size_t>(row)]; }
  const std::vector<double>& heights() const { return heights_; }
  const std::vector<double>& elevations() const { return elevations_; }

 private:
  std::vector<double> heights_;
  std::vector<double> elevations_;
};

}  // namespace arl
