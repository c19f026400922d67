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
#include "arl/range/range_image.hpp"
#include "arl/scene/types.hpp"

#include <optional>

namespace arl {

struct PixelHit {
  int u = 0;
  int v = 0;
  int row = 0;
  double range = 0.0;  // meters from the row origin
  double azimuth = 0.0;
};

// Row of nearest elevation as seen from each row's own origin.
int nearest_row(const Vec3& p, const BeamTable& beams);

// Pixel a point falls into; nullopt for a point sitting on its row origin.
std::optional<PixelHit> locate(const Vec3& p, const BeamTable& beams, int width);

// Column of an azimuth; always in [0, width).
int azimuth_column(double azimuth, int width);

// Points to a range image; on collision the smallest range wins.
RangeImage project(const PointCloud& cloud, const BeamTable& beams, int width, DepthNorm norm = {});

// Every non-empty pixel back to a point at its column centre on its row's ray.
PointCloud unproject(const RangeImage& img, const BeamTable& beams);

// Pixelwise nearest-wins union of two images with identical geometry.
RangeImage merge_nearest(const RangeImage& a, const RangeImage& b);

}  // namespace arl
