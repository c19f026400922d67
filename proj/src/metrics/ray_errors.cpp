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

#include "arl/metrics/ray_errors.hpp"

#include "arl/scene/errors.hpp"

#include <cmath>

namespace arl::metrics {

RayErrors ray_errors(const RangeImage& gen, const RangeImage& gt) {
  if (gen.height() != gt.height() || gen.width() != gt.width()) throw ShapeError("ray errors need equal image sizes");
  if (gen.norm().r_max != gt.norm().r_max || gen.norm().scale != gt.norm().scale) {
    throw ValidationError("ray errors need equal depth normalization");
  }
  const DepthNorm& norm = gt.norm();
  RayErrors out;
  double abs_sum = 0.0, rel_sum = 0.0;
  const auto& gd = gt.depth_data();
  const auto& pd = gen.depth_data();
  for (std::size_t i = 0; i < gd.size(); ++i) {
    if (!(gd[i] > 0.0f)) continue;
    const double r = norm.denormalize(gd[i]);
    const double r_hat = pd[i] > 0.0f ? norm.denormalize(pd[i]) : norm.r_max;
    const double e = std::abs(r_hat - r);
    abs_sum += e;
    rel_sum += e / r;
    ++out.rays;
  }
  if (out.rays == 0) throw ValidationError("ground-truth image has no occupied pixels");
  out.l1 = abs_sum / static_cast<double>(out.rays);
  out.absrel = 100.0 * rel_sum / static_cast<double>(out.rays);
  return out;
}

}  // namespace arl::metrics
