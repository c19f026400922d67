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
#include "arl/scene/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arl::metrics {

struct HorizonRow {
  double horizon_s = 0.0;
  double cd = 0.0;
  std::optional<double> l1;
  std::optional<double> absrel;
};

struct HorizonReport {
  std::vector<HorizonRow> rows;

  std::string table() const;
  std::string jsonl() const;
};

// Frame i of a generated sequence sits (i + 1) * cadence after frame 0.
// Ray errors are added when both image lists are given.
HorizonReport eval_sequence(const std::vector<PointCloud>& gen, const std::vector<PointCloud>& gt, double cadence_s,
                            const std::vector<RangeImage>* gen_images = nullptr,
                            const std::vector<RangeImage>* gt_images = nullptr);

// Row-wise mean of several reports with identical horizons.
HorizonReport mean_report(const std::vector<HorizonReport>& reports);

}  // namespace arl::metrics
