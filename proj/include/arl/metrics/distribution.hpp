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

#include <vector>

namespace arl::metrics {

struct BevConfig {
  int cells = 100;
  double half_extent = 50.0;
};

class BevHistogram {
 public:
  BevHistogram(int cells, std::vector<double> counts);
  int cells() const { return cells_; }
  const std::vector<double>& values() const { return values_; }
  double total() const;
  BevHistogram normalized() const;
  void accumulate(const BevHistogram& other);

 private:
  int cells_;
  std::vector<double> values_;
};

// Point counts per x-y cell over [-R, R)^2; points outside are dropped.
BevHistogram bev_histogram(const PointCloud& cloud, const BevConfig& cfg = {});

// Jensen-Shannon divergence in bits of the normalized histograms.
double jsd(const BevHistogram& p, const BevHistogram& q);

// Unbiased MMD with a Gaussian kernel over normalized, flattened histograms.
// sigma defaults to the median pairwise distance of the pooled samples
// (1 when that median is 0). Returns sqrt(max(0, MMD^2)).
double mmd(const std::vector<BevHistogram>& gen, const std::vector<BevHistogram>& real, double sigma = 0.0);

}  // namespace arl::metrics
