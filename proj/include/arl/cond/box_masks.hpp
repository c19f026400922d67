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
#include "arl/nn/tensor.hpp"
#include "arl/scene/types.hpp"

#include <cstdint>
#include <vector>

namespace arl::cond {

// D x H x W binary masks, one channel per box category.
class BoxMaskStack {
 public:
  BoxMaskStack(int categories, int height, int width);

  int categories() const { return categories_; }
  int height() const { return height_; }
  int width() const { return width_; }

  bool at(int c, int v, int u) const { return bits_[index(c, v, u)] != 0; }
  void set(int c, int v, int u) { bits_[index(c, v, u)] = 1; }
  std::size_t count(int c) const;
  std::size_t count() const;

  // [D, H, W] with values in {0, 1}.
  nn::Tensor to_tensor() const;
  bool operator==(const BoxMaskStack&) const = default;

 private:
  std::size_t index(int c, int v, int u) const {
    return (static_cast<std::size_t>(c) * static_cast<std::size_t>(height_) + static_cast<std::size_t>(v)) *
               static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(u);
  }

  int categories_;
  int height_;
  int width_;
  std::vector<std::uint8_t> bits_;
};

// Bottom-face corners plus samples along its 4 edges and 2 diagonals,
// spaced at most `step` metres apart.
PointCloud interpolate_bottom_face(const BBox& box, double step);

// Marks every pixel hit by a box's interpolated bottom face in its category
// channel. No depth competition; samples beyond r_max are dropped.
BoxMaskStack box_masks(const std::vector<BBox>& boxes, const BeamTable& beams, int width, int categories,
                       double step = 0.2, DepthNorm norm = {});

// One mask channel as a range image (depth 1 where set) for inspection.
RangeImage mask_channel_image(const BoxMaskStack& stack, int category);

}  // namespace arl::cond
