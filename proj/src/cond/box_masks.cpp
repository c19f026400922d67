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

#include "arl/cond/box_masks.hpp"

#include "arl/range/codec.hpp"
#include "arl/scene/errors.hpp"
#include "arl/scene/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace arl::cond {

BoxMaskStack::BoxMaskStack(int categories, int height, int width)
    : categories_(categories), height_(height), width_(width) {
  if (categories <= 0 || height <= 0 || width <= 0) throw ShapeError("mask stack dimensions must be positive");
  bits_.assign(static_cast<std::size_t>(categories) * static_cast<std::size_t>(height) * static_cast<std::size_t>(width), 0);
}

std::size_t BoxMaskStack::count(int c) const {
  const auto plane = static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  const auto begin = bits_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * plane);
  return static_cast<std::size_t>(std::count(begin, begin + static_cast<std::ptrdiff_t>(plane), 1));
}

std::size_t BoxMaskStack::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

nn::Tensor BoxMaskStack::to_tensor() const {
  nn::Tensor t({categories_, height_, width_});
  for (std::size_t i = 0; i < bits_.size(); ++i) t[i] = bits_[i];
  return t;
}

PointCloud interpolate_bottom_face(const BBox& box, double step) {
  if (!(step > 0.0)) throw ValidationError("interpolation step must be positive");
  const auto face = bottom_face(box);
  for (int k = 0; k < 4; ++k) {
    if ((face[static_cast<std::size_t>((k + 1) % 4)] - face[static_cast<std::size_t>(k)]).norm() < 1e-9) {
      throw ValidationError("degenerate bottom face");
    }
  }
  PointCloud out;
  for (const auto& c : face) out.points.push_back({c.x(), c.y(), c.z(), 0.0});
  auto segment = [&](const Vec3& a, const Vec3& b) {
    const double len = (b - a).norm();
    const int n = std::max(1, static_cast<int>(std::ceil(len / step - 1e-12)));
    for (int i = 1; i < n; ++i) {
      const Vec3 p = a + (b - a) * (static_cast<double>(i) / n);
      out.points.push_back({p.x(), p.y(), p.z(), 0.0});
    }
  };
  for (int k = 0; k < 4; ++k) segment(face[static_cast<std::size_t>(k)], face[static_cast<std::size_t>((k + 1) % 4)]);
  segment(face[0], face[2]);
  segment(face[1], face[3]);
  return out;
}

BoxMaskStack box_masks(const std::vector<BBox>& boxes, const BeamTable& beams, int width, int categories,
                       double step, DepthNorm norm) {
  BoxMaskStack stack(categories, beams.rows(), width);
  for (const auto& box : boxes) {
    if (box.category() >= categories) {
      throw ValidationError("box category " + std::to_string(box.category()) + " outside [0, " +
                            std::to_string(categories) + ")");
    }
    for (const auto& p : interpolate_bottom_face(box, step).points) {
      const auto hit = locate(p.xyz(), beams, width);
      if (!hit || hit->range > norm.r_max) continue;
      stack.set(box.category(), hit->v, hit->u);
    }
  }
  return stack;
}

RangeImage mask_channel_image(const BoxMaskStack& stack, int category) {
  if (category < 0 || category >= stack.categories()) throw ValidationError("mask channel out of range");
  RangeImage img(stack.height(), stack.width());
  for (int v = 0; v < stack.height(); ++v)
    for (int u = 0; u < stack.width(); ++u)
      if (stack.at(category, v, u)) img.set(v, u, 1.0f, 1.0f);
  return img;
}

}  // namespace arl::cond
