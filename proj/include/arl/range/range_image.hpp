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
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace arl {

enum class DepthScale { kLinear, kLog };

struct DepthNorm {
  double r_max = 80.0;
  DepthScale scale = DepthScale::kLinear;

  double normalize(double r) const;
  double denormalize(double d) const;
};

// Two-channel H x W image: normalized depth (0 = empty pixel) and intensity.
// Row v = 0 is the top row; row-major storage.
class RangeImage {
 public:
  RangeImage() = default;
  RangeImage(int height, int width, DepthNorm norm = {});

  int height() const { return height_; }
  int width() const { return width_; }
  const DepthNorm& norm() const { return norm_; }

  float depth(int v, int u) const { return depth_[index(v, u)]; }
  float intensity(int v, int u) const { return intensity_[index(v, u)]; }
  void set(int v, int u, float depth, float intensity);

  const std::vector<float>& depth_data() const { return depth_; }
  const std::vector<float>& intensity_data() const { return intensity_; }
  std::vector<float>& depth_data() { return depth_; }
  std::vector<float>& intensity_data() { return intensity_; }

  std::size_t occupied() const;

  bool operator==(const RangeImage& o) const;

 private:
  std::size_t index(int v, int u) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(u);
  }

  int height_ = 0;
  int width_ = 0;
  DepthNorm norm_;
  std::vector<float> depth_;
  std::vector<float> intensity_;
};

// "LGRI" container: u16 H, u16 W, f32 r_max, H*W f32 depth, H*W f32 intensity, little-endian.
void write_range_image(std::ostream& out, const RangeImage& img);
RangeImage read_range_image(std::istream& in);
void save_range_image(const std::filesystem::path& path, const RangeImage& img);
RangeImage load_range_image(const std::filesystem::path& path);

}  // namespace arl
