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

#include "arl/range/range_image.hpp"

#include "arl/scene/binary_io.hpp"

#include <fstream>

namespace arl {

void write_range_image(std::ostream& out, const RangeImage& img) {
  if (img.norm().scale != DepthScale::kLinear) {
    throw FormatError("LGRI stores linear depth normalization only");
  }
  if (img.height() > 0xffff || img.width() > 0xffff) throw FormatError("range image too large for LGRI");
  binio::put_magic(out, "LGRI");
  binio::put_u16(out, static_cast<std::uint16_t>(img.height()));
  binio::put_u16(out, static_cast<std::uint16_t>(img.width()));
  binio::put_f32(out, static_cast<float>(img.norm().r_max));
  for (float d : img.depth_data()) binio::put_f32(out, d);
  for (float i : img.intensity_data()) binio::put_f32(out, i);
}

RangeImage read_range_image(std::istream& in) {
  binio::expect_magic(in, "LGRI");
  const int h = binio::get_u16(in, "LGRI height");
  const int w = binio::get_u16(in, "LGRI width");
  DepthNorm norm;
  norm.r_max = binio::get_f32(in, "LGRI r_max");
  RangeImage img(h, w, norm);
  for (float& d : img.depth_data()) d = binio::get_f32(in, "LGRI depth");
  for (float& i : img.intensity_data()) i = binio::get_f32(in, "LGRI intensity");
  return img;
}

void save_range_image(const std::filesystem::path& path, const RangeImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_range_image(out, img);
}

RangeImage load_range_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_range_image(in);
}

}  // namespace arl
