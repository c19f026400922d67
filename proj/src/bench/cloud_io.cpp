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

#include "arl/bench/cloud_io.hpp"

#include "arl/scene/binary_io.hpp"
#include "arl/scene/errors.hpp"

#include <algorithm>
#include <fstream>

namespace arl::bench {

void write_cloud(std::ostream& out, const PointCloud& cloud) {
  binio::put_magic(out, "LGPC");
  binio::put_u32(out, static_cast<std::uint32_t>(cloud.size()));
  for (const auto& p : cloud.points) {
    binio::put_f32(out, static_cast<float>(p.x));
    binio::put_f32(out, static_cast<float>(p.y));
    binio::put_f32(out, static_cast<float>(p.z));
    binio::put_f32(out, static_cast<float>(p.intensity));
  }
  if (!out) throw FormatError("point cloud write failed");
}

PointCloud read_cloud(std::istream& in) {
  binio::expect_magic(in, "LGPC");
  const std::uint32_t n = binio::get_u32(in, "point count");
  PointCloud cloud;
  cloud.points.reserve(std::min<std::uint32_t>(n, 1u << 20));
  for (std::uint32_t i = 0; i < n; ++i) {
    Point p;
    p.x = binio::get_f32(in, "point data");
    p.y = binio::get_f32(in, "point data");
    p.z = binio::get_f32(in, "point data");
    p.intensity = binio::get_f32(in, "point data");
    cloud.points.push_back(p);
  }
  return cloud;
}

void save_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_cloud(out, cloud);
}

PointCloud load_cloud(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("missing point cloud file " + path.string());
  return read_cloud(in);
}

}  // namespace arl::bench
