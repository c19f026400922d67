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

#include "arl/scene/geometry.hpp"

#include "arl/scene/errors.hpp"

#include <cmath>
#include <limits>

namespace arl {

namespace {

struct BoxFrame {
  Vec3 center;
  Mat3 axes;  // columns: orthonormal box axes
  Vec3 half;
};

BoxFrame box_frame(const BBox& box) {
  const auto e = box.edges();
  BoxFrame f;
  f.center = box_center(box);
  const double lx = e[0].norm();
  if (lx < 1e-9) throw ValidationError("degenerate box: x extent below 1e-9 m");
  const Vec3 ax = e[0] / lx;
  Vec3 ey = e[1] - ax * ax.dot(e[1]);
  const double ly = ey.norm();
  if (ly < 1e-9) throw ValidationError("degenerate box: y extent below 1e-9 m");
  const Vec3 ay = ey / ly;
  Vec3 ez = e[2] - ax * ax.dot(e[2]) - ay * ay.dot(e[2]);
  const double lz = ez.norm();
  if (lz < 1e-9) throw ValidationError("degenerate box: z extent below 1e-9 m");
  f.axes.col(0) = ax;
  f.axes.col(1) = ay;
  f.axes.col(2) = ez / lz;
  f.half = Vec3(0.5 * lx, 0.5 * ly, 0.5 * lz);
  return f;
}

bool frame_contains(const BoxFrame& f, const Vec3& p) {
  const Vec3 local = f.axes.transpose() * (p - f.center);
  return std::abs(local.x()) <= f.half.x() && std::abs(local.y()) <= f.half.y() &&
         std::abs(local.z()) <= f.half.z();
}

}  // namespace

Pose compose_relative(const EgoState& prev, const EgoState& cur) {
  return (cur.ego2glb * cur.li2ego).inverse() * (prev.ego2glb * prev.li2ego);
}

PointCloud apply_pose(const PointCloud& cloud, const Pose& pose) {
  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.points.reserve(cloud.size());
  const Mat3 r = pose.rotation();
  const Vec3 t = pose.translation();
  for (const Point& p : cloud.points) {
    const Vec3 q = r * p.xyz() + t;
    out.points.push_back({q.x(), q.y(), q.z(), p.intensity});
  }
  return out;
}

Pose rotation_only(const Pose& pose) { return Pose::from_rt(pose.rotation(), Vec3::Zero()); }

BoxSelection points_in_box(const PointCloud& cloud, const BBox& box) {
  const BoxFrame f = box_frame(box);
  BoxSelection sel;
  sel.inside.frame_id = cloud.frame_id;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (frame_contains(f, cloud.points[i].xyz())) {
      sel.indices.push_back(i);
      sel.inside.points.push_back(cloud.points[i]);
    }
  }
  return sel;
}

bool box_contains(const BBox& box, const Vec3& p) { return frame_contains(box_frame(box), p); }

Vec3 box_center(const BBox& box) {
  Vec3 c = Vec3::Zero();
  for (const auto& v : box.corners()) c += v;
  return c / 8.0;
}

std::array<int, 4> bottom_face_indices(const BBox& box) {
  // Faces enumerated as (axis, side); the first face of minimal mean z wins.
  std::array<int, 4> best{};
  double best_z = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    const int fixed = 1 << axis;
    const int p = 1 << ((axis + 1) % 3);
    const int q = 1 << ((axis + 2) % 3);
    for (int side = 0; side < 2; ++side) {
      const int base = side ? fixed : 0;
      // Perimeter order around the face.
      const std::array<int, 4> face{base, base | p, base | p | q, base | q};
      double z = 0.0;
      for (int k : face) z += box.corners()[static_cast<std::size_t>(k)].z();
      z *= 0.25;
      if (z < best_z - 1e-12) {
        best_z = z;
        best = face;
      }
    }
  }
  return best;
}

std::array<Vec3, 4> bottom_face(const BBox& box) {
  const auto idx = bottom_face_indices(box);
  std::array<Vec3, 4> out;
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = box.corners()[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
  return out;
}

}  // namespace arl
