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

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace arl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double intensity = 0.0;

  Vec3 xyz() const { return {x, y, z}; }
  bool operator==(const Point&) const = default;
};

struct PointCloud {
  std::vector<Point> points;
  std::string frame_id = "lidar";

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  // Throws ValidationError on a non-finite coordinate or an intensity outside [0,1].
  void validate() const;
};

// Rigid transform stored as a 4x4 homogeneous matrix.
class Pose {
 public:
  Pose() : m_(Mat4::Identity()) {}

  // Validates orthonormality; rotations within 1e-6 of SO(3) are snapped
  // back by polar decomposition, anything further is rejected.
  static Pose from_matrix(const Mat4& m);
  static Pose from_row_major(std::span<const double> v);
  static Pose from_rt(const Mat3& r, const Vec3& t);
  static Pose identity() { return Pose{}; }
  static Pose translation(double x, double y, double z);
  static Pose rotation_z(double yaw);

  const Mat4& matrix() const { return m_; }
  Mat3 rotation() const { return m_.topLeftCorner<3, 3>(); }
  Vec3 translation() const { return m_.topRightCorner<3, 1>(); }
  std::array<double, 16> row_major() const;

  Pose inverse() const;
  Pose operator*(const Pose& rhs) const;
  Vec3 apply(const Vec3& p) const { return rotation() * p + translation(); }

 private:
  explicit Pose(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

// Oriented box as 8 explicit corners. Corner k has offsets
// (bit0 ? +x : -x, bit1 ? +y : -y, bit2 ? +z : -z) along the box axes,
// so corners 0..3 form the face of minimal local z.
class BBox {
 public:
  BBox(std::array<Vec3, 8> corners, int category);

  static BBox from_center(const Vec3& center, const Vec3& size, double yaw, int category);

  const std::array<Vec3, 8>& corners() const { return corners_; }
  int category() const { return category_; }

  // Edge vectors along the three box axes (corner1-corner0, corner2-corner0, corner4-corner0).
  std::array<Vec3, 3> edges() const;

  BBox translated(const Vec3& delta) const;
  BBox transformed(const Pose& pose) const;

 private:
  std::array<Vec3, 8> corners_;
  int category_;
};

struct EgoState {
  double speed = 0.0;           // m/s
  double acceleration = 0.0;    // m/s^2
  double steering_angle = 0.0;  // rad
  Pose ego2glb;
  Pose li2ego;

  Pose sensor2glb() const { return ego2glb * li2ego; }
};

struct FrameRecord {
  double timestamp = 0.0;  // seconds
  PointCloud cloud;
  std::vector<BBox> boxes;
  EgoState ego;
  std::string scene_token;
};

}  // namespace arl
