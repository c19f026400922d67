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

#include "arl/scene/types.hpp"

#include "arl/scene/errors.hpp"

#include <cmath>
#include <string>

namespace arl {

namespace {

constexpr double kOrthoTol = 1e-9;
constexpr double kSnapTol = 1e-6;
constexpr double kBoxTol = 1e-6;

double orthonormality_error(const Mat3& r) {
  const Mat3 gram = r.transpose() * r - Mat3::Identity();
  return std::max(gram.cwiseAbs().maxCoeff(), std::abs(r.determinant() - 1.0));
}

}  // namespace

void PointCloud::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (!(p.intensity >= 0.0 && p.intensity <= 1.0)) {
      throw ValidationError("point " + std::to_string(i) + " has intensity outside [0,1]");
    }
  }
}

Pose Pose::from_matrix(const Mat4& m) {
  if (!m.allFinite()) throw ValidationError("pose has non-finite entries");
  const Eigen::RowVector4d bottom = m.row(3);
  if ((bottom - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() > kOrthoTol) {
    throw ValidationError("pose bottom row is not (0,0,0,1)");
  }
  Mat4 out = m;
  out.row(3) << 0, 0, 0, 1;
  const Mat3 r = m.topLeftCorner<3, 3>();
  const double err = orthonormality_error(r);
  if (err > kOrthoTol) {
    if (err > kSnapTol) {
      throw ValidationError("pose rotation is not orthonormal (error " + std::to_string(err) + ")");
    }
    Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 snapped = svd.matrixU() * svd.matrixV().transpose();
    if (snapped.determinant() < 0.0) {
      throw ValidationError("pose rotation is a reflection");
    }
    out.topLeftCorner<3, 3>() = snapped;
  }
  return Pose(out);
}

Pose Pose::from_row_major(std::span<const double> v) {
  if (v.size() != 16) throw ValidationError("pose needs 16 values, got " + std::to_string(v.size()));
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = v[static_cast<std::size_t>(r * 4 + c)];
  return from_matrix(m);
}

Pose Pose::from_rt(const Mat3& r, const Vec3& t) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return from_matrix(m);
}

Pose Pose::translation(double x, double y, double z) {
  Mat4 m = Mat4::Identity();
  m(0, 3) = x;
  m(1, 3) = y;
  m(2, 3) = z;
  return Pose(m);
}

Pose Pose::rotation_z(double yaw) {
  Mat4 m = Mat4::Identity();
  const double c = std::cos(yaw), s = std::sin(yaw);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return Pose(m);
}

std::array<double, 16> Pose::row_major() const {
  std::array<double, 16> v{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(r * 4 + c)] = m_(r, c);
  return v;
}

Pose Pose::inverse() const {
  Mat4 m = Mat4::Identity();
  const Mat3 rt = rotation().transpose();
  m.topLeftCorner<3, 3>() = rt;
  m.topRightCorner<3, 1>() = -rt * translation();
  return Pose(m);
}

Pose Pose::operator*(const Pose& rhs) const {
  Mat4 m = m_ * rhs.m_;
  m.row(3) << 0, 0, 0, 1;
  return Pose(m);
}

BBox::BBox(std::array<Vec3, 8> corners, int category) : corners_(corners), category_(category) {
  if (category < 0) throw ValidationError("box category must be non-negative");
  for (const auto& c : corners_) {
    if (!c.allFinite()) throw ValidationError("box corner is not finite");
  }
  // Opposite edges of a parallelepiped are equal.
  for (int axis = 0; axis < 3; ++axis) {
    const int bit = 1 << axis;
    const Vec3 ref = corners_[bit] - corners_[0];
    for (int i = 0; i < 8; ++i) {
      if (i & bit) continue;
      const Vec3 e = corners_[i | bit] - corners_[i];
      if ((e - ref).cwiseAbs().maxCoeff() > kBoxTol) {
        throw ValidationError("box corners do not form a parallelepiped");
      }
    }
  }
}

BBox BBox::from_center(const Vec3& center, const Vec3& size, double yaw, int category) {
  const Mat3 r = Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
  std::array<Vec3, 8> corners;
  for (int i = 0; i < 8; ++i) {
    const Vec3 local((i & 1 ? 0.5 : -0.5) * size.x(), (i & 2 ? 0.5 : -0.5) * size.y(),
                     (i & 4 ? 0.5 : -0.5) * size.z());
    corners[static_cast<std::size_t>(i)] = center + r * local;
  }
  return BBox(corners, category);
}

std::array<Vec3, 3> BBox::edges() const {
  return {corners_[1] - corners_[0], corners_[2] - corners_[0], corners_[4] - corners_[0]};
}

BBox BBox::translated(const Vec3& delta) const {
  std::array<Vec3, 8> c = corners_;
  for (auto& v : c) v += delta;
  return BBox(c, category_);
}

BBox BBox::transformed(const Pose& pose) const {
  std::array<Vec3, 8> c = corners_;
  for (auto& v : c) v = pose.apply(v);
  return BBox(c, category_);
}

}  // namespace arl
