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

#include "arl/scene/errors.hpp"
#include "arl/scene/geometry.hpp"
#include "arl/scene/rng.hpp"
#include "arl/scene/types.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <set>

namespace arl {
namespace {

EgoState random_ego(Rng& rng) {
  EgoState e;
  e.ego2glb = Pose::from_matrix(oracle::random_rigid(rng));
  e.li2ego = Pose::from_matrix(oracle::random_rigid(rng, 2.0));
  return e;
}

TEST(Pose, RelativeOfIdenticalStatesIsIdentity) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const EgoState e = random_ego(rng);
    const Pose rel = compose_relative(e, e);
    EXPECT_LE((rel.matrix() - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Pose, RelativeMatchesDenseOracle) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const EgoState a = random_ego(rng), b = random_ego(rng);
    const auto want = oracle::relative(a.ego2glb.matrix(), a.li2ego.matrix(), b.ego2glb.matrix(), b.li2ego.matrix());
    EXPECT_LE(oracle::max_abs_diff(want, compose_relative(a, b).matrix()), 1e-9);
  }
}

TEST(Pose, ApplyThenInverseRestoresCloud) {
  Rng rng(3);
  const PointCloud c = oracle::random_cloud(rng, 300, 60.0);
  for (int i = 0; i < 20; ++i) {
    const Pose p = Pose::from_matrix(oracle::random_rigid(rng));
    const PointCloud back = apply_pose(apply_pose(c, p), p.inverse());
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      EXPECT_LE(std::sqrt(oracle::sq_dist(back.points[k], c.points[k])), 1e-9);
      EXPECT_EQ(back.points[k].intensity, c.points[k].intensity);
    }
  }
}

TEST(Pose, RejectsNonRigidMatrices) {
  Mat4 m = Mat4::Identity();
  m(0, 0) = 1.1;
  EXPECT_THROW(Pose::from_matrix(m), ValidationError);
  m = Mat4::Identity();
  m(2, 2) = -1.0;
  EXPECT_THROW(Pose::from_matrix(m), ValidationError);
  m = Mat4::Identity();
  m(3, 0) = 0.5;
  EXPECT_THROW(Pose::from_matrix(m), ValidationError);
  m = Mat4::Identity();
  m(0, 3) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Pose::from_matrix(m), ValidationError);
  const std::vector<double> short_list(15, 0.0);
  EXPECT_THROW(Pose::from_row_major(short_list), ValidationError);
}

TEST(Pose, SnapsNearlyOrthonormalRotation) {
  Mat4 m = Pose::rotation_z(0.3).matrix();
  m(0, 1) += 1e-8;
  const Pose p = Pose::from_matrix(m);
  const Mat3 r = p.rotation();
  EXPECT_LE((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pose, RowMajorRoundTrip) {
  Rng rng(4);
  const Pose p = Pose::from_matrix(oracle::random_rigid(rng));
  const auto v = p.row_major();
  EXPECT_EQ(v[3], p.matrix()(0, 3));
  EXPECT_EQ(v[4], p.matrix()(1, 0));
  EXPECT_EQ(Pose::from_row_major(v).matrix(), p.matrix());
}

TEST(Pose, RotationOnlyDropsTranslation) {
  const Pose p = Pose::translation(1, 2, 3) * Pose::rotation_z(0.7);
  const Pose r = rotation_only(p);
  EXPECT_EQ(r.translation(), Vec3::Zero());
  EXPECT_EQ(r.rotation(), p.rotation());
}

TEST(PointCloud, ValidateRejectsBadPoints) {
  PointCloud c;
  c.points.push_back({0, 0, 0, 0.5});
  EXPECT_NO_THROW(c.validate());
  c.points.push_back({0, std::numeric_limits<double>::infinity(), 0, 0.5});
  EXPECT_THROW(c.validate(), ValidationError);
  c.points.back() = {0, 0, 0, 1.5};
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Box, CornersFollowBitLayout) {
  const BBox b = BBox::from_center(Vec3(1, 2, 3), Vec3(4, 2, 1), 0.0, 2);
  EXPECT_EQ(b.category(), 2);
  EXPECT_NEAR(b.corners()[0].x(), -1.0, 1e-12);
  EXPECT_NEAR(b.corners()[1].x(), 3.0, 1e-12);
  EXPECT_NEAR(b.corners()[2].y(), 3.0, 1e-12);
  EXPECT_NEAR(b.corners()[4].z(), 3.5, 1e-12);
  EXPECT_LE((box_center(b) - Vec3(1, 2, 3)).norm(), 1e-12);
}

TEST(Box, RejectsNonParallelepiped) {
  auto corners = BBox::from_center(Vec3::Zero(), Vec3::Ones(), 0.0, 0).corners();
  corners[7] += Vec3(0.3, 0, 0);
  EXPECT_THROW(BBox(corners, 0), ValidationError);
  EXPECT_THROW(BBox::from_center(Vec3::Zero(), Vec3::Ones(), 0.0, -1), ValidationError);
}

TEST(Box, DegenerateBoxRejectedByContainment) {
  const BBox flat = BBox::from_center(Vec3::Zero(), Vec3(1, 1, 0), 0.0, 0);
  PointCloud c;
  c.points.push_back({0, 0, 0, 0});
  EXPECT_THROW(points_in_box(c, flat), ValidationError);
}

TEST(Box, ContainmentIsBoundaryInclusive) {
  const BBox b = BBox::from_center(Vec3::Zero(), Vec3(2, 2, 2), 0.0, 0);
  EXPECT_TRUE(box_contains(b, Vec3(1, 1, 1)));
  EXPECT_TRUE(box_contains(b, Vec3(-1, 0, 0)));
  EXPECT_FALSE(box_contains(b, Vec3(1.0 + 1e-6, 0, 0)));
}

TEST(Box, RotatedContainment) {
  const BBox b = BBox::from_center(Vec3(10, 0, 1), Vec3(4, 1, 2), std::numbers::pi / 2, 0);
  EXPECT_TRUE(box_contains(b, Vec3(10, 1.9, 1)));
  EXPECT_FALSE(box_contains(b, Vec3(11.9, 0, 1)));
}

TEST(Box, PointsInBoxPartitionsIndices) {
  Rng rng(5);
  const PointCloud c = oracle::random_cloud(rng, 2000, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const BBox b = BBox::from_center(Vec3(rng.uniform(-3, 3), rng.uniform(-3, 3), 0), Vec3(3, 2, 1.5),
                                     rng.uniform(-3, 3), 0);
    const BoxSelection sel = points_in_box(c, b);
    ASSERT_EQ(sel.indices.size(), sel.inside.size());
    std::set<std::size_t> in(sel.indices.begin(), sel.indices.end());
    EXPECT_EQ(in.size(), sel.indices.size());
    EXPECT_TRUE(std::is_sorted(sel.indices.begin(), sel.indices.end()));
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(in.count(i) == 1, box_contains(b, c.points[i].xyz()));
    }
  }
}

TEST(Box, BottomFaceIsAFaceOfTheBox) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Pose p = Pose::from_matrix(oracle::random_rigid(rng, 5.0));
    const BBox b = BBox::from_center(Vec3::Zero(), Vec3(3, 2, 1), 0.4, 0).transformed(p);
    const auto idx = bottom_face_indices(b);
    std::set<int> s(idx.begin(), idx.end());
    ASSERT_EQ(s.size(), 4u);
    // A face of the parallelepiped: the four corners share one bit value.
    bool face = false;
    for (int bit = 0; bit < 3; ++bit) {
      for (int val = 0; val < 2; ++val) {
        bool all = true;
        for (int k : idx) all = all && (((k >> bit) & 1) == val);
        face = face || all;
      }
    }
    EXPECT_TRUE(face);
    // Perimeter order: consecutive corners differ in exactly one bit.
    for (int k = 0; k < 4; ++k) {
      const int x = idx[static_cast<std::size_t>(k)] ^ idx[static_cast<std::size_t>((k + 1) % 4)];
      EXPECT_EQ(__builtin_popcount(static_cast<unsigned>(x)), 1);
    }
    double face_z = 0.0, all_z = 0.0;
    for (int k : idx) face_z += b.corners()[static_cast<std::size_t>(k)].z() / 4;
    for (const auto& c : b.corners()) all_z += c.z() / 8;
    EXPECT_LE(face_z, all_z + 1e-12);
  }
}

TEST(Rng, MixSeedSeparatesStreams) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  Rng a(9), b(9);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.normal(), b.normal());
}

}  // namespace
}  // namespace arl
