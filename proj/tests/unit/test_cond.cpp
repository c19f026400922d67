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
#include "arl/cond/features.hpp"
#include "arl/cond/mask_encoder.hpp"
#include "arl/range/codec.hpp"
#include "arl/scene/errors.hpp"
#include "arl/scene/geometry.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <set>

namespace arl::cond {
namespace {

constexpr double kPi = std::numbers::pi;

BeamTable beams16() { return BeamTable::uniform(16, 1.84, -0.45, -0.03); }

TEST(Interpolate, TwoMetreFaceAtUnitStep) {
  const BBox b = BBox::from_center(Vec3(5, 5, 1), Vec3(2, 2, 2), 0.0, 0);
  const PointCloud pts = interpolate_bottom_face(b, 1.0);
  // 4 corners, 1 midpoint per edge, 2 interior samples per diagonal.
  EXPECT_EQ(pts.size(), 12u);
  for (const auto& p : pts.points) {
    EXPECT_GE(p.x, 4.0 - 1e-12);
    EXPECT_LE(p.x, 6.0 + 1e-12);
    EXPECT_GE(p.y, 4.0 - 1e-12);
    EXPECT_LE(p.y, 6.0 + 1e-12);
    EXPECT_NEAR(p.z, 0.0, 1e-12);
  }
}

TEST(Interpolate, CoarseStepKeepsCornersAndDiagonalMidpoints) {
  const BBox b = BBox::from_center(Vec3::Zero(), Vec3(2, 2, 2), 0.0, 0);
  EXPECT_EQ(interpolate_bottom_face(b, 2.5).size(), 6u);
  EXPECT_EQ(interpolate_bottom_face(b, 100.0).size(), 4u);
}

TEST(Interpolate, PointsLieOnBottomPlane) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Pose p = Pose::from_matrix(oracle::random_rigid(rng, 10.0));
    const BBox b = BBox::from_center(Vec3::Zero(), Vec3(rng.uniform(1, 5), rng.uniform(1, 3), 1.5), 0.0, 0)
                       .transformed(p);
    const auto face = bottom_face(b);
    const Vec3 n = (face[1] - face[0]).cross(face[3] - face[0]).normalized();
    for (const auto& q : interpolate_bottom_face(b, 0.2).points) {
      EXPECT_LE(std::abs(n.dot(q.xyz() - face[0])), 1e-9);
    }
  }
}

TEST(Interpolate, RejectsBadStep) {
  const BBox b = BBox::from_center(Vec3::Zero(), Vec3::Ones(), 0.0, 0);
  EXPECT_THROW(interpolate_bottom_face(b, 0.0), ValidationError);
}

TEST(Masks, EmptyAndFarBoxesLeaveZeroStack) {
  EXPECT_EQ(box_masks({}, beams16(), 128, 10).count(), 0u);
  const BBox far = BBox::from_center(Vec3(120, 0, 1), Vec3(4, 2, 2), 0.0, 0);
  EXPECT_EQ(box_masks({far}, beams16(), 128, 10).count(), 0u);
}

TEST(Masks, CategoryOutOfRangeRejected) {
  const BBox b = BBox::from_center(Vec3(10, 0, 1), Vec3(4, 2, 2), 0.0, 10);
  EXPECT_THROW(box_masks({b}, beams16(), 128, 10), ValidationError);
}

TEST(Masks, OnlyOwnCategoryChannel) {
  const BBox b = BBox::from_center(Vec3(10, 0, 1), Vec3(4, 2, 2), 0.0, 3);
  const BoxMaskStack s = box_masks({b}, beams16(), 128, 10);
  EXPECT_GT(s.count(3), 0u);
  EXPECT_EQ(s.count(), s.count(3));
}

TEST(Masks, StraddlingSeamStaysInAnalyticSpan) {
  const int w = 1024;
  // Axis-aligned box ahead of the sensor, centred on theta = 0.
  const BBox b = BBox::from_center(Vec3(8, 0, 0.8), Vec3(3, 2, 1.6), 0.0, 0);
  double th_min = kPi, th_max = -kPi;
  for (const auto& c : bottom_face(b)) {
    const double th = std::atan2(c.y(), c.x());
    th_min = std::min(th_min, th);
    th_max = std::max(th_max, th);
  }
  const int u_lo = azimuth_column(th_max, w), u_hi = azimuth_column(th_min, w);
  ASSERT_LT(u_lo, u_hi);
  const BoxMaskStack s = box_masks({b}, beams16(), w, 1);
  ASSERT_GT(s.count(), 0u);
  for (int v = 0; v < s.height(); ++v) {
    for (int u = 0; u < w; ++u) {
      if (!s.at(0, v, u)) continue;
      EXPECT_GE(u, u_lo);
      EXPECT_LE(u, u_hi);
    }
  }
}

// Columns of the shortest circular arc covering the box's corner azimuths.
std::set<int> column_span(const BBox& b, int w) {
  std::vector<int> cols;
  for (const auto& c : bottom_face(b)) cols.push_back(azimuth_column(std::atan2(c.y(), c.x()), w));
  std::sort(cols.begin(), cols.end());
  int gap = -1, after = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const int next = i + 1 < cols.size() ? cols[i + 1] : cols[0] + w;
    if (next - cols[i] > gap) {
      gap = next - cols[i];
      after = static_cast<int>((i + 1) % cols.size());
    }
  }
  std::set<int> span;
  const int start = cols[static_cast<std::size_t>(after)];
  const int len = w - gap;
  for (int k = 0; k <= len; ++k) span.insert((start + k) % w);
  return span;
}

TEST(Masks, PixelsWithinCornerAzimuthSpan) {
  Rng rng(2);
  const int w = 256;
  for (int trial = 0; trial < 40; ++trial) {
    const double a = rng.uniform(-kPi, kPi), d = rng.uniform(5, 40);
    const BBox b = BBox::from_center(Vec3(d * std::cos(a), d * std::sin(a), 0.8), Vec3(4.5, 1.9, 1.6),
                                     rng.uniform(-kPi, kPi), 0);
    const auto span = column_span(b, w);
    const BoxMaskStack s = box_masks({b}, beams16(), w, 1);
    for (int v = 0; v < s.height(); ++v)
      for (int u = 0; u < w; ++u)
        if (s.at(0, v, u)) EXPECT_TRUE(span.count(u)) << "trial " << trial << " u " << u;
  }
}

TEST(Masks, InvariantToBoxOrder) {
  Rng rng(3);
  std::vector<BBox> boxes;
  for (int k = 0; k < 7; ++k) {
    boxes.push_back(BBox::from_center(Vec3(rng.uniform(-30, 30), rng.uniform(-30, 30), 0.8), Vec3(4, 2, 1.6),
                                      rng.uniform(-3, 3), k % 4));
  }
  const BoxMaskStack a = box_masks(boxes, beams16(), 128, 4);
  std::reverse(boxes.begin(), boxes.end());
  std::rotate(boxes.begin(), boxes.begin() + 3, boxes.end());
  EXPECT_EQ(box_masks(boxes, beams16(), 128, 4), a);
}

TEST(Masks, ChannelImageMirrorsBits) {
  const BBox b = BBox::from_center(Vec3(10, 2, 1), Vec3(4, 2, 2), 0.0, 1);
  const BoxMaskStack s = box_masks({b}, beams16(), 128, 2);
  const RangeImage img = mask_channel_image(s, 1);
  EXPECT_EQ(img.occupied(), s.count(1));
  EXPECT_THROW(mask_channel_image(s, 2), ValidationError);
  const nn::Tensor t = s.to_tensor();
  EXPECT_EQ(t.shape(), (nn::Shape{2, 16, 128}));
  double total = 0.0;
  for (double v : t.values()) total += v;
  EXPECT_EQ(total, static_cast<double>(s.count()));
}

TEST(Features, IdentityAndSpeed) {
  EgoState e;
  const EgoFeature f = ego_feature(e);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);
  EXPECT_EQ(f[2], 0.0);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(f[static_cast<std::size_t>(3 + i)], (i % 5 == 0) ? 1.0 : 0.0);
  e.speed = 5.0;
  EXPECT_EQ(ego_feature(e)[0], 5.0);
  EXPECT_EQ(ego_feature(e)[3], 1.0);
}

TEST(Features, RandomEgoRoundTrip) {
  Rng rng(4);
  EgoState e;
  e.ego2glb = Pose::from_matrix(oracle::random_rigid(rng));
  e.speed = 3.5;
  e.acceleration = -0.5;
  e.steering_angle = 0.1;
  const EgoFeature f = ego_feature(e);
  EXPECT_EQ(f[1], -0.5);
  EXPECT_EQ(f[2], 0.1);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(f[static_cast<std::size_t>(3 + 4 * r + c)], e.ego2glb.matrix()(r, c));
  const Pose p = Pose::from_matrix(oracle::random_rigid(rng));
  EXPECT_EQ(relpose_to_pose(relpose_vector(p)).matrix(), p.matrix());
}

class EncoderTest : public ::testing::Test {
 protected:
  EncoderTest() : rng_(5), enc_(store_, "masks", MaskEncoderConfig{3, 8, 8, 16}, 16, 64, rng_) {}
  nn::ParamStore store_;
  Rng rng_;
  MaskEncoder enc_;
};

TEST_F(EncoderTest, TokenGrid) {
  EXPECT_EQ(enc_.grid_h(), 2);
  EXPECT_EQ(enc_.grid_w(), 8);
  EXPECT_EQ(enc_.tokens(), 16);
  EXPECT_EQ(enc_.encode(BoxMaskStack(3, 16, 64)).shape(), (nn::Shape{16, 16}));
}

TEST_F(EncoderTest, ZeroStackGivesPositionPlusBias) {
  const nn::Tensor out = enc_.encode(BoxMaskStack(3, 16, 64));
  const nn::Tensor& bias = store_.find("masks.patch.bias").value();
  for (int n = 0; n < 16; ++n)
    for (int d = 0; d < 16; ++d) {
      const auto i = static_cast<std::size_t>(n * 16 + d);
      EXPECT_EQ(out[i], enc_.position_codes()[i] + bias[static_cast<std::size_t>(d)]);
    }
}

TEST_F(EncoderTest, PositionCodesDistinguishPatches) {
  std::set<std::vector<double>> rows;
  const auto& pos = enc_.position_codes();
  for (int n = 0; n < enc_.tokens(); ++n) {
    rows.insert(std::vector<double>(pos.values().begin() + n * 16, pos.values().begin() + (n + 1) * 16));
  }
  EXPECT_EQ(rows.size(), static_cast<std::size_t>(enc_.tokens()));
}

TEST_F(EncoderTest, PatchLocality) {
  nn::Tensor x({1, 3, 16, 64});
  x[static_cast<std::size_t>((1 * 16 + 9) * 64 + 20)] = 1.0;  // channel 1, row 9, col 20 -> patch (1, 2)
  const nn::Tensor a = enc_.forward(nn::Var::constant(x)).value();
  x[static_cast<std::size_t>((1 * 16 + 9) * 64 + 20)] = 2.0;
  const nn::Tensor b = enc_.forward(nn::Var::constant(x)).value();
  const int hot = 1 * 8 + 2;
  for (int n = 0; n < 16; ++n) {
    bool changed = false;
    for (int d = 0; d < 16; ++d) {
      const auto i = static_cast<std::size_t>(n * 16 + d);
      changed = changed || a[i] != b[i];
    }
    EXPECT_EQ(changed, n == hot) << "token " << n;
  }
}

TEST_F(EncoderTest, DeterministicAcrossInstances) {
  nn::ParamStore other;
  Rng rng(5);
  MaskEncoder twin(other, "masks", MaskEncoderConfig{3, 8, 8, 16}, 16, 64, rng);
  BoxMaskStack s(3, 16, 64);
  s.set(0, 3, 7);
  s.set(2, 12, 50);
  EXPECT_EQ(enc_.encode(s), twin.encode(s));
  EXPECT_EQ(enc_.encode(s), enc_.encode(s));
}

TEST_F(EncoderTest, LipschitzOnRandomProbes) {
  // A linear patch map: the output change is bounded by the largest
  // per-patch weight norm times the input change.
  const nn::Tensor& w = store_.find("masks.patch.weight").value();
  const std::size_t per_out = w.size() / 16;
  double bound = 0.0;
  for (int d = 0; d < 16; ++d) {
    double s = 0.0;
    for (std::size_t k = 0; k < per_out; ++k) s += w[d * per_out + k] * w[d * per_out + k];
    bound += s;
  }
  bound = std::sqrt(bound);
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    nn::Tensor x = nn::Tensor::randn({1, 3, 16, 64}, rng);
    nn::Tensor y = x;
    nn::Tensor delta = nn::Tensor::randn({1, 3, 16, 64}, rng);
    double dn = 0.0;
    for (double v : delta.values()) dn += v * v;
    dn = std::sqrt(dn);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += delta[i] / dn;  // unit input delta
    const nn::Tensor a = enc_.forward(nn::Var::constant(x)).value();
    const nn::Tensor b = enc_.forward(nn::Var::constant(y)).value();
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) out += (a[i] - b[i]) * (a[i] - b[i]);
    EXPECT_LE(std::sqrt(out), bound * (1 + 1e-9));
  }
}

TEST_F(EncoderTest, ShapeMismatchThrows) {
  EXPECT_THROW(enc_.encode(BoxMaskStack(3, 16, 32)), ShapeError);
  EXPECT_THROW(enc_.encode(BoxMaskStack(2, 16, 64)), ShapeError);
  nn::ParamStore s;
  Rng rng(1);
  EXPECT_THROW(MaskEncoder(s, "m", MaskEncoderConfig{3, 8, 8, 16}, 12, 64, rng), ShapeError);
}

}  // namespace
}  // namespace arl::cond
