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

#include "arl/metrics/chamfer.hpp"
#include "arl/metrics/distribution.hpp"
#include "arl/metrics/ray_errors.hpp"
#include "arl/metrics/report.hpp"
#include "arl/range/codec.hpp"
#include "arl/scene/errors.hpp"
#include "arl/scene/geometry.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace arl::metrics {
namespace {

PointCloud cloud_of(std::initializer_list<Vec3> pts) {
  PointCloud c;
  for (const auto& p : pts) c.points.push_back({p.x(), p.y(), p.z(), 0.0});
  return c;
}

TEST(Chamfer, HandCases) {
  EXPECT_DOUBLE_EQ(chamfer(cloud_of({Vec3::Zero()}), cloud_of({Vec3(1, 0, 0)})), 2.0);
  // From a: 0 and 1 -> means (0 + 1) / 2; from b: 0.
  EXPECT_DOUBLE_EQ(chamfer(cloud_of({Vec3::Zero(), Vec3(0, 0, 1)}), cloud_of({Vec3::Zero()})), 0.5);
  EXPECT_THROW(chamfer(PointCloud{}, cloud_of({Vec3::Zero()})), ValidationError);
  EXPECT_THROW(chamfer(cloud_of({Vec3::Zero()}), PointCloud{}), ValidationError);
}

TEST(Chamfer, MatchesBruteForce) {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const PointCloud a = oracle::random_cloud(rng, 50 + trial * 7, 40.0);
    const PointCloud b = oracle::random_cloud(rng, 30 + trial * 11, trial % 2 ? 40.0 : 5.0);
    EXPECT_NEAR(chamfer(a, b), oracle::brute_chamfer(a, b), 1e-9);
  }
}

TEST(Chamfer, ClustersAndFarOutliers) {
  // Dense blob plus points far outside its grid extent.
  Rng rng(2);
  PointCloud a = oracle::random_cloud(rng, 400, 2.0), b = oracle::random_cloud(rng, 300, 2.0);
  b.points.push_back({500, -300, 4, 0});
  a.points.push_back({-900, 20, 0, 0});
  EXPECT_NEAR(chamfer(a, b), oracle::brute_chamfer(a, b), 1e-9);
}

TEST(Chamfer, SymmetricZeroOnSelfAndRigidInvariant) {
  Rng rng(3);
  const PointCloud a = oracle::random_cloud(rng, 200, 30.0), b = oracle::random_cloud(rng, 150, 30.0);
  EXPECT_EQ(chamfer(a, b), chamfer(b, a));
  EXPECT_EQ(chamfer(a, a), 0.0);
  const Pose p = Pose::from_matrix(oracle::random_rigid(rng));
  EXPECT_NEAR(chamfer(apply_pose(a, p), apply_pose(b, p)), chamfer(a, b), 1e-9);
}

TEST(RayErrors, MatchNaiveLoop) {
  Rng rng(4);
  const BeamTable beams = BeamTable::uniform(16, 1.8, -0.4, 0.1);
  for (int trial = 0; trial < 10; ++trial) {
    const RangeImage gt = project(oracle::random_beam_cloud(rng, beams, 800), beams, 128);
    const RangeImage gen = project(oracle::random_beam_cloud(rng, beams, 600), beams, 128);
    const RayErrors e = ray_errors(gen, gt);
    const oracle::NaiveRayErrors n = oracle::naive_ray_errors(gen, gt);
    EXPECT_EQ(e.rays, n.rays);
    EXPECT_NEAR(e.l1, n.l1, 1e-9);
    EXPECT_NEAR(e.absrel, n.absrel, 1e-9);
  }
}

TEST(RayErrors, OneMetreOffsetAtTenMetres) {
  RangeImage gt(2, 4), gen(2, 4);
  gt.set(0, 1, static_cast<float>(10.0 / 80.0), 0.5f);
  gen.set(0, 1, static_cast<float>(11.0 / 80.0), 0.5f);
  gen.set(1, 3, 0.5f, 0.5f);  // ignored: empty in gt
  const RayErrors e = ray_errors(gen, gt);
  EXPECT_EQ(e.rays, 1u);
  EXPECT_NEAR(e.l1, 1.0, 1e-5);
  EXPECT_NEAR(e.absrel, 10.0, 1e-4);
}

TEST(RayErrors, EmptyGeneratedPixelCountsAsMaxRange) {
  RangeImage gt(1, 2), gen(1, 2);
  gt.set(0, 0, 0.25f, 0.1f);
  const RayErrors e = ray_errors(gen, gt);
  EXPECT_NEAR(e.l1, 60.0, 1e-9);
  EXPECT_THROW(ray_errors(RangeImage(1, 3), gt), ShapeError);
}

BevHistogram hist(std::vector<double> v) {
  const int cells = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  return BevHistogram(cells, std::move(v));
}

double jsd_oracle(const std::vector<double>& p, const std::vector<double>& q) {
  double sp = 0.0, sq = 0.0;
  for (double v : p) sp += v;
  for (double v : q) sq += v;
  std::vector<double> pn, qn, m;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pn.push_back(p[i] / sp);
    qn.push_back(q[i] / sq);
    m.push_back(0.5 * (pn.back() + qn.back()));
  }
  return oracle::entropy_bits(m) - 0.5 * (oracle::entropy_bits(pn) + oracle::entropy_bits(qn));
}

TEST(Jsd, HandCaseAgainstEntropyIdentity) {
  const BevHistogram p = hist({1, 0, 0, 0}), q = hist({0.5, 0.5, 0, 0});
  const double want = jsd_oracle(p.values(), q.values());
  EXPECT_NEAR(want, 0.311278124459133, 1e-12);
  EXPECT_NEAR(jsd(p, q), want, 1e-12);
}

TEST(Jsd, BoundsAndSymmetry) {
  EXPECT_NEAR(jsd(hist({1, 0, 0, 0}), hist({0, 0, 3, 1})), 1.0, 1e-12);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(25), b(25);
    for (auto& v : a) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0, 10);
    for (auto& v : b) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0, 10);
    a[0] = b[1] = 1.0;
    const double d = jsd(hist(a), hist(b));
    EXPECT_NEAR(d, jsd_oracle(a, b), 1e-12);
    EXPECT_NEAR(d, jsd(hist(b), hist(a)), 1e-15);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0 + 1e-12);
    EXPECT_NEAR(jsd(hist(a), hist(a)), 0.0, 1e-12);
  }
}

TEST(Jsd, RejectsEmptyOrMismatched) {
  EXPECT_THROW(jsd(hist({0, 0, 0, 0}), hist({1, 0, 0, 0})), ValidationError);
  EXPECT_THROW(jsd(hist({1, 0, 0, 0}), hist({1, 0, 0, 0, 0, 0, 0, 0, 0})), ShapeError);
}

TEST(Bev, CountsPointsPerCell) {
  const PointCloud c = cloud_of({Vec3(-49.9, -49.9, 0), Vec3(49.9, 49.9, 3), Vec3(0.1, 0.1, 0), Vec3(60, 0, 0)});
  const BevHistogram h = bev_histogram(c, BevConfig{10, 50.0});
  EXPECT_EQ(h.total(), 3.0);
  EXPECT_EQ(h.values()[0], 1.0);
  EXPECT_EQ(h.values()[99], 1.0);
  EXPECT_EQ(h.values()[55], 1.0);
}

// Unbiased estimator written out over explicit index pairs.
double mmd_oracle(const std::vector<BevHistogram>& x, const std::vector<BevHistogram>& y, double sigma) {
  auto k = [sigma](const BevHistogram& a, const BevHistogram& b) {
    const auto an = a.normalized().values(), bn = b.normalized().values();
    double d2 = 0.0;
    for (std::size_t i = 0; i < an.size(); ++i) d2 += (an[i] - bn[i]) * (an[i] - bn[i]);
    return std::exp(-d2 / (2 * sigma * sigma));
  };
  const double m = static_cast<double>(x.size()), n = static_cast<double>(y.size());
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) xx += k(x[i], x[j]);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (i != j) yy += k(y[i], y[j]);
  for (const auto& a : x)
    for (const auto& b : y) xy += k(a, b);
  const double m2 = xx / (m * (m - 1)) + yy / (n * (n - 1)) - 2 * xy / (m * n);
  return std::sqrt(std::max(0.0, m2));
}

std::vector<BevHistogram> random_hists(Rng& rng, int count, double skew) {
  std::vector<BevHistogram> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> v(16);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = rng.uniform(0, 1) + skew * static_cast<double>(k);
    out.push_back(hist(v));
  }
  return out;
}

TEST(Mmd, MatchesPairwiseOracle) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_hists(rng, 5 + trial, 0.0), b = random_hists(rng, 4 + trial, 0.2);
    for (double sigma : {0.05, 0.3, 1.0}) EXPECT_NEAR(mmd(a, b, sigma), mmd_oracle(a, b, sigma), 1e-9);
  }
}

TEST(Mmd, IdenticalPermutedAndNonNegative) {
  Rng rng(7);
  const auto a = random_hists(rng, 8, 0.1);
  EXPECT_LE(mmd(a, a), 1e-9);
  auto b = random_hists(rng, 6, 0.5);
  const double base = mmd(a, b, 0.2);
  std::reverse(b.begin(), b.end());
  EXPECT_NEAR(mmd(a, b, 0.2), base, 1e-12);
  EXPECT_GE(base, 0.0);
  EXPECT_GT(mmd(a, b), 0.0);
  EXPECT_THROW(mmd({a[0]}, b), ValidationError);
}

TEST(Report, HorizonsRowsAndFormats) {
  Rng rng(8);
  std::vector<PointCloud> gen, gt;
  for (int i = 0; i < 4; ++i) {
    gen.push_back(oracle::random_cloud(rng, 50, 10.0));
    gt.push_back(oracle::random_cloud(rng, 50, 10.0));
  }
  const HorizonReport rep = eval_sequence(gen, gt, 0.5);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(rep.rows[i].horizon_s, 0.5 * static_cast<double>(i + 1));
    EXPECT_NEAR(rep.rows[i].cd, oracle::brute_chamfer(gen[i], gt[i]), 1e-9);
    EXPECT_FALSE(rep.rows[i].l1.has_value());
  }
  std::istringstream lines(rep.jsonl());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_DOUBLE_EQ(j.at("horizon").get<double>(), 0.5 * (n + 1));
    EXPECT_TRUE(j.at("l1").is_null());
    ++n;
  }
  EXPECT_EQ(n, 4);
  EXPECT_NE(rep.table().find("2.00"), std::string::npos);
  EXPECT_THROW(eval_sequence(gen, {gt[0]}, 0.5), ValidationError);
  EXPECT_THROW(eval_sequence(gen, gt, 0.0), ValidationError);
}

TEST(Report, RayColumnsAndMean) {
  const BeamTable beams = BeamTable::uniform(8, 1.8, -0.3, 0.05);
  Rng rng(9);
  std::vector<PointCloud> gen, gt;
  std::vector<RangeImage> gi, ti;
  for (int i = 0; i < 3; ++i) {
    gen.push_back(oracle::random_beam_cloud(rng, beams, 300));
    gt.push_back(oracle::random_beam_cloud(rng, beams, 300));
    gi.push_back(project(gen.back(), beams, 64));
    ti.push_back(project(gt.back(), beams, 64));
  }
  const HorizonReport a = eval_sequence(gen, gt, 0.5, &gi, &ti);
  ASSERT_TRUE(a.rows[2].l1.has_value());
  EXPECT_NEAR(*a.rows[2].l1, ray_errors(gi[2], ti[2]).l1, 1e-12);
  const HorizonReport b = eval_sequence(gt, gen, 0.5, &ti, &gi);
  const HorizonReport m = mean_report({a, b});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(m.rows[i].cd, 0.5 * (a.rows[i].cd + b.rows[i].cd), 1e-12);
    EXPECT_NEAR(*m.rows[i].l1, 0.5 * (*a.rows[i].l1 + *b.rows[i].l1), 1e-12);
  }
  EXPECT_THROW(mean_report({}), ValidationError);
}

}  // namespace
}  // namespace arl::metrics
