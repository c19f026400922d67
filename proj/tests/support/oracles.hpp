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

// Reference implementations used only by tests. Each one is a direct,
// unoptimized restatement of the quantity under test.

#include "arl/range/beam_table.hpp"
#include "arl/range/range_image.hpp"
#include "arl/scene/rng.hpp"
#include "arl/scene/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace arl::oracle {

using Dense4 = std::array<std::array<double, 4>, 4>;

inline Dense4 dense(const Mat4& m) {
  Dense4 d{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) d[r][c] = m(r, c);
  return d;
}

inline Dense4 matmul(const Dense4& a, const Dense4& b) {
  Dense4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a[r][k] * b[k][c];
      out[r][c] = s;
    }
  return out;
}

// Gauss-Jordan elimination with partial pivoting on a general 4x4.
inline Dense4 invert(Dense4 a) {
  Dense4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    const double d = a[col][col];
    for (int c = 0; c < 4; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (int c = 0; c < 4; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

// (ego2glb_cur * li2ego_cur)^-1 * (ego2glb_prev * li2ego_prev) with plain arrays.
inline Dense4 relative(const Mat4& ego_prev, const Mat4& li_prev, const Mat4& ego_cur, const Mat4& li_cur) {
  const Dense4 prev = matmul(dense(ego_prev), dense(li_prev));
  const Dense4 cur = matmul(dense(ego_cur), dense(li_cur));
  return matmul(invert(cur), prev);
}

inline double max_abs_diff(const Dense4& a, const Mat4& b) {
  double m = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(a[r][c] - b(r, c)));
  return m;
}

// Uniform rotation from a random unit quaternion plus a translation in [-t, t]^3.
inline Mat4 random_rigid(Rng& rng, double t = 100.0) {
  Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = q.toRotationMatrix();
  m.topRightCorner<3, 1>() = Vec3(rng.uniform(-t, t), rng.uniform(-t, t), rng.uniform(-t, t));
  return m;
}

inline double sq_dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double brute_directed(const PointCloud& from, const PointCloud& to) {
  double sum = 0.0;
  for (const auto& p : from.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to.points) best = std::min(best, sq_dist(p, q));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

inline double brute_chamfer(const PointCloud& a, const PointCloud& b) {
  return brute_directed(a, b) + brute_directed(b, a);
}

struct NaiveRayErrors {
  double l1 = 0.0;
  double absrel = 0.0;
  std::size_t rays = 0;
};

// Pixel-by-pixel with the depth scale written out for the linear case.
inline NaiveRayErrors naive_ray_errors(const RangeImage& gen, const RangeImage& gt) {
  NaiveRayErrors out;
  const double r_max = gt.norm().r_max;
  double abs_sum = 0.0, rel_sum = 0.0;
  for (int v = 0; v < gt.height(); ++v) {
    for (int u = 0; u < gt.width(); ++u) {
      if (gt.depth(v, u) <= 0.0f) continue;
      const double r = static_cast<double>(gt.depth(v, u)) * r_max;
      const double rg = gen.depth(v, u) > 0.0f ? static_cast<double>(gen.depth(v, u)) * r_max : r_max;
      abs_sum += std::abs(rg - r);
      rel_sum += std::abs(rg - r) / r;
      ++out.rays;
    }
  }
  out.l1 = abs_sum / static_cast<double>(out.rays);
  out.absrel = 100.0 * rel_sum / static_cast<double>(out.rays);
  return out;
}

inline double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

// Random points placed exactly on the beam rays at arbitrary azimuths.
inline PointCloud random_beam_cloud(Rng& rng, const BeamTable& beams, int points, double r_lo = 1.0,
                                    double r_hi = 79.0) {
  PointCloud c;
  for (int i = 0; i < points; ++i) {
    const int j = rng.uniform_int(0, beams.rows() - 1);
    const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double r = rng.uniform(r_lo, r_hi);
    const double phi = beams.elevation(j);
    c.points.push_back({r * std::cos(phi) * std::cos(theta), r * std::cos(phi) * std::sin(theta),
                        beams.height(j) + r * std::sin(phi), rng.uniform()});
  }
  return c;
}

inline PointCloud random_cloud(Rng& rng, int n, double extent) {
  PointCloud c;
  for (int i = 0; i < n; ++i) {
    c.points.push_back(
        {rng.uniform(-extent, extent), rng.uniform(-extent, extent), rng.uniform(-extent / 10, extent / 10), 0.5});
  }
  return c;
}

}  // namespace arl::oracle
