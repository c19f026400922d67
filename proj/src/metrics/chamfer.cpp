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

#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace arl::metrics {

namespace {

class PlanarGrid {
 public:
  explicit PlanarGrid(const PointCloud& cloud) : pts_(cloud.points) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (const auto& p : pts_) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const double ex = x1 - x0;
    const double ey = y1 - y0;
    const double n = static_cast<double>(pts_.size());
    cell_ = std::max({std::sqrt(std::max(ex * ey, 1e-12) / n) * 1.5, std::max(ex, ey) / 2048.0, 1e-6});
    ox_ = x0;
    oy_ = y0;
    nx_ = static_cast<int>(std::floor(ex / cell_)) + 1;
    ny_ = static_cast<int>(std::floor(ey / cell_)) + 1;
    start_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_) + 1, 0);
    std::vector<std::size_t> cell_of(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      cell_of[i] = flat(cx(pts_[i].x), cy(pts_[i].y));
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    order_.resize(pts_.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts_.size(); ++i) order_[fill[cell_of[i]]++] = i;
  }

  double nearest_sq(const Point& q) const {
    const int qx = static_cast<int>(std::floor((q.x - ox_) / cell_));
    const int qy = static_cast<int>(std::floor((q.y - oy_) / cell_));
    // First ring that touches the grid, and the ring covering all of it.
    const int k0 = std::max({0, -qx, qx - (nx_ - 1), -qy, qy - (ny_ - 1)});
    const int kmax = std::max({std::abs(qx), std::abs(qx - (nx_ - 1)), std::abs(qy), std::abs(qy - (ny_ - 1))});
    double best = std::numeric_limits<double>::infinity();
    for (int k = k0; k <= kmax; ++k) {
      const int xa = std::max(0, qx - k), xb = std::min(nx_ - 1, qx + k);
      const int ya = std::max(0, qy - k), yb = std::min(ny_ - 1, qy + k);
      for (int x = xa; x <= xb; ++x) {
        const bool edge_x = std::abs(x - qx) == k;
        for (int y = ya; y <= yb; ++y) {
          if (!edge_x && std::abs(y - qy) != k) continue;
          const std::size_t c = flat(x, y);
          for (std::size_t s = start_[c]; s < start_[c + 1]; ++s) {
            const Point& p = pts_[order_[s]];
            const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
            best = std::min(best, dx * dx + dy * dy + dz * dz);
          }
        }
      }
      // Unvisited cells lie at least k cells away in x or y.
      const double reach = static_cast<double>(k) * cell_;
      if (best <= reach * reach) break;
    }
    return best;
  }

 private:
  int cx(double x) const { return std::clamp(static_cast<int>(std::floor((x - ox_) / cell_)), 0, nx_ - 1); }
  int cy(double y) const { return std::clamp(static_cast<int>(std::floor((y - oy_) / cell_)), 0, ny_ - 1); }
  std::size_t flat(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(y);
  }

  const std::vector<Point>& pts_;
  double cell_ = 1.0, ox_ = 0.0, oy_ = 0.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> order_;
};

}  // namespace

double directed_chamfer(const PointCloud& from, const PointCloud& to) {
  if (from.empty() || to.empty()) throw ValidationError("chamfer needs non-empty clouds");
  const PlanarGrid grid(to);
  double sum = 0.0;
  for (const auto& p : from.points) sum += grid.nearest_sq(p);
  return sum / static_cast<double>(from.size());
}

double chamfer(const PointCloud& a, const PointCloud& b) { return directed_chamfer(a, b) + directed_chamfer(b, a); }

}  // namespace arl::metrics
