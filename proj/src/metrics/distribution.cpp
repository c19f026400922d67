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

#include "arl/metrics/distribution.hpp"

#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arl::metrics {

BevHistogram::BevHistogram(int cells, std::vector<double> counts) : cells_(cells), values_(std::move(counts)) {
  if (cells <= 0 || values_.size() != static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells)) {
    throw ShapeError("histogram size does not match its grid");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("histogram entries must be finite and >= 0");
  }
}

double BevHistogram::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

BevHistogram BevHistogram::normalized() const {
  const double t = total();
  if (!(t > 0.0)) throw ValidationError("cannot normalize an empty histogram");
  std::vector<double> v(values_);
  for (auto& x : v) x /= t;
  return BevHistogram(cells_, std::move(v));
}

void BevHistogram::accumulate(const BevHistogram& other) {
  if (other.cells_ != cells_) throw ShapeError("histogram grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
}

BevHistogram bev_histogram(const PointCloud& cloud, const BevConfig& cfg) {
  if (cfg.cells <= 0 || !(cfg.half_extent > 0.0)) throw ValidationError("invalid BEV grid");
  std::vector<double> counts(static_cast<std::size_t>(cfg.cells) * static_cast<std::size_t>(cfg.cells), 0.0);
  const double cell = 2.0 * cfg.half_extent / cfg.cells;
  for (const auto& p : cloud.points) {
    const double fx = std::floor((p.x + cfg.half_extent) / cell);
    const double fy = std::floor((p.y + cfg.half_extent) / cell);
    if (fx < 0 || fy < 0 || fx >= cfg.cells || fy >= cfg.cells) continue;
    counts[static_cast<std::size_t>(fx) * static_cast<std::size_t>(cfg.cells) + static_cast<std::size_t>(fy)] += 1.0;
  }
  return BevHistogram(cfg.cells, std::move(counts));
}

double jsd(const BevHistogram& p, const BevHistogram& q) {
  if (p.cells() != q.cells()) throw ShapeError("JSD needs histograms of equal shape");
  const BevHistogram pn = p.normalized();
  const BevHistogram qn = q.normalized();
  double sum = 0.0;
  for (std::size_t i = 0; i < pn.values().size(); ++i) {
    const double a = pn.values()[i];
    const double b = qn.values()[i];
    const double m = 0.5 * (a + b);
    if (a > 0.0) sum += 0.5 * a * std::log2(a / m);
    if (b > 0.0) sum += 0.5 * b * std::log2(b / m);
  }
  return std::clamp(sum, 0.0, 1.0);
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

double mmd(const std::vector<BevHistogram>& gen, const std::vector<BevHistogram>& real, double sigma) {
  if (gen.size() < 2 || real.size() < 2) throw ValidationError("MMD needs at least two samples per list");
  std::vector<std::vector<double>> xs, ys;
  for (const auto& h : gen) xs.push_back(h.normalized().values());
  for (const auto& h : real) ys.push_back(h.normalized().values());
  const std::size_t dim = xs.front().size();
  for (const auto& v : xs)
    if (v.size() != dim) throw ShapeError("MMD histograms differ in shape");
  for (const auto& v : ys)
    if (v.size() != dim) throw ShapeError("MMD histograms differ in shape");

  if (!(sigma > 0.0)) {
    std::vector<std::vector<double>> pooled(xs);
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    std::vector<double> dists;
    for (std::size_t i = 0; i < pooled.size(); ++i)
      for (std::size_t j = i + 1; j < pooled.size(); ++j) dists.push_back(std::sqrt(sq_dist(pooled[i], pooled[j])));
    std::sort(dists.begin(), dists.end());
    const std::size_t n = dists.size();
    const double med = n % 2 == 1 ? dists[n / 2] : 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
    sigma = med > 0.0 ? med : 1.0;
  }
  const double denom = 2.0 * sigma * sigma;
  auto k = [denom](const std::vector<double>& a, const std::vector<double>& b) {
    return std::exp(-sq_dist(a, b) / denom);
  };
  auto within = [&](const std::vector<std::vector<double>>& s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) sum += 2.0 * k(s[i], s[j]);
    const double m = static_cast<double>(s.size());
    return sum / (m * (m - 1.0));
  };
  double cross = 0.0;
  for (const auto& x : xs)
    for (const auto& y : ys) cross += k(x, y);
  cross /= static_cast<double>(xs.size()) * static_cast<double>(ys.size());
  const double mmd2 = within(xs) + within(ys) - 2.0 * cross;
  return std::sqrt(std::max(0.0, mmd2));
}

}  // namespace arl::metrics
