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

#include "arl/range/codec.hpp"

#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace arl {

namespace {
constexpr double kPi = std::numbers::pi;
}

BeamTable::BeamTable(std::vector<double> heights, std::vector<double> elevations)
    : heights_(std::move(heights)), elevations_(std::move(elevations)) {
  if (heights_.empty()) throw ValidationError("beam table needs at least one row");
  if (heights_.size() != elevations_.size()) {
    throw ValidationError("beam table heights/elevations size mismatch");
  }
  for (std::size_t j = 0; j < heights_.size(); ++j) {
    if (!std::isfinite(heights_[j]) || !std::isfinite(elevations_[j])) {
      throw ValidationError("beam table row " + std::to_string(j) + " is not finite");
    }
  }
  if (elevations_.size() > 1) {
    const bool up = elevations_[1] > elevations_[0];
    for (std::size_t j = 1; j < elevations_.size(); ++j) {
      const bool ok = up ? elevations_[j] > elevations_[j - 1] : elevations_[j] < elevations_[j - 1];
      if (!ok) throw ValidationError("beam elevations must be strictly monotonic");
    }
  }
}

BeamTable BeamTable::uniform(int rows, double height, double elev_lo, double elev_hi) {
  std::vector<double> h(static_cast<std::size_t>(rows), height);
  std::vector<double> e(static_cast<std::size_t>(rows));
  for (int j = 0; j < rows; ++j) {
    e[static_cast<std::size_t>(j)] = rows == 1 ? elev_lo : elev_lo + (elev_hi - elev_lo) * j / (rows - 1);
  }
  return BeamTable(std::move(h), std::move(e));
}

double DepthNorm::normalize(double r) const {
  if (scale == DepthScale::kLog) return std::log1p(r) / std::log1p(r_max);
  return r / r_max;
}

double DepthNorm::denormalize(double d) const {
  if (scale == DepthScale::kLog) return std::expm1(d * std::log1p(r_max));
  return d * r_max;
}

RangeImage::RangeImage(int height, int width, DepthNorm norm)
    : height_(height), width_(width), norm_(norm) {
  if (height <= 0 || width <= 0) throw ShapeError("range image dimensions must be positive");
  if (!(norm.r_max > 0.0)) throw ValidationError("r_max must be positive");
  const auto n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  depth_.assign(n, 0.0f);
  intensity_.assign(n, 0.0f);
}

void RangeImage::set(int v, int u, float depth, float intensity) {
  depth_[index(v, u)] = depth;
  intensity_[index(v, u)] = intensity;
}

std::size_t RangeImage::occupied() const {
  return static_cast<std::size_t>(std::count_if(depth_.begin(), depth_.end(), [](float d) { return d > 0.0f; }));
}

bool RangeImage::operator==(const RangeImage& o) const {
  return height_ == o.height_ && width_ == o.width_ && norm_.r_max == o.norm_.r_max &&
         norm_.scale == o.norm_.scale && depth_ == o.depth_ && intensity_ == o.intensity_;
}

int nearest_row(const Vec3& p, const BeamTable& beams) {
  const double rho = std::hypot(p.x(), p.y());
  int best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int j = 0; j < beams.rows(); ++j) {
    const double elev = std::atan2(p.z() - beams.height(j), rho);
    const double err = std::abs(elev - beams.elevation(j));
    if (err < best_err) {
      best_err = err;
      best = j;
    }
  }
  return best;
}

int azimuth_column(double azimuth, int width) {
  const double a = width - ((azimuth + kPi) / (2.0 * kPi)) * width;
  auto u = static_cast<long>(std::floor(a)) % width;
  if (u < 0) u += width;
  return static_cast<int>(u);
}

std::optional<PixelHit> locate(const Vec3& p, const BeamTable& beams, int width) {
  PixelHit hit;
  hit.row = nearest_row(p, beams);
  const double dz = p.z() - beams.height(hit.row);
  hit.range = std::sqrt(p.x() * p.x() + p.y() * p.y() + dz * dz);
  if (!(hit.range > 1e-12)) return std::nullopt;
  hit.azimuth = std::atan2(p.y(), p.x());
  hit.u = azimuth_column(hit.azimuth, width);
  hit.v = beams.rows() - 1 - hit.row;
  return hit;
}

RangeImage project(const PointCloud& cloud, const BeamTable& beams, int width, DepthNorm norm) {
  RangeImage img(beams.rows(), width, norm);
  std::vector<double> best(static_cast<std::size_t>(beams.rows()) * static_cast<std::size_t>(width),
                           std::numeric_limits<double>::infinity());
  for (const Point& p : cloud.points) {
    const auto hit = locate(p.xyz(), beams, width);
    if (!hit) continue;
    const auto idx = static_cast<std::size_t>(hit->v) * static_cast<std::size_t>(width) + static_cast<std::size_t>(hit->u);
    if (hit->range < best[idx]) {
      best[idx] = hit->range;
      const double d = std::clamp(norm.normalize(hit->range), 0.0, 1.0);
      img.set(hit->v, hit->u, static_cast<float>(d), static_cast<float>(std::clamp(p.intensity, 0.0, 1.0)));
    }
  }
  return img;
}

PointCloud unproject(const RangeImage& img, const BeamTable& beams) {
  if (img.height() != beams.rows()) {
    throw ShapeError("range image has " + std::to_string(img.height()) + " rows, beam table " +
                     std::to_string(beams.rows()));
  }
  PointCloud cloud;
  const int w = img.width();
  for (int v = 0; v < img.height(); ++v) {
    const int j = img.height() - 1 - v;
    const double phi = beams.elevation(j);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    for (int u = 0; u < w; ++u) {
      const float d = img.depth(v, u);
      if (!(d > 0.0f)) continue;
      const double r = img.norm().denormalize(static_cast<double>(d));
      const double theta = kPi - 2.0 * kPi * (u + 0.5) / w;
      cloud.points.push_back({r * cphi * std::cos(theta), r * cphi * std::sin(theta),
                              r * sphi + beams.height(j), static_cast<double>(img.intensity(v, u))});
    }
  }
  return cloud;
}

RangeImage merge_nearest(const RangeImage& a, const RangeImage& b) {
  if (a.height() != b.height() || a.width() != b.width()) throw ShapeError("merge of differently sized images");
  RangeImage out = a;
  for (int v = 0; v < a.height(); ++v) {
    for (int u = 0; u < a.width(); ++u) {
      const float db = b.depth(v, u);
      if (!(db > 0.0f)) continue;
      const float da = a.depth(v, u);
      if (!(da > 0.0f) || db < da) out.set(v, u, db, b.intensity(v, u));
    }
  }
  return out;
}

}  // namespace arl
