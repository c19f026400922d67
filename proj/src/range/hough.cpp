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

#include "arl/range/hough.hpp"

#include "arl/scene/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arl {

namespace {

struct Sample {
  double rho;
  double z;
};

class Accumulator {
 public:
  explicit Accumulator(const HoughBins& bins)
      : bins_(bins), votes_(static_cast<std::size_t>(bins.height_bins * bins.elev_bins), 0.0) {}

  double height_center(int hb) const { return bins_.height_lo + (hb + 0.5) * bins_.height_width(); }

  int elev_bin(double phi) const {
    const double f = (phi - bins_.elev_lo) / bins_.elev_width();
    if (!(f >= 0.0) || f >= bins_.elev_bins) return -1;
    return static_cast<int>(f);
  }

  void vote(const Sample& s) {
    for (int hb = 0; hb < bins_.height_bins; ++hb) {
      const int eb = elev_bin(std::atan2(s.z - height_center(hb), s.rho));
      if (eb >= 0) votes_[cell(hb, eb)] += 1.0;
    }
  }

  // Greedy non-overlapping 3-bin elevation peaks of one height column.
  std::vector<std::pair<double, int>> column_peaks(int hb, int count) const {
    std::vector<double> smooth(static_cast<std::size_t>(bins_.elev_bins), 0.0);
    for (int eb = 0; eb < bins_.elev_bins; ++eb) {
      for (int de = -1; de <= 1; ++de) {
        const int e = eb + de;
        if (e >= 0 && e < bins_.elev_bins) smooth[static_cast<std::size_t>(eb)] += votes_[cell(hb, e)];
      }
    }
    std::vector<char> taken(smooth.size(), 0);
    std::vector<std::pair<double, int>> peaks;
    for (int k = 0; k < count; ++k) {
      int arg = -1;
      for (int eb = 0; eb < bins_.elev_bins; ++eb) {
        if (!taken[static_cast<std::size_t>(eb)] && smooth[static_cast<std::size_t>(eb)] > 0.0 &&
            (arg < 0 || smooth[static_cast<std::size_t>(eb)] > smooth[static_cast<std::size_t>(arg)])) {
          arg = eb;
        }
      }
      if (arg < 0) break;
      peaks.emplace_back(smooth[static_cast<std::size_t>(arg)], arg);
      for (int de = -2; de <= 2; ++de) {
        const int e = arg + de;
        if (e >= 0 && e < bins_.elev_bins) taken[static_cast<std::size_t>(e)] = 1;
      }
    }
    return peaks;
  }

  double elev_center(int eb) const { return bins_.elev_lo + (eb + 0.5) * bins_.elev_width(); }

  // Strongest 3x3-smoothed cell with height bin in [hb_lo, hb_hi]; false
  // when nothing voted there.
  bool peak(int hb_lo, int hb_hi, int& hb_out, int& eb_out) const {
    double best = 0.0;
    for (int hb = std::max(hb_lo, 0); hb <= std::min(hb_hi, bins_.height_bins - 1); ++hb) {
      for (int eb = 0; eb < bins_.elev_bins; ++eb) {
        double acc = 0.0;
        for (int dh = -1; dh <= 1; ++dh) {
          for (int de = -1; de <= 1; ++de) {
            const int h = hb + dh, e = eb + de;
            if (h >= 0 && h < bins_.height_bins && e >= 0 && e < bins_.elev_bins) acc += votes_[cell(h, e)];
          }
        }
        if (acc > best) {
          best = acc;
          hb_out = hb;
          eb_out = eb;
        }
      }
    }
    return best > 0.0;
  }

 private:
  std::size_t cell(int hb, int eb) const { return static_cast<std::size_t>(hb * bins_.elev_bins + eb); }

  HoughBins bins_;
  std::vector<double> votes_;
};

// Least-squares line z = h + rho * tan(phi) through the samples of one beam.
// Fails when the samples sit at (nearly) a single range, which leaves the
// intercept unconstrained.
bool fit_beam_line(const std::vector<Sample>& pts, double& h, double& phi) {
  if (pts.size() < 3) return false;
  double mr = 0.0, mz = 0.0;
  for (const auto& s : pts) {
    mr += s.rho;
    mz += s.z;
  }
  mr /= static_cast<double>(pts.size());
  mz /= static_cast<double>(pts.size());
  double srr = 0.0, srz = 0.0;
  for (const auto& s : pts) {
    srr += (s.rho - mr) * (s.rho - mr);
    srz += (s.rho - mr) * (s.z - mz);
  }
  if (srr / static_cast<double>(pts.size()) < 0.0625) return false;
  const double slope = srz / srr;
  h = mz - slope * mr;
  phi = std::atan(slope);
  return true;
}

double ray_error(const Sample& s, double h, double phi) { return std::abs(std::atan2(s.z - h, s.rho) - phi); }

// Line fit with two trimming passes against samples far off the current ray.
bool fit_beam(const std::vector<Sample>& band, double& h, double& phi) {
  std::vector<Sample> keep = band;
  for (int pass = 0; pass < 3; ++pass) {
    if (!fit_beam_line(keep, h, phi)) return false;
    std::vector<double> err;
    for (const auto& s : keep) err.push_back(ray_error(s, h, phi));
    std::vector<double> sorted = err;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double tol = std::max(3.0 * sorted[sorted.size() / 2], 1e-4);
    std::vector<Sample> next;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (err[i] <= tol) next.push_back(keep[i]);
    }
    if (next.size() == keep.size()) break;
    keep = std::move(next);
  }
  return true;
}

}  // namespace

BeamTable hough_calibrate(const std::vector<PointCloud>& clouds, int rows, const HoughBins& bins) {
  if (clouds.empty()) throw ValidationError("hough_calibrate needs at least one cloud");
  if (rows < 1) throw ValidationError("hough_calibrate needs rows >= 1");
  if (bins.height_bins < 1 || bins.elev_bins < 1 || !(bins.height_hi > bins.height_lo) ||
      !(bins.elev_hi > bins.elev_lo)) {
    throw ValidationError("invalid Hough accumulator bins");
  }

  std::vector<Sample> samples;
  for (const auto& c : clouds) {
    for (const auto& p : c.points) {
      const double rho = std::hypot(p.x, p.y);
      if (rho > 1e-6) samples.push_back({rho, p.z});
    }
  }

  // Common height: the column whose `rows` strongest elevation peaks hold the
  // most votes. A single-cell peak would lock onto horizontal surfaces, which
  // collapse to (h = z, phi = 0) whatever beam saw them.
  Accumulator global(bins);
  for (const auto& s : samples) global.vote(s);
  int h0_bin = -1;
  double h0_score = -1.0;
  std::vector<std::pair<double, int>> seeds;
  std::size_t most_peaks = 0;
  for (int hb = 0; hb < bins.height_bins; ++hb) {
    auto peaks = global.column_peaks(hb, rows);
    most_peaks = std::max(most_peaks, peaks.size());
    if (static_cast<int>(peaks.size()) < rows) continue;
    double score = 0.0;
    for (const auto& pk : peaks) score += pk.first;
    if (score > h0_score) {
      h0_score = score;
      h0_bin = hb;
      seeds = std::move(peaks);
    }
  }
  if (h0_bin < 0) {
    throw ValidationError("Hough calibration: row " + std::to_string(most_peaks) + " has zero points (" +
                          std::to_string(most_peaks) + " of " + std::to_string(rows) + " beams separable)");
  }
  const double h0 = global.height_center(h0_bin);
  std::vector<double> seed_elev;
  for (const auto& pk : seeds) seed_elev.push_back(global.elev_center(pk.second));
  std::sort(seed_elev.begin(), seed_elev.end());

  std::vector<double> heights(static_cast<std::size_t>(rows), h0), elevations(seed_elev);
  auto assign = [&] {
    std::vector<std::vector<Sample>> out(static_cast<std::size_t>(rows));
    for (const auto& s : samples) {
      std::size_t best = 0;
      double best_err = 0.0;
      for (std::size_t k = 0; k < out.size(); ++k) {
        const double err = ray_error(s, heights[k], elevations[k]);
        if (k == 0 || err < best_err) {
          best_err = err;
          best = k;
        }
      }
      out[best].push_back(s);
    }
    return out;
  };
  std::vector<std::vector<Sample>> bands;
  auto estimate = [&] {
    std::vector<char> fitted(static_cast<std::size_t>(rows), 0);
    double h_sum = 0.0;
    int h_count = 0;
    for (std::size_t j = 0; j < bands.size(); ++j) {
      if (bands[j].empty()) continue;
      double h = heights[j], phi = elevations[j];
      if (fit_beam(bands[j], h, phi)) {
        heights[j] = h;
        elevations[j] = phi;
        fitted[j] = 1;
        h_sum += h;
        ++h_count;
      }
    }
    // Beams that only saw one range (e.g. a ground ring) share the mean height.
    const double h_shared = h_count > 0 ? h_sum / h_count : h0;
    for (std::size_t j = 0; j < bands.size(); ++j) {
      if (fitted[j] || bands[j].empty()) continue;
      heights[j] = h_shared;
      double acc = 0.0;
      for (const auto& s : bands[j]) acc += std::atan2(s.z - h_shared, s.rho);
      elevations[j] = acc / static_cast<double>(bands[j].size());
    }
  };
  // Alternate per-beam fits and nearest-ray assignment until it settles.
  auto refine = [&] {
    bands = assign();
    estimate();
    for (int iter = 0; iter < 8; ++iter) {
      auto next = assign();
      bool same = true;
      for (std::size_t k = 0; k < next.size(); ++k) same = same && next[k].size() == bands[k].size();
      bands = std::move(next);
      estimate();
      if (same) break;
    }
  };
  // Index of a beam whose ray coincides with another's, or -1.
  auto duplicate = [&] {
    for (std::size_t a = 0; a < heights.size(); ++a) {
      if (bands[a].empty()) return static_cast<int>(a);
      for (std::size_t b = a + 1; b < heights.size(); ++b) {
        if (std::abs(elevations[a] - elevations[b]) < bins.elev_width()) {
          return static_cast<int>(bands[a].size() < bands[b].size() ? a : b);
        }
      }
    }
    return -1;
  };

  // Seeds that converge onto one ray leave another beam unexplained. Re-seed
  // the spare at the strongest peak of the points no current ray accounts
  // for, near the common height so horizontal surfaces cannot win.
  refine();
  for (int attempt = 0; attempt < rows; ++attempt) {
    const int spare = duplicate();
    if (spare < 0) break;
    Accumulator rest(bins);
    std::size_t unexplained = 0;
    for (const auto& s : samples) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < heights.size(); ++k) {
        if (static_cast<int>(k) != spare) best = std::min(best, ray_error(s, heights[k], elevations[k]));
      }
      if (best > 3.0 * bins.elev_width()) {
        rest.vote(s);
        ++unexplained;
      }
    }
    int hb = 0, eb = 0;
    if (unexplained < 3 || !rest.peak(h0_bin - 3, h0_bin + 3, hb, eb)) break;
    heights[static_cast<std::size_t>(spare)] = rest.height_center(hb);
    elevations[static_cast<std::size_t>(spare)] = rest.elev_center(eb);
    refine();
  }

  std::vector<std::size_t> order(heights.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return elevations[a] < elevations[b]; });
  std::vector<double> h_sorted, e_sorted;
  int missing = -1, separable = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double e = elevations[order[k]];
    if (bands[order[k]].empty() || (k > 0 && e - e_sorted.back() < bins.elev_width())) {
      if (missing < 0) missing = static_cast<int>(k);
    } else {
      ++separable;
    }
    h_sorted.push_back(heights[order[k]]);
    e_sorted.push_back(e);
  }
  if (missing >= 0) {
    throw ValidationError("Hough calibration: row " + std::to_string(missing) + " has zero points (" +
                          std::to_string(separable) + " of " + std::to_string(rows) + " beams separable)");
  }
  return BeamTable(std::move(h_sorted), std::move(e_sorted));
}

}  // namespace arl
