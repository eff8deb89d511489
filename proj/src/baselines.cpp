// Copyright 2026 The radar_tracker Authors
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

#include "radar/baselines.hpp"

#include <algorithm>
#include <limits>

#include "radar/assoc/hungarian.hpp"
#include "radar/geometry.hpp"

namespace radar::baselines {

double box_iou(const Box& a, const Box& b) {
  if (a.area() <= 0.0 || b.area() <= 0.0) return 0.0;
  const double w = std::min(a.hi.x(), b.hi.x()) - std::max(a.lo.x(), b.lo.x());
  const double h = std::min(a.hi.y(), b.hi.y()) - std::max(a.lo.y(), b.lo.y());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  const double inter = w * h;
  return inter / (a.area() + b.area() - inter);
}

void KalmanTrack::predict(double dt, double process_noise) {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;

  const double q = process_noise * process_noise;
  const double dt2 = dt * dt;
  Eigen::Matrix4d noise = Eigen::Matrix4d::Zero();
  noise(0, 0) = noise(1, 1) = q * dt2 * dt2 / 4.0;
  noise(2, 2) = noise(3, 3) = q * dt2;
  noise(0, 2) = noise(2, 0) = q * dt2 * dt / 2.0;
  noise(1, 3) = noise(3, 1) = q * dt2 * dt / 2.0;

  state = f * state;
  covariance = f * covariance * f.transpose() + noise;
  covariance = 0.5 * (covariance + covariance.transpose());

  const Vec2 size = box.hi - box.lo;
  const Vec2 center(state(0), state(1));
  box.lo = center - 0.5 * size;
  box.hi = center + 0.5 * size;
}

void KalmanTrack::update(const Vec2& measurement, double measurement_noise) {
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Eigen::Matrix2d r =
      Eigen::Matrix2d::Identity() * (measurement_noise * measurement_noise + 1e-9);
  const Eigen::Vector2d innovation = measurement - h * state;
  const Eigen::Matrix2d s = h * covariance * h.transpose() + r;
  const Eigen::Matrix<double, 4, 2> gain = covariance * h.transpose() * s.inverse();
  state += gain * innovation;
  const Eigen::Matrix4d identity = Eigen::Matrix4d::Identity();
  covariance = (identity - gain * h) * covariance;
  covariance = 0.5 * (covariance + covariance.transpose());
}

namespace {

Box bounding_box(const SegmentedScan& scan, const InstanceDescriptor& instance) {
  Box box;
  box.lo = Vec2::Constant(std::numeric_limits<double>::max());
  box.hi = Vec2::Constant(std::numeric_limits<double>::lowest());
  for (int idx : instance.point_indices) {
    const Vec2 p = scan.scan.points[idx].position();
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  }
  return box;
}

double mean_doppler(const SegmentedScan& scan, const InstanceDescriptor& instance) {
  double sum = 0.0;
  for (int idx : instance.point_indices) sum += scan.scan.points[idx].doppler;
  return sum / static_cast<double>(instance.point_indices.size());
}

}  // namespace

std::vector<std::vector<int>> center_doppler_tracker(
    const std::vector<SegmentedScan>& scans, const TrackerConfig& config, double dt) {
  struct CdTrack {
    int id = 0;
    Vec2 predicted = Vec2::Zero();
    int misses = 0;
  };
  std::vector<CdTrack> tracks;
  int next_id = 1;

  std::vector<std::vector<int>> outputs;
  outputs.reserve(scans.size());
  for (const SegmentedScan& seg : scans) {
    const std::vector<InstanceDescriptor> detections = extract_moving_instances(seg, 1);
    const int a = static_cast<int>(tracks.size());
    const int b = static_cast<int>(detections.size());

    std::vector<int> det_track(b, -1);
    if (a > 0 && b > 0) {
      MatX cost(a, b);
      assoc::BoolMat forbidden(a, b);
      for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
          const double d = euclidean_2d(tracks[i].predicted, detections[j].center);
          cost(i, j) = d;
          forbidden(i, j) = d > config.t_d2;
        }
      }
      const assoc::Assignment assignment = assoc::hungarian(cost, forbidden);
      for (const auto& [i, j] : assignment.pairs) det_track[j] = i;
    }

    std::vector<bool> matched(a, false);
    std::vector<int> det_ids(b, 0);
    for (int j = 0; j < b; ++j) {
      const double doppler = mean_doppler(seg, detections[j]);
      const Vec2 center = detections[j].center;
      const double norm = center.norm();
      const Vec2 radial = norm < 1e-9 ? Vec2::Zero() : Vec2(center / norm);
      const Vec2 predicted = center + doppler * dt * radial;
      if (det_track[j] >= 0) {
        CdTrack& track = tracks[det_track[j]];
        matched[det_track[j]] = true;
        track.predicted = predicted;
        track.misses = 0;
        det_ids[j] = track.id;
      } else {
        CdTrack track;
        track.id = next_id++;
        track.predicted = predicted;
        det_ids[j] = track.id;
        tracks.push_back(track);
      }
    }

    std::vector<CdTrack> kept;
    kept.reserve(tracks.size());
    for (int i = 0; i < static_cast<int>(tracks.size()); ++i) {
      if (i < a && !matched[i]) {
        tracks[i].misses += 1;
        if (tracks[i].misses > config.retention) continue;
      }
      kept.push_back(tracks[i]);
    }
    tracks = std::move(kept);

    std::vector<int> point_ids(seg.size(), 0);
    for (int j = 0; j < b; ++j) {
      for (int idx : detections[j].point_indices) point_ids[idx] = det_ids[j];
    }
    outputs.push_back(std::move(point_ids));
  }
  return outputs;
}

std::vector<std::vector<int>> kalman_iou_tracker(
    const std::vector<SegmentedScan>& scans, const TrackerConfig& config, double dt,
    double process_noise, double measurement_noise) {
  struct IouTrack {
    int id = 0;
    KalmanTrack filter;
    int misses = 0;
  };
  std::vector<IouTrack> tracks;
  int next_id = 1;

  std::vector<std::vector<int>> outputs;
  outputs.reserve(scans.size());
  for (const SegmentedScan& seg : scans) {
    const std::vector<InstanceDescriptor> detections = extract_moving_instances(seg, 1);
    const int b = static_cast<int>(detections.size());

    for (IouTrack& track : tracks) track.filter.predict(dt, process_noise);
    const int a = static_cast<int>(tracks.size());

    std::vector<Box> det_boxes(b);
    for (int j = 0; j < b; ++j) det_boxes[j] = bounding_box(seg, detections[j]);

    std::vector<int> det_track(b, -1);
    if (a > 0 && b > 0) {
      MatX cost(a, b);
      assoc::BoolMat forbidden(a, b);
      for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
          const double iou = box_iou(tracks[i].filter.box, det_boxes[j]);
          cost(i, j) = 1.0 - iou;
          forbidden(i, j) = iou <= 0.0;  // the stated single-point failure mode
        }
      }
      const assoc::Assignment assignment = assoc::hungarian(cost, forbidden);
      for (const auto& [i, j] : assignment.pairs) det_track[j] = i;
    }

    std::vector<bool> matched(a, false);
    std::vector<int> det_ids(b, 0);
    for (int j = 0; j < b; ++j) {
      if (det_track[j] >= 0) {
        IouTrack& track = tracks[det_track[j]];
        matched[det_track[j]] = true;
        track.filter.update(det_boxes[j].center(), measurement_noise);
        const Vec2 size = det_boxes[j].hi - det_boxes[j].lo;
        const Vec2 center(track.filter.state(0), track.filter.state(1));
        track.filter.box.lo = center - 0.5 * size;
        track.filter.box.hi = center + 0.5 * size;
        track.misses = 0;
        det_ids[j] = track.id;
      } else {
        IouTrack track;
        track.id = next_id++;
        track.filter.state << det_boxes[j].center().x(), det_boxes[j].center().y(), 0.0,
            0.0;
        track.filter.covariance = Eigen::Matrix4d::Identity();
        track.filter.covariance(2, 2) = track.filter.covariance(3, 3) = 4.0;
        track.filter.box = det_boxes[j];
        det_ids[j] = track.id;
        tracks.push_back(track);
      }
    }

    std::vector<IouTrack> kept;
    kept.reserve(tracks.size());
    for (int i = 0; i < static_cast<int>(tracks.size()); ++i) {
      if (i < a && !matched[i]) {
        tracks[i].misses += 1;
        if (tracks[i].misses > config.retention) continue;
      }
      kept.push_back(tracks[i]);
    }
    tracks = std::move(kept);

    std::vector<int> point_ids(seg.size(), 0);
    for (int j = 0; j < b; ++j) {
      for (int idx : detections[j].point_indices) point_ids[idx] = det_ids[j];
    }
    outputs.push_back(std::move(point_ids));
  }
  return outputs;
}

}  // namespace radar::baselines
