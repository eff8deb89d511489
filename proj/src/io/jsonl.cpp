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

#include "radar/io/jsonl.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

namespace radar::io {

using nlohmann::json;

SequenceLabels StoredSequence::labels() const {
  SequenceLabels out;
  out.reserve(scans.size());
  for (const StoredScan& s : scans) out.push_back({s.seg.semantics, s.track_ids});
  return out;
}

std::vector<SegmentedScan> StoredSequence::segmentation() const {
  std::vector<SegmentedScan> out;
  out.reserve(scans.size());
  for (const StoredScan& s : scans) out.push_back(s.seg);
  return out;
}

namespace {

// A point's temporal offset has a target only if its track continues into
// the next scan; recomputed on read so files need no extra column.
void derive_temporal_validity(StoredSequence& sequence) {
  for (std::size_t t = 0; t < sequence.scans.size(); ++t) {
    StoredScan& scan = sequence.scans[t];
    scan.temporal_valid.assign(scan.seg.size(), 0);
    if (t + 1 >= sequence.scans.size()) continue;
    std::set<int> next_tracks;
    for (int id : sequence.scans[t + 1].track_ids)
      if (id > 0) next_tracks.insert(id);
    for (int i = 0; i < scan.seg.size(); ++i) {
      if (scan.track_ids[i] > 0 && next_tracks.count(scan.track_ids[i])) {
        scan.temporal_valid[i] = 1;
      }
    }
  }
}

}  // namespace

std::vector<StoredSequence> read_sequences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scan file: " + path);

  std::map<std::string, std::map<int, std::pair<int, StoredScan>>> by_seq;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (row.contains("header")) continue;

    try {
      const std::string seq = row.at("seq").get<std::string>();
      const int t = row.at("t").get<int>();
      if (by_seq[seq].count(t)) {
        throw ParseError(line_no, "duplicate (seq, t) = (" + seq + ", " +
                                      std::to_string(t) + ")");
      }
      StoredScan scan;
      scan.seg.scan.sequence_id = seq;
      scan.seg.scan.t = t;
      const json& points = row.at("points");
      const int n = static_cast<int>(points.size());
      scan.seg.offsets = MatX2::Zero(n, 2);
      scan.seg.temporal_offsets = MatX2::Zero(n, 2);
      for (const json& jp : points) {
        Point p;
        p.x = jp.at("x").get<double>();
        p.y = jp.at("y").get<double>();
        p.doppler = jp.at("v").get<double>();
        p.rcs = jp.at("rcs").get<double>();
        const int i = scan.seg.scan.size();
        scan.seg.scan.points.push_back(p);
        scan.seg.semantics.push_back(jp.at("sem").get<int>() != 0 ? Semantic::kMoving
                                                                  : Semantic::kStatic);
        scan.seg.instance_ids.push_back(jp.at("inst").get<int>());
        scan.track_ids.push_back(jp.value("track", 0));
        if (jp.contains("ox")) {
          scan.seg.offsets(i, 0) = jp.at("ox").get<double>();
          scan.seg.offsets(i, 1) = jp.at("oy").get<double>();
        }
        if (jp.contains("otx")) {
          scan.seg.temporal_offsets(i, 0) = jp.at("otx").get<double>();
          scan.seg.temporal_offsets(i, 1) = jp.at("oty").get<double>();
        }
      }
      if (!scan.seg.consistent()) {
        throw ParseError(line_no, "scan violates segmentation invariants");
      }
      by_seq[seq].emplace(t, std::make_pair(line_no, std::move(scan)));
    } catch (const ParseError&) {
      throw;
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("bad row: ") + e.what());
    }
  }

  std::vector<StoredSequence> sequences;
  sequences.reserve(by_seq.size());
  for (auto& [id, scans] : by_seq) {
    StoredSequence sequence;
    sequence.id = id;
    for (auto& [t, entry] : scans) sequence.scans.push_back(std::move(entry.second));
    derive_temporal_validity(sequence);
    sequences.push_back(std::move(sequence));
  }
  return sequences;
}

void write_sequences(const std::string& path,
                     const std::vector<StoredSequence>& sequences,
                     const std::string& fingerprint, bool include_offsets) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);

  json header;
  header["header"] = {{"format", "radar-scans-v1"}, {"fingerprint", fingerprint}};
  out << header.dump() << "\n";

  std::vector<const StoredSequence*> ordered;
  for (const StoredSequence& s : sequences) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const StoredSequence* a, const StoredSequence* b) { return a->id < b->id; });

  for (const StoredSequence* sequence : ordered) {
    for (const StoredScan& scan : sequence->scans) {
      json row;
      row["seq"] = sequence->id;
      row["t"] = scan.seg.scan.t;
      json points = json::array();
      for (int i = 0; i < scan.seg.size(); ++i) {
        const Point& p = scan.seg.scan.points[i];
        json jp;
        jp["x"] = p.x;
        jp["y"] = p.y;
        jp["v"] = p.doppler;
        jp["rcs"] = p.rcs;
        jp["sem"] = scan.seg.semantics[i] == Semantic::kMoving ? 1 : 0;
        jp["inst"] = scan.seg.instance_ids[i];
        jp["track"] = i < static_cast<int>(scan.track_ids.size()) ? scan.track_ids[i] : 0;
        if (include_offsets) {
          jp["ox"] = scan.seg.offsets(i, 0);
          jp["oy"] = scan.seg.offsets(i, 1);
          jp["otx"] = scan.seg.temporal_offsets(i, 0);
          jp["oty"] = scan.seg.temporal_offsets(i, 1);
        }
        points.push_back(std::move(jp));
      }
      row["points"] = std::move(points);
      out << row.dump() << "\n";
    }
  }
}

namespace {

void apply_config_key(TrackerConfig& config, const std::string& key, const json& value) {
  if (key == "t_d1") config.t_d1 = value.get<double>();
  else if (key == "t_d2") config.t_d2 = value.get<double>();
  else if (key == "t_c") config.t_c = value.get<double>();
  else if (key == "b") config.cluster_radius = value.get<double>();
  else if (key == "min_pts") config.min_pts = value.get<int>();
  else if (key == "retention") config.retention = value.get<int>();
  else if (key == "n_local") config.n_local = value.get<int>();
  else if (key == "d") config.feature_dim = value.get<int>();
  else if (key == "d1") config.hidden_dim = value.get<int>();
  else if (key == "d2") config.instance_dim = value.get<int>();
  else if (key == "epsilon") config.epsilon = value.get<double>();
  else if (key == "seed") config.seed = value.get<std::uint64_t>();
  else if (key == "use_similarity") config.use_similarity = value.get<bool>();
  else if (key == "use_offsets") config.use_offsets = value.get<bool>();
  else throw std::runtime_error("unknown config key: " + key);
}

}  // namespace

TrackerConfig config_from_json_text(const std::string& text) {
  TrackerConfig config;
  const json doc = json::parse(text);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    apply_config_key(config, it.key(), it.value());
  }
  if (!config.valid()) throw std::runtime_error("invalid tracker config");
  return config;
}

TrackerConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return config_from_json_text(text);
}

std::string config_to_json_text(const TrackerConfig& config) {
  json doc;
  doc["t_d1"] = config.t_d1;
  doc["t_d2"] = config.t_d2;
  doc["t_c"] = config.t_c;
  doc["b"] = config.cluster_radius;
  doc["min_pts"] = config.min_pts;
  doc["retention"] = config.retention;
  doc["n_local"] = config.n_local;
  doc["d"] = config.feature_dim;
  doc["d1"] = config.hidden_dim;
  doc["d2"] = config.instance_dim;
  doc["epsilon"] = config.epsilon;
  doc["seed"] = config.seed;
  doc["use_similarity"] = config.use_similarity;
  doc["use_offsets"] = config.use_offsets;
  return doc.dump();
}

std::string config_fingerprint(const TrackerConfig& config) {
  const std::string text = config_to_json_text(config);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buffer);
}

std::string report_to_json_text(const metrics::MetricReport& report) {
  json doc;
  doc["lstq"] = report.lstq;
  doc["s_assoc"] = report.s_assoc;
  doc["s_cls"] = report.s_cls;
  doc["iou_mov"] = report.iou_mov;
  doc["num_switches"] = report.num_switches;
  doc["num_tracks_pred"] = report.num_tracks_pred;
  doc["num_tracks_gt"] = report.num_tracks_gt;
  return doc.dump();
}

}  // namespace radar::io
