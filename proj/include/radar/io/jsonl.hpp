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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "radar/metrics.hpp"
#include "radar/types.hpp"

namespace radar::io {

/// Parse failure with the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// One scan as stored on disk: segmentation plus per-point track ids.
/// Ground-truth files carry offsets; prediction files omit them.
struct StoredScan {
  SegmentedScan seg;
  std::vector<int> track_ids;
  std::vector<std::uint8_t> temporal_valid;  // derived on read, not stored
};

struct StoredSequence {
  std::string id;
  std::vector<StoredScan> scans;

  SequenceLabels labels() const;
  std::vector<SegmentedScan> segmentation() const;
};

/// JSON-lines scan files: one {"seq", "t", "points": [...]} object per line,
/// sorted by (seq, t); an optional leading {"header": ...} line carries
/// provenance. Point fields: x, y, v, rcs, sem (0/1), inst, track, and the
/// offset fields ox, oy, otx, oty when present.
std::vector<StoredSequence> read_sequences(const std::string& path);

void write_sequences(const std::string& path,
                     const std::vector<StoredSequence>& sequences,
                     const std::string& fingerprint, bool include_offsets);

/// Flat JSON mirror of TrackerConfig. Missing keys keep defaults; unknown
/// keys are an error.
TrackerConfig config_from_json_text(const std::string& text);
TrackerConfig read_config(const std::string& path);
std::string config_to_json_text(const TrackerConfig& config);

/// FNV-1a hash of the canonical config JSON, as a hex string.
std::string config_fingerprint(const TrackerConfig& config);

std::string report_to_json_text(const metrics::MetricReport& report);

}  // namespace radar::io
