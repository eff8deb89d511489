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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radar/assoc/tracker.hpp"
#include "radar/baselines.hpp"
#include "radar/experiments.hpp"
#include "radar/io/jsonl.hpp"
#include "radar/metrics.hpp"
#include "radar/nets/training.hpp"
#include "radar/nets/verify.hpp"
#include "radar/nn/checkpoint.hpp"
#include "radar/sim/simulator.hpp"

namespace {

using namespace radar;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

io::StoredSequence to_stored(const sim::SimSequence& seq, const std::string& id) {
  io::StoredSequence out;
  out.id = id;
  for (const sim::SimScan& scan : seq) {
    io::StoredScan stored;
    stored.seg = scan.seg;
    stored.seg.scan.sequence_id = id;
    stored.track_ids = scan.track_ids;
    stored.temporal_valid = scan.temporal_valid;
    out.scans.push_back(std::move(stored));
  }
  return out;
}

sim::SimSequence to_sim(const io::StoredSequence& stored) {
  sim::SimSequence out;
  for (const io::StoredScan& scan : stored.scans) {
    out.push_back({scan.seg, scan.track_ids, scan.temporal_valid});
  }
  return out;
}

struct SimulateArgs {
  std::string scenario = "single";
  std::string out;
  std::uint64_t seed = 0;
  int scans = -1;
};

int run_simulate(const SimulateArgs& args) {
  sim::ScenarioConfig config = sim::scenario_library(args.scenario);
  config.seed = args.seed;
  if (args.scans > 0) config.scans = args.scans;
  const sim::SimSequence seq = sim::generate_sequence(config);
  const std::string id = args.scenario + "-" + std::to_string(args.seed);
  io::write_sequences(args.out, {to_stored(seq, id)},
                      io::config_fingerprint(TrackerConfig{}), true);
  std::cout << "wrote " << seq.size() << " scans to " << args.out << "\n";
  return 0;
}

struct CorruptArgs {
  std::string in, out;
  sim::CorruptionRates rates;
  std::uint64_t seed = 0;
};

int run_corrupt(const CorruptArgs& args) {
  const auto sequences = io::read_sequences(args.in);
  std::vector<io::StoredSequence> output;
  for (const io::StoredSequence& stored : sequences) {
    const sim::SimSequence corrupted =
        sim::corrupt_segmentation(to_sim(stored), args.rates, args.seed);
    output.push_back(to_stored(corrupted, stored.id));
  }
  io::write_sequences(args.out, output, io::config_fingerprint(TrackerConfig{}), true);
  std::cout << "wrote " << output.size() << " corrupted sequence(s) to " << args.out
            << "\n";
  return 0;
}

struct TrainArgs {
  std::string in;
  std::string checkpoint;
  std::string config_path;
  int steps = 500;
  int batch_pairs = 8;
  double lr = 1e-3;
  std::uint64_t seed = 1;
};

int run_train(const TrainArgs& args) {
  const TrackerConfig config =
      args.config_path.empty() ? TrackerConfig{} : io::read_config(args.config_path);
  const auto sequences = io::read_sequences(args.in);
  if (sequences.empty()) throw io::ParseError(0, "no sequences in training input");

  std::vector<nets::OffsetExample> offset_examples;
  std::vector<nets::PairExample> pair_examples;
  for (const io::StoredSequence& stored : sequences) {
    std::vector<SegmentedScan> scans = stored.segmentation();
    std::vector<std::vector<std::uint8_t>> valid;
    std::vector<std::vector<int>> tracks;
    for (const io::StoredScan& s : stored.scans) {
      valid.push_back(s.temporal_valid);
      tracks.push_back(s.track_ids);
    }
    const auto offs = nets::make_offset_examples(scans, valid);
    offset_examples.insert(offset_examples.end(), offs.begin(), offs.end());
    const auto pairs = nets::make_pair_examples(scans, tracks, config, 2);
    pair_examples.insert(pair_examples.end(), pairs.begin(), pairs.end());
  }

  nets::NetworkBundle bundle(config);
  bundle.init(args.seed);

  nets::OffsetTrainConfig offset_config;
  offset_config.steps = args.steps;
  offset_config.lr = args.lr;
  const nets::OffsetTrainResult offset_result =
      nets::train_offset_heads(bundle.offset_head, offset_examples, offset_config);

  nets::SimilarityTrainConfig sim_config;
  sim_config.steps = args.steps;
  sim_config.batch_pairs = args.batch_pairs;
  sim_config.lr = args.lr;
  sim_config.seed = args.seed;
  const nets::SimilarityTrainResult sim_result = nets::train_similarity(
      bundle.instance_net, bundle.similarity, pair_examples, sim_config);

  nn::save_checkpoint(args.checkpoint, bundle.state());
  const nets::PairScoreStats stats =
      nets::evaluate_pair_scores(bundle.instance_net, bundle.similarity, pair_examples);
  std::cout << "{\"offset_loss_final\":" << offset_result.loss_curve.back()
            << ",\"offset_mae_standard\":" << offset_result.mae_standard
            << ",\"offset_mae_temporal\":" << offset_result.mae_temporal
            << ",\"similarity_loss_final\":" << sim_result.loss_curve.back()
            << ",\"similarity_true_mean\":" << stats.mean_true
            << ",\"similarity_false_mean\":" << stats.mean_false << "}\n";
  return 0;
}

struct TrackArgs {
  std::string in, out;
  std::string config_path;
  std::string checkpoint;
  bool geometric_only = false;
  bool no_offsets = false;
  bool predict_offsets = false;
};

int run_track(const TrackArgs& args) {
  TrackerConfig config =
      args.config_path.empty() ? TrackerConfig{} : io::read_config(args.config_path);
  if (args.geometric_only) config.use_similarity = false;
  if (args.no_offsets) config.use_offsets = false;
  if (config.use_similarity && args.checkpoint.empty()) {
    throw std::invalid_argument(
        "similarity gating needs --checkpoint; pass --geometric-only to track "
        "without it");
  }
  if (args.predict_offsets && args.checkpoint.empty()) {
    throw std::invalid_argument("--predict-offsets needs --checkpoint");
  }

  nets::NetworkBundle bundle(config);
  if (!args.checkpoint.empty()) nn::load_checkpoint(args.checkpoint, bundle.state());

  auto sequences = io::read_sequences(args.in);
  std::vector<io::StoredSequence> output;
  for (io::StoredSequence& stored : sequences) {
    std::vector<SegmentedScan> scans = stored.segmentation();
    if (args.predict_offsets) {
      for (SegmentedScan& scan : scans) {
        if (scan.size() == 0) continue;
        const MatX input = nets::OffsetHead::build_input(scan.scan);
        const nets::OffsetHead::Output out = bundle.offset_head.forward_eval(input);
        scan.offsets = out.standard;
        scan.temporal_offsets = out.temporal;
      }
    }
    const auto ids = assoc::run_tracker(
        scans, config, config.use_similarity ? &bundle.instance_net : nullptr,
        config.use_similarity ? &bundle.similarity : nullptr);

    io::StoredSequence pred;
    pred.id = stored.id;
    for (std::size_t t = 0; t < scans.size(); ++t) {
      io::StoredScan scan;
      scan.seg = scans[t];
      scan.track_ids = ids[t];
      pred.scans.push_back(std::move(scan));
    }
    output.push_back(std::move(pred));
  }
  io::write_sequences(args.out, output, io::config_fingerprint(config), false);
  std::cout << "wrote tracking for " << output.size() << " sequence(s) to " << args.out
            << "\n";
  return 0;
}

struct BaselineArgs {
  std::string name = "center_doppler";
  std::string in, out;
  std::string config_path;
  double dt = 0.5;
};

int run_baseline(const BaselineArgs& args) {
  const TrackerConfig config =
      args.config_path.empty() ? TrackerConfig{} : io::read_config(args.config_path);
  auto sequences = io::read_sequences(args.in);
  std::vector<io::StoredSequence> output;
  for (io::StoredSequence& stored : sequences) {
    const std::vector<SegmentedScan> scans = stored.segmentation();
    std::vector<std::vector<int>> ids;
    if (args.name == "center_doppler") {
      ids = baselines::center_doppler_tracker(scans, config, args.dt);
    } else if (args.name == "kalman_iou") {
      ids = baselines::kalman_iou_tracker(scans, config, args.dt);
    } else {
      throw std::invalid_argument("unknown baseline: " + args.name);
    }
    io::StoredSequence pred;
    pred.id = stored.id;
    for (std::size_t t = 0; t < scans.size(); ++t) {
      io::StoredScan scan;
      scan.seg = scans[t];
      scan.track_ids = ids[t];
      pred.scans.push_back(std::move(scan));
    }
    output.push_back(std::move(pred));
  }
  io::write_sequences(args.out, output, io::config_fingerprint(config), false);
  std::cout << "wrote baseline '" << args.name << "' tracking to " << args.out << "\n";
  return 0;
}

struct EvalArgs {
  std::string pred, gt;
  std::string out;
};

int run_eval(const EvalArgs& args) {
  const auto pred_sequences = io::read_sequences(args.pred);
  const auto gt_sequences = io::read_sequences(args.gt);
  if (pred_sequences.size() != gt_sequences.size()) {
    throw std::invalid_argument("prediction and ground truth sequence counts differ");
  }
  std::vector<SequenceLabels> pred, gt;
  for (std::size_t s = 0; s < gt_sequences.size(); ++s) {
    if (pred_sequences[s].id != gt_sequences[s].id) {
      throw std::invalid_argument("sequence ids differ: " + pred_sequences[s].id +
                                  " vs " + gt_sequences[s].id);
    }
    if (pred_sequences[s].scans.size() != gt_sequences[s].scans.size()) {
      throw std::invalid_argument("scan counts differ in sequence " +
                                  gt_sequences[s].id);
    }
    for (std::size_t t = 0; t < gt_sequences[s].scans.size(); ++t) {
      const auto& p = pred_sequences[s].scans[t].seg;
      const auto& g = gt_sequences[s].scans[t].seg;
      if (p.size() != g.size()) {
        throw std::invalid_argument("point counts differ at t=" +
                                    std::to_string(g.scan.t));
      }
      for (int i = 0; i < g.size(); ++i) {
        if (std::abs(p.scan.points[i].x - g.scan.points[i].x) > 1e-6 ||
            std::abs(p.scan.points[i].y - g.scan.points[i].y) > 1e-6) {
          throw std::invalid_argument("point geometry differs at t=" +
                                      std::to_string(g.scan.t) +
                                      "; files describe different data");
        }
      }
    }
    pred.push_back(pred_sequences[s].labels());
    gt.push_back(gt_sequences[s].labels());
  }
  const metrics::MetricReport report = metrics::evaluate(pred, gt);
  const std::string text = io::report_to_json_text(report);
  std::cout << text << "\n";
  if (!args.out.empty()) {
    std::ofstream file(args.out);
    if (!file) throw std::runtime_error("cannot open report output: " + args.out);
    file << text << "\n";
  }
  return 0;
}

struct GradcheckArgs {
  int seeds = 20;
  double tolerance = 1e-4;
};

int run_gradcheck(const GradcheckArgs& args) {
  const auto entries = nets::gradient_suite(args.seeds);
  bool all_pass = true;
  for (const auto& entry : entries) {
    const bool pass = entry.max_rel_err <= args.tolerance;
    all_pass = all_pass && pass;
    std::printf("%-24s max_rel_err=%.3e probes=%d %s\n", entry.op.c_str(),
                entry.max_rel_err, entry.probes, pass ? "pass" : "FAIL");
  }
  std::printf("worst=%.3e tolerance=%.1e -> %s\n",
              nets::gradient_suite_worst(entries), args.tolerance,
              all_pass ? "pass" : "FAIL");
  return all_pass ? 0 : kExitRuntime;
}

struct AblateArgs {
  std::string scenario = "crossing";
  std::string checkpoint;
  int seeds = 10;
  int train_steps = 600;
  std::uint64_t seed = 1;
};

int run_ablate(const AblateArgs& args) {
  TrackerConfig config;
  experiments::AblationProtocol protocol;
  protocol.scenario = args.scenario;
  protocol.eval_seeds = args.seeds;
  protocol.train_steps = args.train_steps;
  protocol.init_seed = args.seed;
  if (args.scenario == "fast") protocol.corruption = {0.0, 0.0, 0.0, 0.5};

  nets::NetworkBundle bundle(config);
  bundle.init(args.seed);
  if (!args.checkpoint.empty()) {
    nn::load_checkpoint(args.checkpoint, bundle.state());
  } else {
    std::cout << "training similarity on scenario '" << protocol.scenario << "' ("
              << protocol.train_steps << " steps)...\n";
    experiments::train_for_protocol(protocol, config, bundle.instance_net,
                                    bundle.similarity);
  }

  const auto rows = experiments::ablation_matrix(protocol, config, &bundle.instance_net,
                                                 &bundle.similarity);
  std::printf("%-24s %10s %10s   (mean over %d seeds)\n", "configuration", "S_assoc",
              "LSTQ", protocol.eval_seeds);
  for (const auto& row : rows) {
    std::printf("%-24s %10.4f %10.4f\n", row.name.c_str(), row.s_assoc, row.lstq);
  }
  const double geometric = rows[1].s_assoc;
  const double combined = rows[3].s_assoc;
  std::printf("combined - geometric = %+.4f S_assoc\n", combined - geometric);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moving-instance tracking for sparse radar point clouds"};
  app.require_subcommand(1);

  SimulateArgs simulate_args;
  CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic sequence");
  simulate->add_option("--scenario", simulate_args.scenario,
                       "single|parallel|crossing|occlusion|single_point|spawn_despawn");
  simulate->add_option("--seed", simulate_args.seed, "rng seed");
  simulate->add_option("--scans", simulate_args.scans, "override scan count");
  simulate->add_option("--out", simulate_args.out, "output JSON-lines file")
      ->required();

  CorruptArgs corrupt_args;
  CLI::App* corrupt = app.add_subcommand("corrupt", "apply the mock-backbone noise");
  corrupt->add_option("--in", corrupt_args.in)->required();
  corrupt->add_option("--out", corrupt_args.out)->required();
  corrupt->add_option("--flip", corrupt_args.rates.semantic_flip, "label flip rate");
  corrupt->add_option("--split", corrupt_args.rates.instance_split, "split rate");
  corrupt->add_option("--merge", corrupt_args.rates.instance_merge, "merge rate");
  corrupt->add_option("--offset-noise", corrupt_args.rates.offset_noise,
                      "Gaussian std on both offset fields, meters");
  corrupt->add_option("--seed", corrupt_args.seed);

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "fit offset heads and similarity");
  train->add_option("--in", train_args.in, "ground-truth scan file")->required();
  train->add_option("--checkpoint", train_args.checkpoint, "output checkpoint")
      ->required();
  train->add_option("--config", train_args.config_path, "tracker config JSON");
  train->add_option("--steps", train_args.steps);
  train->add_option("--batch", train_args.batch_pairs, "scan pairs per step");
  train->add_option("--lr", train_args.lr);
  train->add_option("--seed", train_args.seed);

  TrackArgs track_args;
  CLI::App* track = app.add_subcommand("track", "run the tracker over a scan file");
  track->add_option("--in", track_args.in)->required();
  track->add_option("--out", track_args.out)->required();
  track->add_option("--config", track_args.config_path, "tracker config JSON");
  track->add_option("--checkpoint", track_args.checkpoint);
  track->add_flag("--geometric-only", track_args.geometric_only,
                  "disable similarity gating");
  track->add_flag("--no-offsets", track_args.no_offsets,
                  "associate on raw instance centers");
  track->add_flag("--predict-offsets", track_args.predict_offsets,
                  "replace file offsets with offset-head predictions");

  BaselineArgs baseline_args;
  CLI::App* baseline = app.add_subcommand("baseline", "run a reference tracker");
  baseline->add_option("--name", baseline_args.name, "center_doppler|kalman_iou");
  baseline->add_option("--in", baseline_args.in)->required();
  baseline->add_option("--out", baseline_args.out)->required();
  baseline->add_option("--config", baseline_args.config_path);
  baseline->add_option("--dt", baseline_args.dt, "seconds per scan");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score predictions against ground truth");
  eval->add_option("--pred", eval_args.pred)->required();
  eval->add_option("--gt", eval_args.gt)->required();
  eval->add_option("--out", eval_args.out, "also write the report JSON here");

  GradcheckArgs gradcheck_args;
  CLI::App* gradcheck = app.add_subcommand("gradcheck", "verify analytic gradients");
  gradcheck->add_option("--seeds", gradcheck_args.seeds);
  gradcheck->add_option("--tolerance", gradcheck_args.tolerance);

  AblateArgs ablate_args;
  CLI::App* ablate = app.add_subcommand("ablate", "run the association ablation matrix");
  ablate->add_option("--scenario", ablate_args.scenario, "crossing|fast|...");
  ablate->add_option("--checkpoint", ablate_args.checkpoint,
                     "reuse a trained checkpoint instead of training");
  ablate->add_option("--seeds", ablate_args.seeds, "evaluation seeds");
  ablate->add_option("--train-steps", ablate_args.train_steps);
  ablate->add_option("--seed", ablate_args.seed, "training seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(simulate_args);
    if (*corrupt) return run_corrupt(corrupt_args);
    if (*train) return run_train(train_args);
    if (*track) return run_track(track_args);
    if (*baseline) return run_baseline(baseline_args);
    if (*eval) return run_eval(eval_args);
    if (*gradcheck) return run_gradcheck(gradcheck_args);
    if (*ablate) return run_ablate(ablate_args);
  } catch (const radar::io::ParseError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
