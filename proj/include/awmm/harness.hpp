#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "awmm/solver.hpp"
#include "awmm/topology.hpp"

namespace awmm {

enum class AlgoTag { DvHop, AwMinMax };

const char* algo_name(AlgoTag algo);  // "dvhop" / "awminmax"

struct NodeOutcome {
  int node_id = -1;
  Vec2 true_pos;
  Vec2 est_pos;            // NaN when not localized
  double error_m = 0.0;    // NaN when not localized
  bool localized = false;
  int sca_iters = 0;       // 0 for the hop-count baseline
  double mean_dbar = 0.0;  // mean avg-hop-distance of the anchors used; NaN when not localized
};

struct TrialResult {
  AlgoTag algo = AlgoTag::DvHop;
  int trial = 0;
  std::uint64_t seed = 0;
  std::vector<NodeOutcome> nodes;  // unknown nodes, ascending id
};

// One localization pass over a built topology. Unknown nodes reachable from
// fewer than 3 usable anchors are reported unlocalized, never estimated.
TrialResult run_pipeline(const Topology& topo, AlgoTag algo, const SolverConfig& scfg,
                         int trial, std::uint64_t seed);

// Deployment from stream 0 of cfg.base_seed (fixed across trials), link
// irregularity from stream 1 + trial, then run_pipeline.
TrialResult run_trial(const ScenarioConfig& cfg, int trial, AlgoTag algo);

// Root mean square of one node's errors over its localized trials.
double rmse(const std::vector<double>& errors);

// Mean error normalized by the communication radius.
double ale(const std::vector<double>& errors, double comm_radius);

// Empirical CDF: ascending unique error values with cumulative fractions,
// ending at 1.
std::vector<std::pair<double, double>> error_cdf(std::vector<double> errors);

enum class SweepAxis { AnchorCount, NodeDensity, AvgHopDistanceBins };

struct SummaryRow {
  AlgoTag algo = AlgoTag::DvHop;
  double axis_value = 0.0;
  double ale = 0.0;
  double mean_rmse = 0.0;
  double pct_unlocalizable = 0.0;
};

struct CampaignResult {
  std::vector<TrialResult> trials;  // axis-major, then algorithm, trial, node
  std::vector<SummaryRow> summary;  // algorithm-major, then axis value
  // Pooled localization-error CDF per algorithm, in algos order.
  std::vector<std::pair<AlgoTag, std::vector<std::pair<double, double>>>> cdf;
};

// cfg.trials trials of every algorithm at the base configuration; summary
// rows carry the anchor count as the axis value.
CampaignResult run_campaign(const ScenarioConfig& cfg, const std::vector<AlgoTag>& algos);

// AnchorCount substitutes each value for cfg.anchor_count; NodeDensity maps a
// nodes-per-m^2 value to node_count = round(v * L^2). AvgHopDistanceBins runs
// the base configuration once and buckets node outcomes by the mean
// avg-hop-distance of the anchors each node used: values are ascending bin
// left edges, the last bin open-ended, and unlocalized outcomes (which used
// no anchors) appear only in the campaign-wide unlocalizable percentage.
CampaignResult sweep(const ScenarioConfig& cfg, SweepAxis axis, const std::vector<double>& values,
                     const std::vector<AlgoTag>& algos);

}  // namespace awmm
