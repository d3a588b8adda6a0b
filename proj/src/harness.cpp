#include "awmm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "awmm/dvhop.hpp"
#include "awmm/errors.hpp"
#include "awmm/pairing.hpp"
#include "awmm/ranging.hpp"
#include "awmm/weighting.hpp"

namespace awmm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> usable_anchors(const Topology& topo, const AvgHopDistance& dbar, int node) {
  std::vector<int> out;
  for (int a = 0; a < topo.dep.anchor_count; ++a) {
    const int h = topo.hop(a, node);
    if (h == kUnreachable || h < 1) continue;
    if (!dbar.valid(a) || !(dbar.dbar[a] > 0.0)) continue;
    out.push_back(a);
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? kNaN : s / static_cast<double>(v.size());
}

}  // namespace

const char* algo_name(AlgoTag algo) {
  return algo == AlgoTag::DvHop ? "dvhop" : "awminmax";
}

TrialResult run_pipeline(const Topology& topo, AlgoTag algo, const SolverConfig& scfg,
                         int trial, std::uint64_t seed) {
  const int n = topo.dep.size();
  const int m = topo.dep.anchor_count;
  std::vector<Vec2> anchor_pos(topo.dep.positions.begin(), topo.dep.positions.begin() + m);
  const AvgHopDistance dbar = avg_hop_distance(anchor_pos, topo.hops);

  TrialResult tr;
  tr.algo = algo;
  tr.trial = trial;
  tr.seed = seed;
  tr.nodes.reserve(n - m);
  for (int u = m; u < n; ++u) {
    NodeOutcome out;
    out.node_id = u;
    out.true_pos = topo.dep.positions[u];
    out.est_pos = {kNaN, kNaN};
    out.error_m = kNaN;
    out.mean_dbar = kNaN;

    const std::vector<int> usable = usable_anchors(topo, dbar, u);
    if (usable.size() >= 3) {
      LocalizationProblem prob;
      std::vector<double> dbars_used;
      for (const int a : usable) {
        prob.anchors.push_back(topo.dep.positions[a]);
        dbars_used.push_back(dbar.dbar[a]);
        if (algo == AlgoTag::DvHop) {
          prob.dhat.push_back(dvhop_range(dbar.dbar[a], topo.hop(a, u)));
          prob.w.push_back(1.0);
        } else {
          const AnchorPairing pairing = select_partner(a, u, topo, dbar);
          const RangeEstimate est = estimate_range(a, u, pairing, dbar, topo);
          const double ds = est.method == RangeMethod::DvHopFallback
                                ? fallback_delta_sigma(a, u, topo, dbar)
                                : est.pair.delta_sigma;
          prob.dhat.push_back(est.dhat);
          prob.w.push_back(weight(topo.hop(a, u), ds));
        }
      }
      if (algo == AlgoTag::DvHop) {
        try {
          out.est_pos = multilaterate_ls(prob.anchors, prob.dhat);
          out.localized = true;
        } catch (const DegenerateGeometryError&) {
          // node stays unlocalized
        }
      } else {
        const LocalizationOutcome sol = sca_localize(prob, scfg);
        out.est_pos = sol.x_hat;
        out.sca_iters = sol.iterations;
        out.localized = true;
      }
      if (out.localized) {
        out.error_m = distance(out.est_pos, out.true_pos);
        out.mean_dbar = mean_of(dbars_used);
      }
    }
    tr.nodes.push_back(out);
  }
  return tr;
}

TrialResult run_trial(const ScenarioConfig& cfg, int trial, AlgoTag algo) {
  validate(cfg);
  Rng deploy_rng(derive_stream_seed(cfg.base_seed, 0));
  Deployment dep = generate_deployment(cfg, deploy_rng);
  const std::uint64_t trial_seed = derive_stream_seed(cfg.base_seed, 1 + static_cast<std::uint64_t>(trial));
  Rng link_rng(trial_seed);
  const Topology topo = assemble_topology(cfg, std::move(dep), link_rng);
  SolverConfig scfg;
  scfg.epsilon = cfg.epsilon;
  return run_pipeline(topo, algo, scfg, trial, trial_seed);
}

double rmse(const std::vector<double>& errors) {
  if (errors.empty()) return kNaN;
  double acc = 0.0;
  for (const double e : errors) acc += e * e;
  return std::sqrt(acc / static_cast<double>(errors.size()));
}

double ale(const std::vector<double>& errors, double comm_radius) {
  if (errors.empty()) return kNaN;
  double acc = 0.0;
  for (const double e : errors) acc += e;
  return acc / (static_cast<double>(errors.size()) * comm_radius);
}

std::vector<std::pair<double, double>> error_cdf(std::vector<double> errors) {
  std::vector<std::pair<double, double>> out;
  if (errors.empty()) return out;
  std::sort(errors.begin(), errors.end());
  const double total = static_cast<double>(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i + 1 < errors.size() && errors[i + 1] == errors[i]) continue;  // collapse duplicates
    out.emplace_back(errors[i], static_cast<double>(i + 1) / total);
  }
  return out;
}

namespace {

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig cfg = base;
  switch (axis) {
    case SweepAxis::AnchorCount:
      cfg.anchor_count = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::NodeDensity:
      cfg.node_count = static_cast<int>(std::lround(value * base.area_side * base.area_side));
      break;
    case SweepAxis::AvgHopDistanceBins:
      break;  // bins reuse the base configuration
  }
  validate(cfg);
  return cfg;
}

struct AxisPoint {
  double value = 0.0;
  std::vector<TrialResult> trials;  // one per (algo, trial), algo-major
};

// Trials for every algorithm at one configuration, sharing each trial's
// topology so the algorithms see identical networks.
std::vector<TrialResult> run_point(const ScenarioConfig& cfg, const std::vector<AlgoTag>& algos) {
  Rng deploy_rng(derive_stream_seed(cfg.base_seed, 0));
  const Deployment dep = generate_deployment(cfg, deploy_rng);
  SolverConfig scfg;
  scfg.epsilon = cfg.epsilon;
  std::vector<TrialResult> out;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed =
        derive_stream_seed(cfg.base_seed, 1 + static_cast<std::uint64_t>(trial));
    Rng link_rng(trial_seed);
    const Topology topo = assemble_topology(cfg, dep, link_rng);
    for (const AlgoTag algo : algos)
      out.push_back(run_pipeline(topo, algo, scfg, trial, trial_seed));
  }
  return out;
}

SummaryRow summarize_point(AlgoTag algo, double axis_value, int unknowns,
                           const std::vector<const TrialResult*>& trials) {
  SummaryRow row;
  row.algo = algo;
  row.axis_value = axis_value;

  std::vector<double> trial_ales;
  std::vector<std::vector<double>> per_node(unknowns);
  long unlocalized = 0;
  long total = 0;
  for (const TrialResult* tr : trials) {
    std::vector<double> errs;
    for (std::size_t k = 0; k < tr->nodes.size(); ++k) {
      const NodeOutcome& node = tr->nodes[k];
      ++total;
      if (!node.localized) {
        ++unlocalized;
        continue;
      }
      errs.push_back(node.error_m);
      per_node[k].push_back(node.error_m);
    }
    if (!errs.empty()) trial_ales.push_back(ale(errs, 1.0));  // mean error; R applied by caller
  }
  row.ale = mean_of(trial_ales);
  std::vector<double> node_rmses;
  for (const auto& errs : per_node)
    if (!errs.empty()) node_rmses.push_back(rmse(errs));
  row.mean_rmse = mean_of(node_rmses);
  row.pct_unlocalizable = total > 0 ? 100.0 * static_cast<double>(unlocalized) / total : kNaN;
  return row;
}

CampaignResult aggregate(const std::vector<AxisPoint>& points, const std::vector<AlgoTag>& algos,
                         double comm_radius) {
  CampaignResult res;
  for (const AxisPoint& pt : points)
    for (const TrialResult& tr : pt.trials) res.trials.push_back(tr);

  for (const AlgoTag algo : algos) {
    for (const AxisPoint& pt : points) {
      std::vector<const TrialResult*> selected;
      int unknowns = 0;
      for (const TrialResult& tr : pt.trials) {
        if (tr.algo != algo) continue;
        selected.push_back(&tr);
        unknowns = static_cast<int>(tr.nodes.size());
      }
      SummaryRow row = summarize_point(algo, pt.value, unknowns, selected);
      row.ale = std::isnan(row.ale) ? row.ale : row.ale / comm_radius;
      res.summary.push_back(row);
    }
  }

  for (const AlgoTag algo : algos) {
    std::vector<double> pooled;
    for (const AxisPoint& pt : points)
      for (const TrialResult& tr : pt.trials) {
        if (tr.algo != algo) continue;
        for (const NodeOutcome& node : tr.nodes)
          if (node.localized) pooled.push_back(node.error_m);
      }
    res.cdf.emplace_back(algo, error_cdf(std::move(pooled)));
  }
  return res;
}

// Fig-style binning: summary rows per avg-hop-distance bin instead of per
// configuration. Bin edges ascend; the last bin is open-ended.
CampaignResult aggregate_bins(const std::vector<TrialResult>& trials,
                              const std::vector<double>& edges,
                              const std::vector<AlgoTag>& algos, double comm_radius) {
  CampaignResult res;
  res.trials = trials;

  for (const AlgoTag algo : algos) {
    long unlocalized = 0;
    long total = 0;
    for (const TrialResult& tr : trials) {
      if (tr.algo != algo) continue;
      for (const NodeOutcome& node : tr.nodes) {
        ++total;
        if (!node.localized) ++unlocalized;
      }
    }
    const double pct = total > 0 ? 100.0 * static_cast<double>(unlocalized) / total : kNaN;

    for (std::size_t b = 0; b < edges.size(); ++b) {
      const double lo = edges[b];
      const double hi =
          b + 1 < edges.size() ? edges[b + 1] : std::numeric_limits<double>::infinity();
      std::vector<double> errs;
      for (const TrialResult& tr : trials) {
        if (tr.algo != algo) continue;
        for (const NodeOutcome& node : tr.nodes) {
          if (!node.localized) continue;
          if (node.mean_dbar >= lo && node.mean_dbar < hi) errs.push_back(node.error_m);
        }
      }
      SummaryRow row;
      row.algo = algo;
      row.axis_value = lo;
      row.ale = errs.empty() ? kNaN : ale(errs, comm_radius);
      row.mean_rmse = rmse(errs);
      row.pct_unlocalizable = pct;
      res.summary.push_back(row);
    }
  }

  for (const AlgoTag algo : algos) {
    std::vector<double> pooled;
    for (const TrialResult& tr : trials) {
      if (tr.algo != algo) continue;
      for (const NodeOutcome& node : tr.nodes)
        if (node.localized) pooled.push_back(node.error_m);
    }
    res.cdf.emplace_back(algo, error_cdf(std::move(pooled)));
  }
  return res;
}

}  // namespace

CampaignResult run_campaign(const ScenarioConfig& cfg, const std::vector<AlgoTag>& algos) {
  validate(cfg);
  if (algos.empty()) throw ConfigError("no algorithms selected");
  AxisPoint pt;
  pt.value = static_cast<double>(cfg.anchor_count);
  pt.trials = run_point(cfg, algos);
  return aggregate({pt}, algos, cfg.comm_radius);
}

CampaignResult sweep(const ScenarioConfig& cfg, SweepAxis axis, const std::vector<double>& values,
                     const std::vector<AlgoTag>& algos) {
  validate(cfg);
  if (algos.empty()) throw ConfigError("no algorithms selected");
  if (values.empty()) throw ConfigError("sweep needs at least one axis value");
  if (!std::is_sorted(values.begin(), values.end()))
    throw ConfigError("sweep values must ascend");

  if (axis == SweepAxis::AvgHopDistanceBins) {
    const std::vector<TrialResult> trials = run_point(cfg, algos);
    return aggregate_bins(trials, values, algos, cfg.comm_radius);
  }

  std::vector<AxisPoint> points;
  for (const double v : values) {
    AxisPoint pt;
    pt.value = v;
    pt.trials = run_point(apply_axis(cfg, axis, v), algos);
    points.push_back(std::move(pt));
  }
  return aggregate(points, algos, cfg.comm_radius);
}

}  // namespace awmm
