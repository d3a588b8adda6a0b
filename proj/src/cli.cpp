#include "awmm/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "awmm/errors.hpp"
#include "awmm/harness.hpp"

namespace awmm {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + value + "'");
  }
}

Vec2 parse_point(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  double x = 0.0, y = 0.0;
  std::string rest;
  if (!(in >> x >> y) || (in >> rest))
    throw ConfigError("key '" + key + "': expected two numbers, got '" + value + "'");
  return {x, y};
}

// Deterministic 9-significant-digit rendering for every CSV float.
std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct SweepRequest {
  SweepAxis axis = SweepAxis::AnchorCount;
  std::vector<double> values;
};

SweepRequest parse_sweep(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw ConfigError("sweep spec must look like axis:v1,v2,... (got '" + spec + "')");
  const std::string axis = trim(spec.substr(0, colon));
  SweepRequest req;
  if (axis == "anchor_count")
    req.axis = SweepAxis::AnchorCount;
  else if (axis == "node_density")
    req.axis = SweepAxis::NodeDensity;
  else if (axis == "avg_hop_distance_bins")
    req.axis = SweepAxis::AvgHopDistanceBins;
  else
    throw ConfigError("unknown sweep axis '" + axis + "'");

  std::stringstream in(spec.substr(colon + 1));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ConfigError("sweep spec has an empty value");
    req.values.push_back(parse_double("sweep", tok));
  }
  if (req.values.empty()) throw ConfigError("sweep spec needs at least one value");
  return req;
}

std::vector<AlgoTag> parse_algos(const std::string& algo) {
  if (algo == "dvhop") return {AlgoTag::DvHop};
  if (algo == "awminmax") return {AlgoTag::AwMinMax};
  if (algo == "both") return {AlgoTag::DvHop, AlgoTag::AwMinMax};
  throw ConfigError("unknown algorithm '" + algo + "' (expected dvhop, awminmax or both)");
}

class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  std::ofstream open(const std::string& name) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    written_.push_back(path);
    return out;
  }

  // Best-effort removal of partially written files.
  void discard() {
    std::error_code ec;
    for (const fs::path& p : written_) fs::remove(p, ec);
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

void write_trials_csv(std::ofstream& out, const CampaignResult& res) {
  out << "trial,algo,node_id,true_x,true_y,est_x,est_y,error_m,localized,sca_iters\n";
  for (const TrialResult& tr : res.trials) {
    for (const NodeOutcome& node : tr.nodes) {
      out << tr.trial << ',' << algo_name(tr.algo) << ',' << node.node_id << ','
          << fmt9(node.true_pos.x) << ',' << fmt9(node.true_pos.y) << ','
          << fmt9(node.est_pos.x) << ',' << fmt9(node.est_pos.y) << ',' << fmt9(node.error_m)
          << ',' << (node.localized ? 1 : 0) << ',' << node.sca_iters << '\n';
    }
  }
}

void write_summary_csv(std::ofstream& out, const CampaignResult& res) {
  out << "algo,axis_value,ale,mean_rmse,pct_unlocalizable\n";
  for (const SummaryRow& row : res.summary) {
    out << algo_name(row.algo) << ',' << fmt9(row.axis_value) << ',' << fmt9(row.ale) << ','
        << fmt9(row.mean_rmse) << ',' << fmt9(row.pct_unlocalizable) << '\n';
  }
}

void write_cdf_csv(std::ofstream& out, const CampaignResult& res) {
  out << "algo,error_m,cum_frac\n";
  for (const auto& [algo, curve] : res.cdf) {
    for (const auto& [err, frac] : curve)
      out << algo_name(algo) << ',' << fmt9(err) << ',' << fmt9(frac) << '\n';
  }
}

void write_manifest(std::ofstream& out, const RunOptions& opts, const ScenarioConfig& cfg,
                    const std::vector<AlgoTag>& algos) {
  nlohmann::ordered_json doc;
  doc["tool_version"] = kToolVersion;
  doc["scenario_file"] = opts.scenario_path;
  doc["output_dir"] = opts.out_dir;
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (const AlgoTag a : algos) names.push_back(algo_name(a));
  doc["algorithms"] = names;
  doc["sweep"] = opts.sweep ? nlohmann::ordered_json(*opts.sweep) : nlohmann::ordered_json(nullptr);
  doc["resolved_seed"] = cfg.base_seed;
  doc["trials"] = cfg.trials;
  out << doc.dump(2) << '\n';
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file '" + path + "'");

  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("scenario line " + std::to_string(line_no) + " is not 'key = value'");
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");

    if (key == "area_side")
      cfg.area_side = parse_double(key, value);
    else if (key == "node_count")
      cfg.node_count = static_cast<int>(parse_int(key, value));
    else if (key == "anchor_count")
      cfg.anchor_count = static_cast<int>(parse_int(key, value));
    else if (key == "comm_radius")
      cfg.comm_radius = parse_double(key, value);
    else if (key == "doi")
      cfg.doi = parse_double(key, value);
    else if (key == "obstacle_center")
      cfg.obstacle_center = parse_point(key, value);
    else if (key == "obstacle_radius")
      cfg.obstacle_radius = parse_double(key, value);
    else if (key == "trials")
      cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "epsilon")
      cfg.epsilon = parse_double(key, value);
    else if (key == "base_seed")
      cfg.base_seed = parse_u64(key, value);
    else
      throw ConfigError("unknown key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

int run_command(const RunOptions& opts) {
  ScenarioConfig cfg;
  std::vector<AlgoTag> algos;
  CampaignResult result;
  try {
    cfg = parse_scenario(opts.scenario_path);
    if (opts.trials) cfg.trials = *opts.trials;
    if (opts.seed) cfg.base_seed = *opts.seed;
    algos = parse_algos(opts.algo);
    validate(cfg);
    if (opts.sweep) {
      const SweepRequest req = parse_sweep(*opts.sweep);
      result = sweep(cfg, req.axis, req.values, algos);
    } else {
      result = run_campaign(cfg, algos);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  }

  OutputSet outputs{fs::path(opts.out_dir)};
  try {
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + opts.out_dir + "'");
    {
      std::ofstream out = outputs.open("trials.csv");
      write_trials_csv(out, result);
      if (!out) throw IoError("write failed for trials.csv");
    }
    {
      std::ofstream out = outputs.open("summary.csv");
      write_summary_csv(out, result);
      if (!out) throw IoError("write failed for summary.csv");
    }
    {
      std::ofstream out = outputs.open("cdf.csv");
      write_cdf_csv(out, result);
      if (!out) throw IoError("write failed for cdf.csv");
    }
    {
      std::ofstream out = outputs.open("manifest.json");
      write_manifest(out, opts, cfg, algos);
      if (!out) throw IoError("write failed for manifest.json");
    }
  } catch (const std::exception& e) {
    outputs.discard();
    std::cerr << "output error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace awmm
