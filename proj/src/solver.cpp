#include "awmm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "awmm/dvhop.hpp"
#include "awmm/errors.hpp"

namespace awmm {

namespace {

Vec2 centroid(const std::vector<Vec2>& pts) {
  Vec2 c;
  for (const Vec2 p : pts) c = c + p;
  return (1.0 / static_cast<double>(pts.size())) * c;
}

// Nudge x along +x until it is at least `perturb` away from every anchor, so
// the linearization of ||x - a_i|| is defined everywhere.
Vec2 push_off_anchors(Vec2 x, const std::vector<Vec2>& anchors, double perturb) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool clear = true;
    for (const Vec2 a : anchors) {
      if (distance(x, a) < perturb) {
        clear = false;
        break;
      }
    }
    if (clear) break;
    x.x += perturb;
  }
  return x;
}

}  // namespace

void validate(const LocalizationProblem& p) {
  if (p.anchors.size() < 3) throw ConfigError("localization needs at least 3 anchors");
  if (p.anchors.size() != p.dhat.size() || p.anchors.size() != p.w.size())
    throw ConfigError("localization problem arrays must have equal lengths");
  for (std::size_t i = 0; i < p.dhat.size(); ++i) {
    if (!(p.dhat[i] > 0.0) || !std::isfinite(p.dhat[i]))
      throw ConfigError("estimated ranges must be positive and finite");
    if (!(p.w[i] > 0.0 && p.w[i] <= 1.0)) throw ConfigError("weights must lie in (0, 1]");
  }
}

double objective(Vec2 x, const LocalizationProblem& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.anchors.size(); ++i) {
    const double r = p.w[i] * std::abs(distance(x, p.anchors[i]) - p.dhat[i]);
    worst = std::max(worst, r);
  }
  return worst;
}

Vec2 initial_guess(const LocalizationProblem& p, double perturb) {
  Vec2 x;
  try {
    x = multilaterate_ls(p.anchors, p.dhat);
  } catch (const DegenerateGeometryError&) {
    x = centroid(p.anchors);
  }
  return push_off_anchors(x, p.anchors, perturb);
}

SubproblemResult solve_subproblem(Vec2 x0, const LocalizationProblem& p, const SolverConfig& cfg) {
  const int m = static_cast<int>(p.anchors.size());

  // Fix the linearizations at x0.
  std::vector<double> n0(m);
  std::vector<Vec2> u0(m);
  for (int i = 0; i < m; ++i) {
    const Vec2 diff = x0 - p.anchors[i];
    n0[i] = norm(diff);
    u0[i] = n0[i] > 0.0 ? (1.0 / n0[i]) * diff : Vec2{1.0, 0.0};
  }

  // Value of the majorizer and one subgradient of its active piece.
  const auto eval = [&](Vec2 x, Vec2* sub) -> double {
    double best = -std::numeric_limits<double>::infinity();
    Vec2 grad{0.0, 0.0};
    for (int i = 0; i < m; ++i) {
      const Vec2 diff = x - p.anchors[i];
      const double dist_i = norm(diff);
      const double upper = p.w[i] * (dist_i - p.dhat[i]);
      if (upper > best) {
        best = upper;
        grad = dist_i > 0.0 ? (p.w[i] / dist_i) * diff : Vec2{0.0, 0.0};
      }
      const double lin = n0[i] + dot(u0[i], x - x0);
      const double lower = -p.w[i] * (lin - p.dhat[i]);
      if (lower > best) {
        best = lower;
        grad = -p.w[i] * u0[i];
      }
    }
    if (sub) *sub = grad;
    return best;
  };

  Vec2 x = x0;
  Vec2 x_best = x0;
  double g_best = eval(x0, nullptr);
  // Target-level Polyak steps: aim delta below the incumbent (never below 0,
  // a known lower bound of the majorizer) and halve delta after a stretch of
  // iterations without real progress.
  double delta = std::max(0.5 * g_best, 1e-12);
  double epoch_best = g_best;
  int stall = 0;
  bool converged = false;
  for (int it = 0; it < cfg.max_inner_iters; ++it) {
    if (delta <= cfg.sub_tol * std::max(1.0, g_best)) {
      converged = true;
      break;
    }
    Vec2 s;
    const double gx = eval(x, &s);
    if (gx < g_best) {
      g_best = gx;
      x_best = x;
    }
    if (g_best < epoch_best - 0.1 * delta) {
      epoch_best = g_best;
      stall = 0;
    } else if (++stall >= 15) {
      delta *= 0.5;
      epoch_best = g_best;
      stall = 0;
    }
    const double ss = dot(s, s);
    if (ss <= 1e-30) {
      converged = true;  // flat active piece: nothing to descend along
      break;
    }
    const double target = std::max(g_best - delta, 0.0);
    const double step = (gx - target) / ss;
    if (step > 0.0) x = x - step * s;
  }
  return {x_best, g_best, converged};
}

LocalizationOutcome sca_localize(const LocalizationProblem& p, const SolverConfig& cfg,
                                 std::vector<double>* objective_trace) {
  validate(p);
  Vec2 x = initial_guess(p, cfg.perturb);
  if (objective_trace) {
    objective_trace->clear();
    objective_trace->push_back(objective(x, p));
  }
  bool outer_converged = false;
  bool inner_ok = true;
  int iters = 0;
  while (iters < cfg.max_outer_iters) {
    const SubproblemResult sub = solve_subproblem(x, p, cfg);
    inner_ok = inner_ok && sub.converged;
    const Vec2 x_next = push_off_anchors(sub.x, p.anchors, cfg.perturb);
    const double move = distance(x_next, x);
    x = x_next;
    ++iters;
    if (objective_trace) objective_trace->push_back(objective(x, p));
    if (move < cfg.epsilon) {
      outer_converged = true;
      break;
    }
  }
  return {x, objective(x, p), iters, outer_converged && inner_ok};
}

Vec2 brute_force_oracle(const LocalizationProblem& p, const Box& box, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  const long nx = std::lround(std::floor((box.xmax - box.xmin) / step + 1e-9)) + 1;
  const long ny = std::lround(std::floor((box.ymax - box.ymin) / step + 1e-9)) + 1;
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_pt{box.xmin, box.ymin};
  for (long ix = 0; ix < nx; ++ix) {
    const double x = box.xmin + static_cast<double>(ix) * step;
    for (long iy = 0; iy < ny; ++iy) {
      const Vec2 pt{x, box.ymin + static_cast<double>(iy) * step};
      const double f = objective(pt, p);
      if (f < best) {  // strict: ties keep the lexicographically smallest point
        best = f;
        best_pt = pt;
      }
    }
  }
  return best_pt;
}

}  // namespace awmm
