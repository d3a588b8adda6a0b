#pragma once

#include <vector>

#include "awmm/geometry.hpp"

namespace awmm {

// min over x of max_i w_i * | ||x - a_i|| - dhat_i |
struct LocalizationProblem {
  std::vector<Vec2> anchors;
  std::vector<double> dhat;  // estimated ranges, meters, > 0
  std::vector<double> w;     // weights in (0, 1]
};

// Throws ConfigError on mismatched sizes, fewer than 3 anchors, or
// non-positive ranges/weights.
void validate(const LocalizationProblem& p);

struct SolverConfig {
  double epsilon = 1e-3;      // outer stop: iterate moved less than this
  int max_outer_iters = 100;
  double sub_tol = 1e-6;      // inner relative tolerance
  int max_inner_iters = 5000;
  double perturb = 1e-9;      // nudge off anchor-coincident iterates
};

struct LocalizationOutcome {
  Vec2 x_hat;
  double t_final = 0.0;  // objective at x_hat
  int iterations = 0;    // subproblems solved
  bool converged = false;
};

double objective(Vec2 x, const LocalizationProblem& p);

// Least-squares multilateration start; anchor centroid when that is
// degenerate; nudged along +x until clear of every anchor.
Vec2 initial_guess(const LocalizationProblem& p, double perturb = 1e-9);

struct SubproblemResult {
  Vec2 x;
  double t = 0.0;  // surrogate value at x
  bool converged = false;
};

// Minimizes the convex majorizer of the objective built at x0,
//   g(x) = max_i max( w_i(||x - a_i|| - dhat_i), -w_i(lin_i(x) - dhat_i) ),
// lin_i being the linearization of ||x - a_i|| at x0, by subgradient descent
// with target-level Polyak steps. g(x0) equals the true objective at x0 and
// g >= objective everywhere, so the returned point never ranks worse than x0.
SubproblemResult solve_subproblem(Vec2 x0, const LocalizationProblem& p, const SolverConfig& cfg);

// Successive convex approximation: rebuild the majorizer at each iterate and
// minimize it, until the iterate moves less than epsilon or the iteration cap
// hits. objective_trace, when given, records the objective at the start point
// and after every outer step.
LocalizationOutcome sca_localize(const LocalizationProblem& p, const SolverConfig& cfg,
                                 std::vector<double>* objective_trace = nullptr);

struct Box {
  double xmin = 0.0, xmax = 0.0;
  double ymin = 0.0, ymax = 0.0;
};

// Exhaustive grid reference: best grid point by objective, ties resolved to
// the lexicographically smallest (x, then y).
Vec2 brute_force_oracle(const LocalizationProblem& p, const Box& box, double step);

}  // namespace awmm
