#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "samo/differentiable.hpp"
#include "samo/errors.hpp"
#include "samo/types.hpp"

namespace samo::mgda {

struct DescentStep {
  /// d = -sum_k w_k grad_k.
  Eigen::VectorXd direction;
  /// Convex weights on the unit simplex.
  Eigen::VectorXd weights;
  double norm = 0.0;
};

struct SimplexQpResult {
  Eigen::VectorXd weights;
  /// w' G w before the first and after every iteration.
  std::vector<double> objective;
  double gap = 0.0;
  std::size_t iterations = 0;
};

/// Minimises w' G w over the unit simplex for a positive semidefinite Gram
/// matrix G with pairwise Frank-Wolfe steps and exact line search, until the
/// Frank-Wolfe duality gap drops below gap_tolerance * max(1, max_k G_kk).
SimplexQpResult solve_simplex_qp(const Eigen::MatrixXd& gram, double gap_tolerance = 1e-10,
                                 std::size_t max_iterations = 100000);

/// Minimum-norm element of the convex hull of the Jacobian rows (K x N).
/// K = 2 is solved in closed form; identical gradients give (1/2, 1/2).
DescentStep common_descent_direction(const Eigen::MatrixXd& jacobian);

/// Distance of the origin to the convex hull of the gradients; zero exactly
/// at Pareto-critical points.
double kkt_residual(const Eigen::MatrixXd& jacobian);

struct MgdaConfig {
  double learning_rate = 0.05;
  std::size_t max_iterations = 10000;
  /// Stop once |d| falls below this value.
  double tolerance = 1e-6;
  std::size_t starts = 100;
  std::uint64_t seed = 0;
  /// Halve the step until the weighted objective sum_k w_k g_k decreases.
  bool backtracking = false;
  /// Keep per-start traces in multistart results.
  bool keep_traces = false;

  void validate() const;
  friend bool operator==(const MgdaConfig&, const MgdaConfig&) = default;
};

struct TraceEntry {
  double norm = 0.0;
  std::vector<double> objectives;
  /// sum_k w_k g_k at the iterate, with w from this iteration's subproblem.
  double weighted_objective = 0.0;
};

struct MgdaRun {
  DecisionVector x;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<TraceEntry> trace;
};

/// Raised when the map produces a non-finite value or gradient; carries the
/// iterations completed so far.
class IterationError : public SolverError {
 public:
  IterationError(const std::string& what, std::vector<TraceEntry> trace)
      : SolverError(what), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Projected multiple-gradient descent x <- clamp(x + eta d). Steps are taken
/// in box-normalised coordinates (each axis mapped onto [-1, 1]), so eta and
/// the tolerance do not depend on the physical width of the box. Converged
/// means |d| < tolerance, or that the projected step is shorter than
/// eta * tolerance (a critical point on the boundary of the box).
MgdaRun mgda_run(const DifferentiableMap& model, const DecisionVector& x0, const BoxBounds& bounds,
                 const MgdaConfig& cfg);

struct MultistartResult {
  ParetoApproximation pareto;
  std::size_t converged = 0;
  std::size_t dropped = 0;
  /// One entry per start, filled when cfg.keep_traces is set.
  std::vector<MgdaRun> runs;
};

/// mgda_run from cfg.starts Latin hypercube points; converged end points are
/// filtered for non-dominance on the model's objectives.
MultistartResult multistart_mgda(const DifferentiableMap& model, const BoxBounds& bounds,
                                 const MgdaConfig& cfg, std::size_t jobs = 1);

}  // namespace samo::mgda
