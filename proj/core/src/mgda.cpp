#include "samo/mgda.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "samo/log.hpp"
#include "samo/parallel.hpp"
#include "samo/random.hpp"
#include "samo/pareto.hpp"
#include "samo/sampling.hpp"

namespace samo::mgda {

SimplexQpResult solve_simplex_qp(const Eigen::MatrixXd& gram, double gap_tolerance,
                                 std::size_t max_iterations) {
  const Eigen::Index k = gram.rows();
  if (k == 0 || gram.cols() != k) throw DimensionError("solve_simplex_qp: Gram matrix must be square");
  if (!gram.allFinite()) throw DomainError("solve_simplex_qp: non-finite Gram matrix");

  SimplexQpResult res;
  Eigen::Index start = 0;
  gram.diagonal().minCoeff(&start);
  res.weights = Eigen::VectorXd::Zero(k);
  res.weights(start) = 1.0;

  const double threshold = gap_tolerance * std::max(1.0, gram.diagonal().maxCoeff());
  Eigen::VectorXd gw = gram * res.weights;  // half the gradient
  res.objective.push_back(res.weights.dot(gw));

  while (res.iterations < max_iterations) {
    Eigen::Index toward = 0;
    gw.minCoeff(&toward);
    Eigen::Index away = -1;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (res.weights(i) > 0.0 && (away < 0 || gw(i) > gw(away))) away = i;
    }
    res.gap = 2.0 * (res.weights.dot(gw) - gw(toward));
    if (res.gap <= threshold || away == toward) break;

    // Move mass from the away vertex to the Frank-Wolfe vertex.
    const double slope = gw(toward) - gw(away);
    const double curvature = gram(toward, toward) - 2.0 * gram(toward, away) + gram(away, away);
    const double cap = res.weights(away);
    double step = curvature > 0.0 ? std::min(cap, -slope / curvature) : cap;
    step = std::max(step, 0.0);
    if (step == 0.0) break;
    res.weights(toward) += step;
    res.weights(away) -= step;
    if (step == cap) res.weights(away) = 0.0;
    gw = gram * res.weights;
    res.objective.push_back(std::min(res.objective.back(), res.weights.dot(gw)));
    ++res.iterations;
  }
  return res;
}

DescentStep common_descent_direction(const Eigen::MatrixXd& jacobian) {
  const Eigen::Index k = jacobian.rows();
  if (k == 0 || jacobian.cols() == 0) throw DimensionError("common_descent_direction: empty Jacobian");
  if (!jacobian.allFinite()) throw DomainError("common_descent_direction: non-finite Jacobian");

  DescentStep step;
  if (k == 1) {
    step.weights = Eigen::VectorXd::Ones(1);
  } else if (k == 2) {
    const Eigen::VectorXd g1 = jacobian.row(0).transpose();
    const Eigen::VectorXd g2 = jacobian.row(1).transpose();
    const double denom = (g1 - g2).squaredNorm();
    double w1 = 0.5;
    if (denom > 0.0) w1 = std::clamp((g2 - g1).dot(g2) / denom, 0.0, 1.0);
    step.weights = Eigen::Vector2d(w1, 1.0 - w1);
  } else {
    step.weights = solve_simplex_qp(jacobian * jacobian.transpose()).weights;
  }
  step.direction = -(jacobian.transpose() * step.weights);
  step.norm = step.direction.norm();
  return step;
}

double kkt_residual(const Eigen::MatrixXd& jacobian) { return common_descent_direction(jacobian).norm; }

void MgdaConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("MgdaConfig: learning_rate must be > 0");
  }
  if (!(tolerance > 0.0)) throw ConfigError("MgdaConfig: tolerance must be > 0");
  if (max_iterations == 0) throw ConfigError("MgdaConfig: max_iterations must be >= 1");
  if (starts == 0) throw ConfigError("MgdaConfig: starts must be >= 1");
}

namespace {

/// The model seen through box-normalised coordinates u in [-1, 1]^N.
struct NormalisedView {
  const DifferentiableMap& model;
  Eigen::VectorXd center;
  Eigen::VectorXd half_width;

  NormalisedView(const DifferentiableMap& m, const BoxBounds& bounds) : model(m) {
    const auto n = static_cast<Eigen::Index>(bounds.dimension());
    center.resize(n);
    half_width.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(i);
      center(i) = 0.5 * (bounds.lower()[j] + bounds.upper()[j]);
      half_width(i) = 0.5 * bounds.width(j);
    }
  }
  Eigen::VectorXd to_x(const Eigen::VectorXd& u) const {
    return center + half_width.cwiseProduct(u);
  }
  Eigen::VectorXd value(const Eigen::VectorXd& u) const { return model.value(to_x(u)); }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const {
    return model.jacobian(to_x(u)) * half_width.asDiagonal();
  }
};

std::vector<double> as_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

MgdaRun mgda_run(const DifferentiableMap& model, const DecisionVector& x0, const BoxBounds& bounds,
                 const MgdaConfig& cfg) {
  cfg.validate();
  const std::size_t n = bounds.dimension();
  if (x0.size() != n || model.input_dimension() != n) {
    throw DimensionError("mgda_run: dimension mismatch between start point, box and model");
  }
  if (!bounds.contains(x0)) throw DomainError("mgda_run: start point outside the box");

  const NormalisedView view(model, bounds);
  Eigen::VectorXd u(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    u(e) = view.half_width(e) > 0.0 ? (x0[i] - view.center(e)) / view.half_width(e) : 0.0;
  }

  MgdaRun run;
  Eigen::VectorXd values = view.value(u);
  while (run.iterations < cfg.max_iterations) {
    ++run.iterations;
    const Eigen::MatrixXd jac = view.jacobian(u);
    if (!values.allFinite() || !jac.allFinite()) {
      throw IterationError("mgda_run: non-finite model output at iteration " +
                               std::to_string(run.iterations),
                           std::move(run.trace));
    }
    const DescentStep step = common_descent_direction(jac);
    run.trace.push_back({step.norm, as_std(values), step.weights.dot(values)});
    if (step.norm < cfg.tolerance) {
      run.converged = true;
      break;
    }

    double eta = cfg.learning_rate;
    Eigen::VectorXd next = (u + eta * step.direction).cwiseMax(-1.0).cwiseMin(1.0);
    Eigen::VectorXd next_values = view.value(next);
    if (cfg.backtracking) {
      const double current = step.weights.dot(values);
      for (int halvings = 0; halvings < 40 && !(step.weights.dot(next_values) < current); ++halvings) {
        eta *= 0.5;
        next = (u + eta * step.direction).cwiseMax(-1.0).cwiseMin(1.0);
        next_values = view.value(next);
      }
    }
    if ((next - u).norm() < eta * cfg.tolerance) {
      // The box absorbs the step: critical for the box-constrained problem
      // even though |d| itself stays above the tolerance.
      run.converged = true;
      break;
    }
    u = std::move(next);
    values = std::move(next_values);
  }

  std::vector<double> x = as_std(view.to_x(u));
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], bounds.lower()[i], bounds.upper()[i]);
  run.x = DecisionVector(std::move(x));
  return run;
}

MultistartResult multistart_mgda(const DifferentiableMap& model, const BoxBounds& bounds,
                                 const MgdaConfig& cfg, std::size_t jobs) {
  cfg.validate();
  const auto plan = sampling::latin_hypercube(cfg.starts, bounds, derive_seed(cfg.seed, "mgda-starts"));

  std::vector<std::optional<MgdaRun>> runs(cfg.starts);
  parallel_for(cfg.starts, jobs, [&](std::size_t i) {
    try {
      runs[i] = mgda_run(model, plan.points[i], bounds, cfg);
    } catch (const IterationError& e) {
      log::warning(std::string("multistart_mgda: start ") + std::to_string(i) + " failed: " + e.what());
    }
  });

  MultistartResult result;
  std::vector<DecisionVector> xs;
  std::vector<ObjectiveVector> ys;
  for (auto& r : runs) {
    if (r && r->converged) {
      ++result.converged;
      const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(r->x.data().data(),
                                                                   static_cast<Eigen::Index>(r->x.size()));
      xs.push_back(r->x);
      ys.push_back(ObjectiveVector(as_std(model.value(x))));
    } else {
      ++result.dropped;
    }
    if (cfg.keep_traces && r) result.runs.push_back(std::move(*r));
  }
  if (result.dropped > 0) {
    log::info("multistart_mgda: " + std::to_string(result.dropped) + " of " +
              std::to_string(cfg.starts) + " starts did not converge");
  }
  if (!ys.empty()) {
    std::vector<DecisionVector> keep_x;
    std::vector<ObjectiveVector> keep_y;
    for (auto i : non_dominated_filter(ys)) {
      keep_x.push_back(xs[i]);
      keep_y.push_back(ys[i]);
    }
    result.pareto = ParetoApproximation(std::move(keep_x), std::move(keep_y));
  }
  return result;
}

}  // namespace samo::mgda
