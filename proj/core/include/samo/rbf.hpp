#pragma once

#include <span>
#include <vector>

#include "samo/surrogate.hpp"

namespace samo::surrogate {

/// Gaussian-kernel interpolant phi(r) = exp(-r^2 / (2 sigma^2)) centred at
/// every (scaled) training input. Weights solve (Phi + lambda I) W = Y.
class RbfModel final : public SurrogateModel {
 public:
  /// Fits on raw inputs/targets (one sample per row). Needs at least one
  /// row; the public entry point fit_rbf requires two.
  static RbfModel fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double sigma, double lambda);

  std::string kind() const override { return "rbf"; }
  double sigma() const noexcept { return sigma_; }
  double lambda() const noexcept { return lambda_; }
  const Eigen::MatrixXd& centers() const noexcept { return centers_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  /// max |(Phi + lambda I) W - Y| after the solve, scaled units.
  double solve_residual() const noexcept { return residual_; }

  nlohmann::json to_json() const override;
  static RbfModel from_json(const nlohmann::json& j);

 protected:
  Eigen::MatrixXd predict_scaled(const Eigen::MatrixXd& u_cols) const override;
  Eigen::MatrixXd jacobian_scaled(const Eigen::VectorXd& u) const override;

 private:
  RbfModel(Scaler in, Scaler out, Eigen::MatrixXd centers, Eigen::MatrixXd weights, double sigma,
           double lambda, double residual);

  Eigen::MatrixXd centers_;  // s x N, scaled
  Eigen::MatrixXd weights_;  // s x K
  double sigma_ = 1.0;
  double lambda_ = 0.0;
  double residual_ = 0.0;
};

/// Throws SolverError when the kernel system cannot be solved (e.g. duplicate
/// centres with lambda = 0).
RbfModel fit_rbf(const Dataset& data, double sigma, double lambda = 1e-8);

struct WidthSelection {
  double sigma = 0.0;
  /// Cross-validated MSE per grid entry, in output-scaled units.
  std::vector<double> cv_mse;
  std::size_t folds = 0;
};

/// Width from `grid` with the lowest k-fold cross-validated MSE; ties go to
/// the smaller width. Sample i belongs to fold i mod k. Errors are measured
/// after mapping targets with the min-max scaler of the full dataset.
WidthSelection select_rbf_width(const Dataset& data, std::span<const double> grid,
                                std::size_t folds = 5, double lambda = 1e-8);

/// The paper-style width grid {0.1, 0.5, 1, 2, 5}.
std::vector<double> default_width_grid();

}  // namespace samo::surrogate
