#include "samo/rbf.hpp"

#include <cmath>
#include <limits>

#include "json_eigen.hpp"
#include "samo/log.hpp"

namespace samo::surrogate {

RbfModel::RbfModel(Scaler in, Scaler out, Eigen::MatrixXd centers, Eigen::MatrixXd weights,
                   double sigma, double lambda, double residual)
    : SurrogateModel(std::move(in), std::move(out)),
      centers_(std::move(centers)),
      weights_(std::move(weights)),
      sigma_(sigma),
      lambda_(lambda),
      residual_(residual) {}

namespace {

bool has_duplicate_rows(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
      if (m.row(i) == m.row(j)) return true;
    }
  }
  return false;
}

}  // namespace

RbfModel RbfModel::fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double sigma,
                       double lambda) {
  if (x.rows() < 1) throw EmptyInputError("fit_rbf: no samples");
  if (x.rows() != y.rows()) throw DimensionError("fit_rbf: input/target row mismatch");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("fit_rbf: sigma must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("fit_rbf: lambda must be >= 0");

  auto in = Scaler::fit_minmax(x);
  auto out = Scaler::fit_minmax(y);
  Eigen::MatrixXd centers = in.transform_rows(x);
  const Eigen::MatrixXd targets = out.transform_rows(y);

  if (lambda == 0.0 && has_duplicate_rows(centers)) {
    throw SolverError("fit_rbf: duplicate centres make the kernel matrix singular; use lambda > 0");
  }

  const Eigen::Index s = centers.rows();
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd system(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    system(i, i) = 1.0 + lambda;
    for (Eigen::Index j = i + 1; j < s; ++j) {
      const double phi = std::exp(-(centers.row(i) - centers.row(j)).squaredNorm() * inv_two_sigma_sq);
      system(i, j) = phi;
      system(j, i) = phi;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    throw SolverError("fit_rbf: kernel system is not positive definite (sigma = " +
                      std::to_string(sigma) + ", lambda = " + std::to_string(lambda) +
                      "); increase lambda");
  }
  Eigen::MatrixXd weights = llt.solve(targets);
  weights += llt.solve(targets - system * weights);  // one refinement sweep
  const double residual = (system * weights - targets).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual) || !weights.allFinite()) {
    throw SolverError("fit_rbf: non-finite solution of the kernel system");
  }
  return RbfModel(std::move(in), std::move(out), std::move(centers), std::move(weights), sigma,
                  lambda, residual);
}

Eigen::MatrixXd RbfModel::predict_scaled(const Eigen::MatrixXd& u_cols) const {
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma_ * sigma_);
  Eigen::MatrixXd out(weights_.cols(), u_cols.cols());
  Eigen::VectorXd phi(centers_.rows());
  for (Eigen::Index c = 0; c < u_cols.cols(); ++c) {
    phi = ((centers_.rowwise() - u_cols.col(c).transpose()).rowwise().squaredNorm() *
           -inv_two_sigma_sq)
              .array()
              .exp();
    out.col(c) = weights_.transpose() * phi;
  }
  return out;
}

Eigen::MatrixXd RbfModel::jacobian_scaled(const Eigen::VectorXd& u) const {
  const double inv_sigma_sq = 1.0 / (sigma_ * sigma_);
  // diff_i = u - c_i, dphi_i/du = -phi_i diff_i / sigma^2
  const Eigen::MatrixXd diff = (-centers_).rowwise() + u.transpose();
  const Eigen::VectorXd phi = (diff.rowwise().squaredNorm() * (-0.5 * inv_sigma_sq)).array().exp();
  return -inv_sigma_sq * weights_.transpose() * phi.asDiagonal() * diff;
}

nlohmann::json RbfModel::to_json() const {
  return {{"kind", "rbf"},
          {"kernel", "gaussian"},
          {"sigma", sigma_},
          {"lambda", lambda_},
          {"solve_residual", residual_},
          {"input_scaler", input_scaler().to_json()},
          {"output_scaler", output_scaler().to_json()},
          {"centers", detail::matrix_to_json(centers_)},
          {"weights", detail::matrix_to_json(weights_)}};
}

RbfModel RbfModel::from_json(const nlohmann::json& j) {
  if (j.at("kind").get<std::string>() != "rbf") throw IoError("RbfModel::from_json: wrong kind");
  return RbfModel(Scaler::from_json(j.at("input_scaler")), Scaler::from_json(j.at("output_scaler")),
                  detail::matrix_from_json(j.at("centers")), detail::matrix_from_json(j.at("weights")),
                  j.at("sigma").get<double>(), j.at("lambda").get<double>(),
                  j.value("solve_residual", 0.0));
}

RbfModel fit_rbf(const Dataset& data, double sigma, double lambda) {
  if (data.size() < 2) throw EmptyInputError("fit_rbf: need at least two samples");
  const auto m = to_matrices(data);
  return RbfModel::fit(m.x, m.y, sigma, lambda);
}

std::vector<double> default_width_grid() { return {0.1, 0.5, 1.0, 2.0, 5.0}; }

WidthSelection select_rbf_width(const Dataset& data, std::span<const double> grid,
                                std::size_t folds, double lambda) {
  if (grid.empty()) throw ConfigError("select_rbf_width: empty width grid");
  if (data.size() < 2) throw EmptyInputError("select_rbf_width: need at least two samples");
  if (folds < 2) throw ConfigError("select_rbf_width: need at least two folds");

  WidthSelection sel;
  sel.folds = folds;
  if (data.size() < folds) {
    sel.folds = data.size();
    log::warning("select_rbf_width: only " + std::to_string(data.size()) +
                 " samples; reducing to " + std::to_string(sel.folds) + " folds");
  }

  const auto m = to_matrices(data);
  const Scaler target_scaler = Scaler::fit_minmax(m.y);
  const Eigen::Index s = m.x.rows();

  for (double sigma : grid) {
    double sse = 0.0;
    bool failed = false;
    for (std::size_t f = 0; f < sel.folds && !failed; ++f) {
      std::vector<Eigen::Index> train, test;
      for (Eigen::Index i = 0; i < s; ++i) {
        (static_cast<std::size_t>(i) % sel.folds == f ? test : train).push_back(i);
      }
      const Eigen::MatrixXd xtr = m.x(train, Eigen::all);
      const Eigen::MatrixXd ytr = m.y(train, Eigen::all);
      try {
        const auto model = RbfModel::fit(xtr, ytr, sigma, lambda);
        const Eigen::MatrixXd pred = model.predict_rows(m.x(test, Eigen::all));
        const Eigen::MatrixXd err = target_scaler.transform_rows(pred) -
                                    target_scaler.transform_rows(m.y(test, Eigen::all));
        sse += err.squaredNorm();
      } catch (const SolverError&) {
        failed = true;
      }
    }
    const double mse = failed ? std::numeric_limits<double>::infinity()
                              : sse / static_cast<double>(s * m.y.cols());
    sel.cv_mse.push_back(std::isfinite(mse) ? mse : std::numeric_limits<double>::infinity());
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool better = sel.cv_mse[i] < sel.cv_mse[best] ||
                        (sel.cv_mse[i] == sel.cv_mse[best] && grid[i] < grid[best]);
    if (better) best = i;
  }
  sel.sigma = grid[best];
  return sel;
}

}  // namespace samo::surrogate
