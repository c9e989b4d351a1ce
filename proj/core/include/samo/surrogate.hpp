#pragma once

#include <memory>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "samo/differentiable.hpp"
#include "samo/scaler.hpp"
#include "samo/types.hpp"

namespace samo::surrogate {

/// A trained approximation g(x; theta) of an expensive objective vector.
/// Immutable once trained; every query is const and thread-safe.
class SurrogateModel : public DifferentiableMap {
 public:
  virtual std::string kind() const = 0;

  const Scaler& input_scaler() const noexcept { return input_scaler_; }
  const Scaler& output_scaler() const noexcept { return output_scaler_; }

  std::size_t input_dimension() const override {
    return static_cast<std::size_t>(input_scaler_.dimension());
  }
  std::size_t output_dimension() const override {
    return static_cast<std::size_t>(output_scaler_.dimension());
  }

  /// Prediction in original units. Throws DimensionError on a size mismatch.
  ObjectiveVector predict(const DecisionVector& x) const;
  /// K x N Jacobian in original units.
  Eigen::MatrixXd input_jacobian(const DecisionVector& x) const;

  /// One sample per row, original units.
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& x_rows) const;

  Eigen::VectorXd value(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override;

  /// Self-describing artifact: kind, architecture, parameters and scalers.
  virtual nlohmann::json to_json() const = 0;

 protected:
  SurrogateModel() = default;
  SurrogateModel(Scaler input, Scaler output)
      : input_scaler_(std::move(input)), output_scaler_(std::move(output)) {}

  /// Scaled-space prediction for one sample per column.
  virtual Eigen::MatrixXd predict_scaled(const Eigen::MatrixXd& u_cols) const = 0;
  /// Scaled-space K x N Jacobian.
  virtual Eigen::MatrixXd jacobian_scaled(const Eigen::VectorXd& u) const = 0;

 private:
  void check_input(Eigen::Index n) const;

  Scaler input_scaler_;
  Scaler output_scaler_;
};

/// Dataset as (inputs, targets), one sample per row.
struct TrainingMatrices {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
};
TrainingMatrices to_matrices(const Dataset& data);

/// Rebuilds a model from SurrogateModel::to_json output.
std::unique_ptr<SurrogateModel> model_from_json(const nlohmann::json& j);

}  // namespace samo::surrogate
