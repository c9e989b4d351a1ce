#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace samo::surrogate {

/// Per-coordinate affine map u = (v - shift) / scale, scale > 0.
class Scaler {
 public:
  Scaler() = default;
  Scaler(Eigen::VectorXd shift, Eigen::VectorXd scale);

  /// Maps the column-wise range of `rows` (one sample per row) onto [-1, 1].
  /// Constant columns get scale 1 and are only centered.
  static Scaler fit_minmax(const Eigen::MatrixXd& rows);

  Eigen::Index dimension() const noexcept { return shift_.size(); }
  const Eigen::VectorXd& shift() const noexcept { return shift_; }
  const Eigen::VectorXd& scale() const noexcept { return scale_; }

  Eigen::VectorXd transform(const Eigen::VectorXd& v) const;
  Eigen::VectorXd inverse(const Eigen::VectorXd& u) const;
  /// Row-wise versions (one sample per row).
  Eigen::MatrixXd transform_rows(const Eigen::MatrixXd& rows) const;
  Eigen::MatrixXd inverse_rows(const Eigen::MatrixXd& rows) const;

  nlohmann::json to_json() const;
  static Scaler from_json(const nlohmann::json& j);

 private:
  Eigen::VectorXd shift_;
  Eigen::VectorXd scale_;
};

}  // namespace samo::surrogate
