#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace samo {

/// Smooth vector-valued map R^N -> R^K with an analytic Jacobian. Implemented
/// by trained surrogates and by closed-form test functions.
class DifferentiableMap {
 public:
  virtual ~DifferentiableMap() = default;

  virtual std::size_t input_dimension() const = 0;
  virtual std::size_t output_dimension() const = 0;

  virtual Eigen::VectorXd value(const Eigen::VectorXd& x) const = 0;
  /// K x N matrix of partial derivatives.
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const = 0;
};

}  // namespace samo
