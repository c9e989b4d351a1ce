#include "samo/scaler.hpp"

#include <cmath>

#include "samo/errors.hpp"

namespace samo::surrogate {

Scaler::Scaler(Eigen::VectorXd shift, Eigen::VectorXd scale)
    : shift_(std::move(shift)), scale_(std::move(scale)) {
  if (shift_.size() != scale_.size()) throw DimensionError("Scaler: shift/scale length mismatch");
  for (Eigen::Index i = 0; i < scale_.size(); ++i) {
    if (!(scale_(i) > 0.0) || !std::isfinite(scale_(i)) || !std::isfinite(shift_(i))) {
      throw DomainError("Scaler: scale must be positive and finite");
    }
  }
}

Scaler Scaler::fit_minmax(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw EmptyInputError("Scaler::fit_minmax: no rows");
  const Eigen::VectorXd lo = rows.colwise().minCoeff().transpose();
  const Eigen::VectorXd hi = rows.colwise().maxCoeff().transpose();
  Eigen::VectorXd shift = 0.5 * (lo + hi);
  Eigen::VectorXd scale = 0.5 * (hi - lo);
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    if (!(scale(i) > 0.0)) scale(i) = 1.0;
  }
  return Scaler(std::move(shift), std::move(scale));
}

Eigen::VectorXd Scaler::transform(const Eigen::VectorXd& v) const {
  if (v.size() != shift_.size()) throw DimensionError("Scaler::transform: length mismatch");
  return (v - shift_).cwiseQuotient(scale_);
}

Eigen::VectorXd Scaler::inverse(const Eigen::VectorXd& u) const {
  if (u.size() != shift_.size()) throw DimensionError("Scaler::inverse: length mismatch");
  return u.cwiseProduct(scale_) + shift_;
}

Eigen::MatrixXd Scaler::transform_rows(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != shift_.size()) throw DimensionError("Scaler::transform_rows: width mismatch");
  return (rows.rowwise() - shift_.transpose()).array().rowwise() / scale_.transpose().array();
}

Eigen::MatrixXd Scaler::inverse_rows(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != shift_.size()) throw DimensionError("Scaler::inverse_rows: width mismatch");
  Eigen::MatrixXd out = rows.array().rowwise() * scale_.transpose().array();
  return out.rowwise() + shift_.transpose();
}

nlohmann::json Scaler::to_json() const {
  return {{"shift", std::vector<double>(shift_.data(), shift_.data() + shift_.size())},
          {"scale", std::vector<double>(scale_.data(), scale_.data() + scale_.size())}};
}

Scaler Scaler::from_json(const nlohmann::json& j) {
  const auto shift = j.at("shift").get<std::vector<double>>();
  const auto scale = j.at("scale").get<std::vector<double>>();
  return Scaler(Eigen::Map<const Eigen::VectorXd>(shift.data(), static_cast<Eigen::Index>(shift.size())),
                Eigen::Map<const Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size())));
}

}  // namespace samo::surrogate
