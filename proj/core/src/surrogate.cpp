#include "samo/surrogate.hpp"

#include "samo/mlp.hpp"
#include "samo/rbf.hpp"

namespace samo::surrogate {

void SurrogateModel::check_input(Eigen::Index n) const {
  if (n != input_scaler_.dimension()) {
    throw DimensionError(kind() + " surrogate: expected " + std::to_string(input_scaler_.dimension()) +
                         " inputs, got " + std::to_string(n));
  }
}

Eigen::VectorXd SurrogateModel::value(const Eigen::VectorXd& x) const {
  check_input(x.size());
  const Eigen::MatrixXd u = input_scaler_.transform(x);
  const Eigen::VectorXd out = predict_scaled(u).col(0);
  return output_scaler_.inverse(out);
}

Eigen::MatrixXd SurrogateModel::jacobian(const Eigen::VectorXd& x) const {
  check_input(x.size());
  const Eigen::MatrixXd js = jacobian_scaled(input_scaler_.transform(x));
  // y = shift_y + scale_y * g(u), u = (x - shift_x) / scale_x
  return output_scaler_.scale().asDiagonal() * js *
         input_scaler_.scale().cwiseInverse().asDiagonal();
}

ObjectiveVector SurrogateModel::predict(const DecisionVector& x) const {
  const Eigen::Map<const Eigen::VectorXd> xv(x.data().data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd y = value(xv);
  return ObjectiveVector(std::vector<double>(y.data(), y.data() + y.size()));
}

Eigen::MatrixXd SurrogateModel::input_jacobian(const DecisionVector& x) const {
  const Eigen::Map<const Eigen::VectorXd> xv(x.data().data(), static_cast<Eigen::Index>(x.size()));
  return jacobian(xv);
}

Eigen::MatrixXd SurrogateModel::predict_rows(const Eigen::MatrixXd& x_rows) const {
  check_input(x_rows.cols());
  const Eigen::MatrixXd u_cols = input_scaler_.transform_rows(x_rows).transpose();
  return output_scaler_.inverse_rows(predict_scaled(u_cols).transpose());
}

TrainingMatrices to_matrices(const Dataset& data) {
  if (data.empty()) throw EmptyInputError("to_matrices: empty dataset");
  const auto s = static_cast<Eigen::Index>(data.size());
  TrainingMatrices m{Eigen::MatrixXd(s, static_cast<Eigen::Index>(data.input_dimension())),
                     Eigen::MatrixXd(s, static_cast<Eigen::Index>(data.output_dimension()))};
  for (Eigen::Index i = 0; i < s; ++i) {
    const auto& sample = data[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.x.cols(); ++j) m.x(i, j) = sample.x[static_cast<std::size_t>(j)];
    for (Eigen::Index j = 0; j < m.y.cols(); ++j) m.y(i, j) = sample.y[static_cast<std::size_t>(j)];
  }
  return m;
}

std::unique_ptr<SurrogateModel> model_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "rbf") return std::make_unique<RbfModel>(RbfModel::from_json(j));
  if (kind == "mlp") return std::make_unique<MlpModel>(MlpModel::from_json(j));
  throw ConfigError("model_from_json: unknown surrogate kind '" + kind + "'");
}

}  // namespace samo::surrogate
