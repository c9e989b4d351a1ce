#include "samo/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json_eigen.hpp"
#include "samo/random.hpp"

namespace samo::surrogate {

void TrainConfig::validate() const {
  if (epochs == 0) throw ConfigError("TrainConfig: epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("TrainConfig: learning_rate must be > 0");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw ConfigError("TrainConfig: validation_fraction must lie in (0, 1)");
  }
  if (patience == 0) throw ConfigError("TrainConfig: patience must be >= 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("TrainConfig: Adam decay rates must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("TrainConfig: epsilon must be > 0");
  if (hidden_layers.empty()) throw ConfigError("TrainConfig: need at least one hidden layer");
  for (auto w : hidden_layers) {
    if (w == 0) throw ConfigError("TrainConfig: hidden layer width must be >= 1");
  }
}

MlpModel::MlpModel(Scaler in, Scaler out, std::vector<Layer> layers,
                   std::vector<EpochLoss> history, std::size_t best_epoch)
    : SurrogateModel(std::move(in), std::move(out)),
      layers_(std::move(layers)),
      history_(std::move(history)),
      best_epoch_(best_epoch) {}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

Eigen::MatrixXd MlpModel::predict_scaled(const Eigen::MatrixXd& u_cols) const {
  Eigen::MatrixXd a = u_cols;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::MatrixXd z = layers_[i].weight * a;
    z.colwise() += layers_[i].bias;
    a = i + 1 < layers_.size() ? Eigen::MatrixXd(z.array().tanh()) : z;
  }
  return a;
}

Eigen::MatrixXd MlpModel::jacobian_scaled(const Eigen::VectorXd& u) const {
  // Forward pass, then J = W_L D_{L-1} W_{L-1} ... D_1 W_1 with
  // D_i = diag(1 - tanh^2(z_i)).
  Eigen::VectorXd a = u;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(u.size(), u.size());
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::VectorXd z = layers_[i].weight * a + layers_[i].bias;
    jac = layers_[i].weight * jac;
    if (i + 1 < layers_.size()) {
      a = z.array().tanh();
      jac = (1.0 - a.array().square()).matrix().asDiagonal() * jac;
    }
  }
  return jac;
}

nlohmann::json MlpModel::to_json() const {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : layers_) {
    layers.push_back({{"weight", detail::matrix_to_json(l.weight)},
                      {"bias", detail::vector_to_json(l.bias)}});
  }
  std::vector<std::size_t> arch;
  arch.push_back(static_cast<std::size_t>(layers_.front().weight.cols()));
  for (const auto& l : layers_) arch.push_back(static_cast<std::size_t>(l.weight.rows()));
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& h : history_) hist.push_back({h.train, h.validation});
  return {{"kind", "mlp"},
          {"architecture", arch},
          {"activation", "tanh"},
          {"parameter_count", parameter_count()},
          {"best_epoch", best_epoch_},
          {"input_scaler", input_scaler().to_json()},
          {"output_scaler", output_scaler().to_json()},
          {"layers", layers},
          {"history", hist}};
}

MlpModel MlpModel::from_json(const nlohmann::json& j) {
  if (j.at("kind").get<std::string>() != "mlp") throw IoError("MlpModel::from_json: wrong kind");
  std::vector<Layer> layers;
  for (const auto& l : j.at("layers")) {
    layers.push_back({detail::matrix_from_json(l.at("weight")), detail::vector_from_json(l.at("bias"))});
  }
  if (layers.empty()) throw IoError("MlpModel::from_json: no layers");
  std::vector<EpochLoss> history;
  if (j.contains("history")) {
    for (const auto& h : j.at("history")) history.push_back({h.at(0).get<double>(), h.at(1).get<double>()});
  }
  return MlpModel(Scaler::from_json(j.at("input_scaler")), Scaler::from_json(j.at("output_scaler")),
                  std::move(layers), std::move(history), j.value("best_epoch", std::size_t{0}));
}

namespace {

using Layers = std::vector<MlpModel::Layer>;

double mse(const Layers& layers, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  Eigen::MatrixXd a = x;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    Eigen::MatrixXd z = layers[i].weight * a;
    z.colwise() += layers[i].bias;
    a = i + 1 < layers.size() ? Eigen::MatrixXd(z.array().tanh()) : z;
  }
  return (a - y).squaredNorm() / static_cast<double>(y.size());
}

/// Gradient of the mean squared error over the columns of (x, y).
void gradient(const Layers& layers, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, Layers& grad) {
  const std::size_t depth = layers.size();
  std::vector<Eigen::MatrixXd> acts(depth + 1);
  acts[0] = x;
  for (std::size_t i = 0; i < depth; ++i) {
    Eigen::MatrixXd z = layers[i].weight * acts[i];
    z.colwise() += layers[i].bias;
    acts[i + 1] = i + 1 < depth ? Eigen::MatrixXd(z.array().tanh()) : z;
  }
  Eigen::MatrixXd delta = (acts[depth] - y) * (2.0 / static_cast<double>(y.size()));
  for (std::size_t i = depth; i-- > 0;) {
    grad[i].weight.noalias() = delta * acts[i].transpose();
    grad[i].bias = delta.rowwise().sum();
    if (i > 0) {
      Eigen::MatrixXd back = layers[i].weight.transpose() * delta;
      delta = back.array() * (1.0 - acts[i].array().square());
    }
  }
}

Layers zeros_like(const Layers& layers) {
  Layers z;
  for (const auto& l : layers) {
    z.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                 Eigen::VectorXd::Zero(l.bias.size())});
  }
  return z;
}

}  // namespace

MlpModel fit_mlp(const Dataset& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.size() < 5) throw EmptyInputError("fit_mlp: need at least five samples");

  const auto m = to_matrices(data);
  auto in = Scaler::fit_minmax(m.x);
  auto out = Scaler::fit_minmax(m.y);
  const Eigen::MatrixXd xs = in.transform_rows(m.x).transpose();  // N x s
  const Eigen::MatrixXd ys = out.transform_rows(m.y).transpose();  // K x s

  Rng rng(cfg.seed);
  const auto s = static_cast<std::size_t>(xs.cols());
  std::vector<Eigen::Index> order(s);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (std::size_t i = s; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
  auto n_val = static_cast<std::size_t>(std::llround(cfg.validation_fraction * static_cast<double>(s)));
  n_val = std::clamp<std::size_t>(n_val, 1, s - 1);
  const std::vector<Eigen::Index> val_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  const std::vector<Eigen::Index> train_idx(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  const Eigen::MatrixXd x_train = xs(Eigen::all, train_idx);
  const Eigen::MatrixXd y_train = ys(Eigen::all, train_idx);
  const Eigen::MatrixXd x_val = xs(Eigen::all, val_idx);
  const Eigen::MatrixXd y_val = ys(Eigen::all, val_idx);

  // Glorot-uniform initialisation.
  std::vector<std::size_t> widths{static_cast<std::size_t>(xs.rows())};
  widths.insert(widths.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
  widths.push_back(static_cast<std::size_t>(ys.rows()));
  Layers layers;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    const auto fan_in = static_cast<Eigen::Index>(widths[i]);
    const auto fan_out = static_cast<Eigen::Index>(widths[i + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index c = 0; c < fan_in; ++c) {
      for (Eigen::Index r = 0; r < fan_out; ++r) w(r, c) = uniform(rng, -limit, limit);
    }
    layers.push_back({std::move(w), Eigen::VectorXd::Zero(fan_out)});
  }

  auto first_moment = zeros_like(layers);
  auto second_moment = zeros_like(layers);
  auto grad = zeros_like(layers);

  std::vector<EpochLoss> history;
  history.push_back({mse(layers, x_train, y_train), mse(layers, x_val, y_val)});
  Layers best = layers;
  std::size_t best_epoch = 0;
  double best_val = history.back().validation;

  const std::size_t n_train = train_idx.size();
  const std::size_t batch = cfg.batch_size == 0 || cfg.batch_size >= n_train ? n_train : cfg.batch_size;
  std::vector<Eigen::Index> perm(n_train);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::size_t step = 0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (batch < n_train) {
      for (std::size_t i = n_train; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    }
    for (std::size_t start = 0; start < n_train; start += batch) {
      if (batch == n_train) {
        gradient(layers, x_train, y_train, grad);
      } else {
        const std::size_t stop = std::min(n_train, start + batch);
        const std::vector<Eigen::Index> cols(perm.begin() + static_cast<std::ptrdiff_t>(start),
                                             perm.begin() + static_cast<std::ptrdiff_t>(stop));
        gradient(layers, x_train(Eigen::all, cols), y_train(Eigen::all, cols), grad);
      }
      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      auto adam = [&](auto& param, auto& m1, auto& m2, const auto& g) {
        m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * g;
        m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * g.cwiseProduct(g);
        param.array() -= cfg.learning_rate * (m1.array() / c1) /
                         ((m2.array() / c2).sqrt() + cfg.epsilon);
      };
      for (std::size_t l = 0; l < layers.size(); ++l) {
        adam(layers[l].weight, first_moment[l].weight, second_moment[l].weight, grad[l].weight);
        adam(layers[l].bias, first_moment[l].bias, second_moment[l].bias, grad[l].bias);
      }
    }

    const EpochLoss loss{mse(layers, x_train, y_train), mse(layers, x_val, y_val)};
    if (!std::isfinite(loss.train) || !std::isfinite(loss.validation)) {
      throw TrainingError("fit_mlp: non-finite loss at epoch " + std::to_string(epoch));
    }
    history.push_back(loss);
    if (loss.validation < best_val) {
      best_val = loss.validation;
      best_epoch = epoch;
      best = layers;
    } else if (epoch - best_epoch >= cfg.patience) {
      break;
    }
  }

  return MlpModel(std::move(in), std::move(out), std::move(best), std::move(history), best_epoch);
}

}  // namespace samo::surrogate
