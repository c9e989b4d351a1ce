#pragma once

#include <cstdint>
#include <vector>

#include "samo/surrogate.hpp"

namespace samo::surrogate {

struct TrainConfig {
  std::size_t epochs = 4000;
  double learning_rate = 3e-3;
  /// 0 trains full batch.
  std::size_t batch_size = 0;
  double validation_fraction = 0.2;
  std::size_t patience = 1000;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::vector<std::size_t> hidden_layers{64, 64};

  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct EpochLoss {
  double train = 0.0;
  double validation = 0.0;
};

/// Fully connected tanh network with a linear output layer.
class MlpModel final : public SurrogateModel {
 public:
  struct Layer {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;
  };

  std::string kind() const override { return "mlp"; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  std::size_t parameter_count() const;

  /// history[0] holds the losses of the initial weights, history[e] those
  /// after epoch e.
  const std::vector<EpochLoss>& history() const noexcept { return history_; }
  std::size_t best_epoch() const noexcept { return best_epoch_; }

  nlohmann::json to_json() const override;
  static MlpModel from_json(const nlohmann::json& j);

 protected:
  Eigen::MatrixXd predict_scaled(const Eigen::MatrixXd& u_cols) const override;
  Eigen::MatrixXd jacobian_scaled(const Eigen::VectorXd& u) const override;

 private:
  friend MlpModel fit_mlp(const Dataset& data, const TrainConfig& cfg);
  MlpModel(Scaler in, Scaler out, std::vector<Layer> layers, std::vector<EpochLoss> history,
           std::size_t best_epoch);

  std::vector<Layer> layers_;
  std::vector<EpochLoss> history_;
  std::size_t best_epoch_ = 0;
};

/// Seeded 80:20 split, Adam on the mean squared error of scaled targets, and
/// the weights of the epoch with the lowest validation loss. Needs >= 5
/// samples. Throws TrainingError (naming the epoch) on a non-finite loss.
MlpModel fit_mlp(const Dataset& data, const TrainConfig& cfg);

}  // namespace samo::surrogate
