#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "samo/errors.hpp"

namespace samo {

struct DecisionTag {
  static constexpr const char* name = "decision vector";
};
struct ObjectiveTag {
  static constexpr const char* name = "objective vector";
};

/// Immutable vector of finite reals, tagged by the space it lives in so that
/// decision points and objective values cannot be mixed up.
template <class Tag>
class RealVector {
 public:
  RealVector() = default;

  explicit RealVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw DomainError(std::string(Tag::name) + ": non-finite value at index " +
                          std::to_string(i));
      }
    }
  }

  RealVector(std::initializer_list<double> values) : RealVector(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  std::vector<double> values_;
};

using DecisionVector = RealVector<DecisionTag>;
using ObjectiveVector = RealVector<ObjectiveTag>;

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Axis-aligned box [lower, upper] in decision space.
class BoxBounds {
 public:
  BoxBounds(std::vector<double> lower, std::vector<double> upper);

  /// The cube [lo, hi]^dimension.
  static BoxBounds uniform(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double width(std::size_t i) const noexcept { return upper_[i] - lower_[i]; }
  bool contains(const DecisionVector& x) const;

  friend bool operator==(const BoxBounds&, const BoxBounds&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Projects every coordinate of x into [lower_i, upper_i].
DecisionVector clamp_to_bounds(const DecisionVector& x, const BoxBounds& bounds);

/// One true (expensive) evaluation.
struct Sample {
  DecisionVector x;
  ObjectiveVector y;
  std::size_t iteration = 0;
};

/// Archive of expensive evaluations. Exact duplicate decision vectors are
/// rejected using bitwise coordinate equality.
class Dataset {
 public:
  Dataset() = default;

  void add(Sample sample);

  /// True when a sample with bitwise-identical coordinates is present.
  bool contains(const DecisionVector& x) const;

  /// Smallest Euclidean distance from x to any stored decision vector
  /// (infinity for an empty dataset).
  double nearest_distance(const DecisionVector& x) const;

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t input_dimension() const noexcept { return n_; }
  std::size_t output_dimension() const noexcept { return k_; }

  std::vector<ObjectiveVector> objectives() const;

 private:
  struct BitsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& bits) const noexcept;
  };

  std::vector<Sample> samples_;
  std::unordered_set<std::vector<std::uint64_t>, BitsHash> keys_;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
};

/// Index-aligned Pareto set / front pair. The front is mutually non-dominated.
class ParetoApproximation {
 public:
  ParetoApproximation() = default;
  ParetoApproximation(std::vector<DecisionVector> decision_set, std::vector<ObjectiveVector> front);

  std::size_t size() const noexcept { return front_.size(); }
  bool empty() const noexcept { return front_.empty(); }
  const std::vector<DecisionVector>& decision_set() const noexcept { return decision_set_; }
  const std::vector<ObjectiveVector>& front() const noexcept { return front_; }

 private:
  std::vector<DecisionVector> decision_set_;
  std::vector<ObjectiveVector> front_;
};

}  // namespace samo
