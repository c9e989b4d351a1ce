#include "samo/types.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "samo/pareto.hpp"

namespace samo {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("euclidean_distance: length " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

BoxBounds::BoxBounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw DimensionError("BoxBounds: lower has " + std::to_string(lower_.size()) +
                         " entries, upper has " + std::to_string(upper_.size()));
  }
  if (lower_.empty()) throw EmptyInputError("BoxBounds: zero-dimensional box");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
      throw DomainError("BoxBounds: need finite lower < upper at index " + std::to_string(i));
    }
  }
}

BoxBounds BoxBounds::uniform(std::size_t dimension, double lo, double hi) {
  return BoxBounds(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

bool BoxBounds::contains(const DecisionVector& x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

DecisionVector clamp_to_bounds(const DecisionVector& x, const BoxBounds& bounds) {
  if (x.size() != bounds.dimension()) {
    throw DimensionError("clamp_to_bounds: vector has " + std::to_string(x.size()) +
                         " coordinates, bounds have " + std::to_string(bounds.dimension()));
  }
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], bounds.lower()[i], bounds.upper()[i]);
  }
  return DecisionVector(std::move(out));
}

namespace {

std::vector<std::uint64_t> bit_key(const DecisionVector& x) {
  std::vector<std::uint64_t> key(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) key[i] = std::bit_cast<std::uint64_t>(x[i]);
  return key;
}

}  // namespace

std::size_t Dataset::BitsHash::operator()(const std::vector<std::uint64_t>& bits) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : bits) {
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

void Dataset::add(Sample sample) {
  if (sample.x.empty() || sample.y.empty()) {
    throw EmptyInputError("Dataset::add: empty decision or objective vector");
  }
  if (samples_.empty()) {
    n_ = sample.x.size();
    k_ = sample.y.size();
  } else if (sample.x.size() != n_ || sample.y.size() != k_) {
    throw DimensionError("Dataset::add: sample shape (" + std::to_string(sample.x.size()) + ", " +
                         std::to_string(sample.y.size()) + ") does not match dataset (" +
                         std::to_string(n_) + ", " + std::to_string(k_) + ")");
  }
  auto key = bit_key(sample.x);
  if (!keys_.insert(std::move(key)).second) {
    throw DuplicateSampleError("Dataset::add: decision vector already sampled");
  }
  samples_.push_back(std::move(sample));
}

bool Dataset::contains(const DecisionVector& x) const { return keys_.contains(bit_key(x)); }

double Dataset::nearest_distance(const DecisionVector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) {
    best = std::min(best, euclidean_distance(s.x.values(), x.values()));
  }
  return best;
}

std::vector<ObjectiveVector> Dataset::objectives() const {
  std::vector<ObjectiveVector> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.y);
  return out;
}

ParetoApproximation::ParetoApproximation(std::vector<DecisionVector> decision_set,
                                         std::vector<ObjectiveVector> front)
    : decision_set_(std::move(decision_set)), front_(std::move(front)) {
  if (decision_set_.size() != front_.size()) {
    throw DimensionError("ParetoApproximation: " + std::to_string(decision_set_.size()) +
                         " decision vectors but " + std::to_string(front_.size()) +
                         " objective vectors");
  }
  for (std::size_t i = 0; i < front_.size(); ++i) {
    for (std::size_t j = 0; j < front_.size(); ++j) {
      if (i != j && dominates(front_[i], front_[j])) {
        throw DomainError("ParetoApproximation: front member " + std::to_string(i) +
                          " dominates member " + std::to_string(j));
      }
    }
  }
}

}  // namespace samo
