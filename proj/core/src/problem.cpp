#include "samo/problem.hpp"

#include <cmath>
#include <numbers>

#include "samo/csv.hpp"
#include "samo/random.hpp"

namespace samo::problems {

Problem::Problem(std::string name, std::size_t objectives, BoxBounds bounds, Evaluator evaluator,
                 CostClass cost, FrontGenerator front, ArtifactWriter artifacts)
    : name_(std::move(name)),
      objectives_(objectives),
      bounds_(std::move(bounds)),
      evaluator_(std::move(evaluator)),
      cost_(cost),
      front_(std::move(front)),
      artifacts_(std::move(artifacts)) {
  if (objectives_ < 2) throw ConfigError("Problem '" + name_ + "': need at least two objectives");
  if (!evaluator_) throw ConfigError("Problem '" + name_ + "': missing evaluator");
}

ObjectiveVector Problem::evaluate(const DecisionVector& x) const {
  if (x.size() != dimension()) {
    throw DimensionError("Problem '" + name_ + "': expected " + std::to_string(dimension()) +
                         " decision variables, got " + std::to_string(x.size()));
  }
  auto y = evaluator_(x);
  if (y.size() != objectives_) {
    throw DimensionError("Problem '" + name_ + "': evaluator returned " +
                         std::to_string(y.size()) + " objectives");
  }
  return y;
}

std::vector<ObjectiveVector> Problem::reference_front(std::size_t count) const {
  if (!front_) throw ConfigError("Problem '" + name_ + "' has no known Pareto front");
  return front_(count);
}

void Problem::write_artifacts(const std::filesystem::path& directory) const {
  if (artifacts_) artifacts_(directory);
}

// --- quarter-car benchmark -------------------------------------------------

QuarterCarBenchmark::QuarterCarBenchmark() : QuarterCarBenchmark(Options{}) {}

QuarterCarBenchmark::QuarterCarBenchmark(Options options) : options_(std::move(options)) {
  if (options_.dimension == 0) throw ConfigError("QuarterCarBenchmark: dimension must be >= 1");
  if (!(options_.half_width > 0.0)) throw ConfigError("QuarterCarBenchmark: half_width must be > 0");
  if (!(options_.max_relative_swing > 0.0 && options_.max_relative_swing < 1.0)) {
    throw ConfigError("QuarterCarBenchmark: max_relative_swing must lie in (0, 1)");
  }
  if (!(options_.transient_fraction >= 0.0 && options_.transient_fraction < 1.0)) {
    throw ConfigError("QuarterCarBenchmark: transient_fraction must lie in [0, 1)");
  }
  options_.nominal.validate();
  options_.excitation.validate();

  Rng rng(options_.projection_seed);
  projection_.resize(5, static_cast<Eigen::Index>(options_.dimension));
  for (Eigen::Index r = 0; r < projection_.rows(); ++r) {
    for (Eigen::Index c = 0; c < projection_.cols(); ++c) projection_(r, c) = standard_normal(rng);
    projection_.row(r) /= projection_.row(r).lpNorm<1>();
  }
}

BoxBounds QuarterCarBenchmark::bounds() const {
  return BoxBounds::uniform(options_.dimension, -options_.half_width, options_.half_width);
}

QuarterCarParams QuarterCarBenchmark::parameters_for(const DecisionVector& x) const {
  if (x.size() != options_.dimension) {
    throw DimensionError("QuarterCarBenchmark: expected " + std::to_string(options_.dimension) +
                         " coordinates, got " + std::to_string(x.size()));
  }
  const Eigen::Map<const Eigen::VectorXd> xv(x.data().data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd rel = projection_ * xv;
  const double scale = options_.max_relative_swing / options_.half_width;
  auto nominal = options_.nominal.to_array();
  for (std::size_t i = 0; i < nominal.size(); ++i) {
    nominal[i] *= 1.0 + scale * rel(static_cast<Eigen::Index>(i));
  }
  return QuarterCarParams::from_array(nominal);
}

ObjectiveVector QuarterCarBenchmark::evaluate_parameters(const QuarterCarParams& params) const {
  const auto traj = simulate_quarter_car(params, options_.excitation, options_.t0, options_.te,
                                         options_.dt);
  const auto begin = static_cast<std::size_t>(
      std::floor(options_.transient_fraction * static_cast<double>(traj.size() - 1)));
  return ObjectiveVector{amplitude(traj.wheel_load, begin, traj.size()),
                         amplitude(traj.body_acceleration, begin, traj.size())};
}

ObjectiveVector QuarterCarBenchmark::evaluate(const DecisionVector& x) const {
  if (x.size() != options_.dimension) {
    throw DimensionError("QuarterCarBenchmark: expected " + std::to_string(options_.dimension) +
                         " coordinates, got " + std::to_string(x.size()));
  }
  if (!bounds().contains(x)) {
    throw DomainError("QuarterCarBenchmark: decision vector outside the +-" +
                      std::to_string(options_.half_width) + " box");
  }
  return evaluate_parameters(parameters_for(x));
}

void QuarterCarBenchmark::write_projection_csv(const std::filesystem::path& path) const {
  csv::Table table;
  table.header = {"parameter"};
  for (Eigen::Index c = 0; c < projection_.cols(); ++c) {
    table.header.push_back("x_" + std::to_string(c + 1));
  }
  static constexpr const char* names[] = {"sprung_mass", "unsprung_mass", "suspension_stiffness",
                                          "suspension_damping", "tire_stiffness"};
  for (Eigen::Index r = 0; r < projection_.rows(); ++r) {
    std::vector<std::string> row{names[r]};
    for (Eigen::Index c = 0; c < projection_.cols(); ++c) row.push_back(csv::format(projection_(r, c)));
    table.rows.push_back(std::move(row));
  }
  csv::write(path, table);
}

ObjectiveVector evaluate_mbs(const DecisionVector& x) {
  static const QuarterCarBenchmark benchmark;
  return benchmark.evaluate(x);
}

Problem make_mbs_problem(const QuarterCarBenchmark::Options& options) {
  auto bench = std::make_shared<const QuarterCarBenchmark>(options);
  return Problem(
      "mbs", 2, bench->bounds(), [bench](const DecisionVector& x) { return bench->evaluate(x); },
      CostClass::expensive, {},
      [bench](const std::filesystem::path& dir) {
        bench->write_projection_csv(dir / "projection_matrix.csv");
      });
}

// --- analytic problems -----------------------------------------------------

double branin(double x1, double x2) {
  constexpr double pi = std::numbers::pi;
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double q = x2 - b * x1 * x1 + c * x1 - 6.0;
  return q * q + 10.0 * (1.0 - t) * std::cos(x1) + 10.0;
}

namespace {

Problem two_paraboloids(std::size_t n) {
  const double a_sq = 0.25 * static_cast<double>(n);  // |a|^2 with a = (0.5, ..., 0.5)
  auto eval = [](const DecisionVector& x) {
    double f1 = 0.0, f2 = 0.0;
    for (double xi : x) {
      f1 += (xi - 0.5) * (xi - 0.5);
      f2 += (xi + 0.5) * (xi + 0.5);
    }
    return ObjectiveVector{f1, f2};
  };
  // Pareto set {t a : t in [-1, 1]} maps to ((1-t)^2 |a|^2, (1+t)^2 |a|^2).
  auto front = [a_sq](std::size_t count) {
    std::vector<ObjectiveVector> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
      pts.push_back(ObjectiveVector{(1 - t) * (1 - t) * a_sq, (1 + t) * (1 + t) * a_sq});
    }
    return pts;
  };
  return Problem("two-paraboloids", 2, BoxBounds::uniform(n, -1.0, 1.0), eval, CostClass::cheap,
                 front);
}

Problem zdt1(std::size_t n) {
  if (n < 2) throw ConfigError("zdt1: dimension must be >= 2");
  auto eval = [n](const DecisionVector& x) {
    double sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) sum += x[i];
    const double g = 1.0 + 9.0 * sum / static_cast<double>(n - 1);
    const double f1 = x[0];
    return ObjectiveVector{f1, g * (1.0 - std::sqrt(f1 / g))};
  };
  auto front = [](std::size_t count) {
    std::vector<ObjectiveVector> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double f1 = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      pts.push_back(ObjectiveVector{f1, 1.0 - std::sqrt(f1)});
    }
    return pts;
  };
  return Problem("zdt1", 2, BoxBounds::uniform(n, 0.0, 1.0), eval, CostClass::cheap, front);
}

Problem branin_pair() {
  auto eval = [](const DecisionVector& x) {
    return ObjectiveVector{branin(x[0], x[1]), branin(x[0] - 2.5, x[1] - 2.5)};
  };
  return Problem("branin-pair", 2, BoxBounds({-5.0, 0.0}, {10.0, 15.0}), eval, CostClass::cheap);
}

}  // namespace

Problem make_analytic_problem(std::string_view name, std::size_t dimension) {
  if (name == "two-paraboloids") return two_paraboloids(dimension == 0 ? 4 : dimension);
  if (name == "zdt1") return zdt1(dimension == 0 ? 30 : dimension);
  if (name == "branin-pair") {
    if (dimension != 0 && dimension != 2) throw ConfigError("branin-pair is two-dimensional");
    return branin_pair();
  }
  throw ConfigError("unknown problem '" + std::string(name) +
                    "' (expected two-paraboloids, zdt1, branin-pair or mbs)");
}

Problem make_problem(std::string_view name, std::size_t dimension,
                     const QuarterCarBenchmark::Options& mbs_options) {
  if (name == "mbs") {
    auto opts = mbs_options;
    if (dimension != 0) opts.dimension = dimension;
    return make_mbs_problem(opts);
  }
  return make_analytic_problem(name, dimension);
}

}  // namespace samo::problems
