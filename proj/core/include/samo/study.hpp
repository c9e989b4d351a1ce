#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "samo/samo.hpp"

namespace samo::driver {

struct StudyCell {
  std::size_t batch_size = 0;
  SurrogateKind surrogate = SurrogateKind::mlp;
  std::size_t repetition = 0;
};

struct StudyRow {
  StudyCell cell;
  std::size_t rounds = 0;
  std::size_t evaluations = 0;
  double total_time = 0.0;
  double per_round_time = 0.0;
  /// Normalised IGD of the sample front to the reference front, when known.
  std::optional<double> igd;
  Termination status = Termination::error;
  std::string error;
};

struct StudyOptions {
  std::vector<std::size_t> sizes{5, 10, 20, 30};
  std::vector<SurrogateKind> surrogates{SurrogateKind::mlp};
  std::size_t repetitions = 1;
};

/// Called after every cell with its full record (e.g. to persist it).
using StudyObserver = std::function<void(const StudyCell&, const RunRecord&)>;

/// Runs samo_run for every (repetition, surrogate, size) cell. The seed of a
/// run depends on the template seed and the repetition only, so all sizes of
/// one repetition share their seed. A failing cell is recorded and the study
/// moves on.
std::vector<StudyRow> sample_size_study(const problems::Problem& problem, const StudyOptions& options,
                                        const SamoConfig& base, const StudyObserver& observer = {});

/// Seed used for one repetition of a study.
std::uint64_t study_seed(std::uint64_t base_seed, std::size_t repetition);

}  // namespace samo::driver
