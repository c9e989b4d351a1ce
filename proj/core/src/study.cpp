#include "samo/study.hpp"

#include "samo/log.hpp"

namespace samo::driver {

std::uint64_t study_seed(std::uint64_t base_seed, std::size_t repetition) {
  return derive_seed(base_seed, "study-repetition", repetition);
}

std::vector<StudyRow> sample_size_study(const problems::Problem& problem, const StudyOptions& options,
                                        const SamoConfig& base, const StudyObserver& observer) {
  if (options.sizes.empty()) throw ConfigError("sample_size_study: no sample sizes");
  if (options.surrogates.empty()) throw ConfigError("sample_size_study: no surrogate kinds");
  if (options.repetitions == 0) throw ConfigError("sample_size_study: repetitions must be >= 1");

  std::vector<ObjectiveVector> reference;
  if (problem.has_reference_front()) reference = problem.reference_front(1000);

  std::vector<StudyRow> rows;
  for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
    for (auto kind : options.surrogates) {
      for (auto size : options.sizes) {
        StudyRow row;
        row.cell = {size, kind, rep};
        auto cfg = base;
        cfg.batch_size = size;
        cfg.surrogate = kind;
        cfg.seed = study_seed(base.seed, rep);
        try {
          const auto record = samo_run(problem, cfg);
          row.rounds = record.rounds.size();
          row.evaluations = record.evaluations();
          row.total_time = record.total_time;
          row.per_round_time = row.rounds > 0 ? record.total_time / static_cast<double>(row.rounds) : 0.0;
          row.status = record.termination;
          row.error = record.error;
          if (!reference.empty() && !record.sample_front.empty()) {
            row.igd = normalized_quality(reference, record.sample_front.front()).igd;
          }
          if (observer) observer(row.cell, record);
        } catch (const Error& e) {
          row.status = Termination::error;
          row.error = e.what();
          log::error("sample_size_study: s = " + std::to_string(size) + " (" +
                     std::string(to_string(kind)) + "): " + e.what());
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace samo::driver
