#include "samo_cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace samo::cli {

using nlohmann::json;

namespace {

/// One JSON object being consumed; remembers which keys were read so that
/// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  Section child(const std::string& key) {
    seen_.insert(key);
    return Section(j_.at(key), field(key));
  }

  void read(const std::string& key, double& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key) + " must be a number");
    out = v.get<double>();
  }

  void read(const std::string& key, std::optional<double>& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    if (j_.at(key).is_null()) {
      out.reset();
      return;
    }
    double v = 0.0;
    read(key, v);
    out = v;
  }

  void read(const std::string& key, std::size_t& out) {
    if (!has(key)) return;
    out = unsigned_value(j_.at(key), field(key));
  }

  void read(const std::string& key, bool& out) {
    if (!has(key)) return;
    if (!j_.at(key).is_boolean()) throw ConfigError(field(key) + " must be true or false");
    out = j_.at(key).get<bool>();
  }

  void read(const std::string& key, std::string& out) {
    if (!has(key)) return;
    if (!j_.at(key).is_string()) throw ConfigError(field(key) + " must be a string");
    out = j_.at(key).get<std::string>();
  }

  void read(const std::string& key, std::vector<double>& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(field(key) + " must be an array of numbers");
    out.clear();
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(field(key) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
  }

  void read(const std::string& key, std::vector<std::size_t>& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(field(key) + " must be an array of integers");
    out.clear();
    for (const auto& e : v) out.push_back(unsigned_value(e, field(key)));
  }

  void read(const std::string& key, std::vector<std::string>& out) {
    if (!has(key)) return;
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(field(key) + " must be an array of strings");
    out.clear();
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError(field(key) + " must be an array of strings");
      out.push_back(e.get<std::string>());
    }
  }

  /// Throws for any key that was never looked at.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw ConfigError("unknown key " + field(key));
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string where() const { return path_.empty() ? "configuration" : path_; }

  static std::uint64_t unsigned_value(const json& v, const std::string& name) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(name + " must be a non-negative integer");
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_problem(Section s, RunConfig& c) {
  auto& m = c.mbs;
  s.read("name", c.problem);
  s.read("dimension", c.dimension);
  s.read("projection_seed", m.projection_seed);
  s.read("half_width", m.half_width);
  s.read("max_relative_swing", m.max_relative_swing);
  s.read("t_start", m.t0);
  s.read("t_end", m.te);
  s.read("dt", m.dt);
  s.read("transient_fraction", m.transient_fraction);
  if (s.has("excitation")) {
    auto e = s.child("excitation");
    e.read("amplitude", m.excitation.amplitude);
    e.read("frequency", m.excitation.frequency);
    e.finish();
  }
  if (s.has("nominal")) {
    auto n = s.child("nominal");
    n.read("sprung_mass", m.nominal.sprung_mass);
    n.read("unsprung_mass", m.nominal.unsprung_mass);
    n.read("suspension_stiffness", m.nominal.suspension_stiffness);
    n.read("suspension_damping", m.nominal.suspension_damping);
    n.read("tire_stiffness", m.nominal.tire_stiffness);
    n.finish();
  }
  s.finish();
}

void read_samo(Section s, driver::SamoConfig& c) {
  s.read("budget", c.budget);
  s.read("batch_size", c.batch_size);
  s.read("h_min", c.h_min);
  if (s.has("hausdorff_scaling")) {
    std::string v;
    s.read("hausdorff_scaling", v);
    if (v == "raw") {
      c.hausdorff_scaling = HausdorffScaling::raw;
    } else if (v == "joint_range") {
      c.hausdorff_scaling = HausdorffScaling::joint_range;
    } else {
      throw ConfigError(s.field("hausdorff_scaling") + " must be raw or joint_range");
    }
  }
  if (s.has("surrogate")) {
    std::string v;
    s.read("surrogate", v);
    c.surrogate = driver::parse_surrogate_kind(v);
  }
  if (s.has("optimizer")) {
    std::string v;
    s.read("optimizer", v);
    c.optimizer = driver::parse_optimizer_kind(v);
  }
  s.read("population_size", c.population_size);
  s.read("seed", c.seed);
  s.read("jobs", c.jobs);
  if (s.has("nsga2")) {
    auto n = s.child("nsga2");
    n.read("generations", c.nsga2.generations);
    n.read("crossover_probability", c.nsga2.crossover_probability);
    n.read("crossover_variable_probability", c.nsga2.crossover_variable_probability);
    n.read("crossover_eta", c.nsga2.crossover_eta);
    n.read("mutation_eta", c.nsga2.mutation_eta);
    n.read("mutation_probability", c.nsga2.mutation_probability);
    n.finish();
  }
  if (s.has("mgda")) {
    auto g = s.child("mgda");
    g.read("learning_rate", c.mgda.learning_rate);
    g.read("max_iterations", c.mgda.max_iterations);
    g.read("tolerance", c.mgda.tolerance);
    g.read("backtracking", c.mgda.backtracking);
    g.finish();
  }
  if (s.has("mlp")) {
    auto t = s.child("mlp");
    t.read("hidden_layers", c.mlp.hidden_layers);
    t.read("epochs", c.mlp.epochs);
    t.read("learning_rate", c.mlp.learning_rate);
    t.read("batch_size", c.mlp.batch_size);
    t.read("validation_fraction", c.mlp.validation_fraction);
    t.read("patience", c.mlp.patience);
    t.read("beta1", c.mlp.beta1);
    t.read("beta2", c.mlp.beta2);
    t.read("epsilon", c.mlp.epsilon);
    t.finish();
  }
  if (s.has("rbf")) {
    auto r = s.child("rbf");
    r.read("sigma", c.rbf.sigma);
    r.read("width_grid", c.rbf.width_grid);
    r.read("folds", c.rbf.folds);
    r.read("lambda", c.rbf.lambda);
    r.finish();
  }
  if (s.has("sampling")) {
    auto p = s.child("sampling");
    p.read("replace_duplicates", c.sampling.replace_duplicates);
    p.read("duplicate_radius", c.sampling.duplicate_radius);
    p.finish();
  }
  s.finish();
}

void read_output(Section s, OutputOptions& o) {
  s.read("directory", o.directory);
  s.read("save_surrogates", o.save_surrogates);
  s.read("verbose", o.verbose);
  s.finish();
}

void read_study(Section s, StudySettings& st) {
  s.read("sizes", st.sizes);
  if (s.has("surrogates")) {
    std::vector<std::string> names;
    s.read("surrogates", names);
    st.surrogates.clear();
    for (const auto& n : names) st.surrogates.push_back(driver::parse_surrogate_kind(n));
  }
  s.read("repetitions", st.repetitions);
  s.finish();
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig c;
  Section root(doc, "");
  if (root.has("problem")) read_problem(root.child("problem"), c);
  if (root.has("samo")) read_samo(root.child("samo"), c.samo);
  if (root.has("output")) read_output(root.child("output"), c.output);
  if (root.has("study")) read_study(root.child("study"), c.study);
  root.finish();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  const auto& m = c.mbs;
  const auto& s = c.samo;
  json surrogates = json::array();
  for (auto k : c.study.surrogates) surrogates.push_back(driver::to_string(k));
  return {
      {"problem",
       {{"name", c.problem},
        {"dimension", c.dimension},
        {"projection_seed", m.projection_seed},
        {"half_width", m.half_width},
        {"max_relative_swing", m.max_relative_swing},
        {"t_start", m.t0},
        {"t_end", m.te},
        {"dt", m.dt},
        {"transient_fraction", m.transient_fraction},
        {"excitation", {{"amplitude", m.excitation.amplitude}, {"frequency", m.excitation.frequency}}},
        {"nominal",
         {{"sprung_mass", m.nominal.sprung_mass},
          {"unsprung_mass", m.nominal.unsprung_mass},
          {"suspension_stiffness", m.nominal.suspension_stiffness},
          {"suspension_damping", m.nominal.suspension_damping},
          {"tire_stiffness", m.nominal.tire_stiffness}}}}},
      {"samo",
       {{"budget", s.budget},
        {"batch_size", s.batch_size},
        {"h_min", s.h_min},
        {"hausdorff_scaling", s.hausdorff_scaling == HausdorffScaling::raw ? "raw" : "joint_range"},
        {"surrogate", driver::to_string(s.surrogate)},
        {"optimizer", driver::to_string(s.optimizer)},
        {"population_size", s.population_size},
        {"seed", s.seed},
        {"jobs", s.jobs},
        {"nsga2",
         {{"generations", s.nsga2.generations},
          {"crossover_probability", s.nsga2.crossover_probability},
          {"crossover_variable_probability", s.nsga2.crossover_variable_probability},
          {"crossover_eta", s.nsga2.crossover_eta},
          {"mutation_eta", s.nsga2.mutation_eta},
          {"mutation_probability",
           s.nsga2.mutation_probability ? json(*s.nsga2.mutation_probability) : json(nullptr)}}},
        {"mgda",
         {{"learning_rate", s.mgda.learning_rate},
          {"max_iterations", s.mgda.max_iterations},
          {"tolerance", s.mgda.tolerance},
          {"backtracking", s.mgda.backtracking}}},
        {"mlp",
         {{"hidden_layers", s.mlp.hidden_layers},
          {"epochs", s.mlp.epochs},
          {"learning_rate", s.mlp.learning_rate},
          {"batch_size", s.mlp.batch_size},
          {"validation_fraction", s.mlp.validation_fraction},
          {"patience", s.mlp.patience},
          {"beta1", s.mlp.beta1},
          {"beta2", s.mlp.beta2},
          {"epsilon", s.mlp.epsilon}}},
        {"rbf",
         {{"sigma", s.rbf.sigma ? json(*s.rbf.sigma) : json(nullptr)},
          {"width_grid", s.rbf.width_grid},
          {"folds", s.rbf.folds},
          {"lambda", s.rbf.lambda}}},
        {"sampling",
         {{"replace_duplicates", s.sampling.replace_duplicates},
          {"duplicate_radius", s.sampling.duplicate_radius}}}}},
      {"output",
       {{"directory", c.output.directory},
        {"save_surrogates", c.output.save_surrogates},
        {"verbose", c.output.verbose}}},
      {"study",
       {{"sizes", c.study.sizes}, {"surrogates", surrogates}, {"repetitions", c.study.repetitions}}}};
}

void RunConfig::validate() const {
  samo.validate();
  if (problem == "mbs") {
    mbs.nominal.validate();
    mbs.excitation.validate();
    if (!(mbs.half_width > 0.0)) throw ConfigError("problem.half_width must be > 0");
    if (!(mbs.max_relative_swing > 0.0 && mbs.max_relative_swing < 1.0)) {
      throw ConfigError("problem.max_relative_swing must lie in (0, 1)");
    }
    if (!(mbs.dt > 0.0) || !(mbs.te > mbs.t0)) throw ConfigError("problem: need dt > 0 and t_end > t_start");
    if (!(mbs.transient_fraction >= 0.0 && mbs.transient_fraction < 1.0)) {
      throw ConfigError("problem.transient_fraction must lie in [0, 1)");
    }
  }
  // Builds the problem (cheap) to surface unknown names and bad dimensions.
  (void)make_problem();
  if (study.sizes.empty()) throw ConfigError("study.sizes must not be empty");
  if (study.surrogates.empty()) throw ConfigError("study.surrogates must not be empty");
  if (study.repetitions == 0) throw ConfigError("study.repetitions must be >= 1");
  for (auto size : study.sizes) {
    if (size < 2 || size > samo.budget) {
      throw ConfigError("study.sizes entry " + std::to_string(size) + " must lie in [2, samo.budget]");
    }
  }
}

problems::Problem RunConfig::make_problem() const { return problems::make_problem(problem, dimension, mbs); }

driver::StudyOptions RunConfig::study_options() const {
  return {study.sizes, study.surrogates, study.repetitions};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace samo::cli
