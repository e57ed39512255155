// Command-line front end: builds vector spaces from a dictionary and/or a
// corpus, evaluates the two tasks, and runs the parameter sweeps. Exit code 0
// on success, 2 on configuration errors, 1 on runtime errors.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "lexsem/experiments.hpp"

namespace {

/// Binds CLI options to ExperimentConfig fields with config-file support.
/// Precedence: built-in defaults, then --config file entries, then any flag
/// actually given on the command line.
class ConfigBinder {
 public:
  explicit ConfigBinder(CLI::App* cmd) : cmd_(cmd) {
    cmd_->add_option("--config", config_path_, "key=value config file");
    add_str("--out", "output directory (default: out)",
            [](lexsem::ExperimentConfig& c, const std::string& v) { c.output_dir = v; });
    add_str("--seed", "random seed recorded with the run", entry("seed"));
  }

  void inputs() {
    add_str("--dictionary", "TAB-separated dictionary file",
            [](lexsem::ExperimentConfig& c, const std::string& v) { c.dictionary_path = v; });
    add_vec("--corpus", "corpus text file(s); blank lines split documents",
            [](lexsem::ExperimentConfig& c, const std::vector<std::string>& v) {
              c.corpus_paths = v;
            });
    add_str("--origin-start-rank", "first frequency rank used as an origin (default: 51)",
            entry("origin_start_rank"));
    add_str("--origin-count", "number of origin words / vector dimension (default: 1000)",
            entry("origin_count"));
    add_str("--half-width", "co-occurrence window half-width in tokens (default: 50)",
            entry("window_half_width"));
    add_str("--edge-mode", "link length: unit or weighted (default: weighted)", entry("edge_mode"));
    normalization();
  }

  void normalization() {
    add_str("--normalize-distance", "two-step normalization of distance vectors (default: true)",
            entry("normalize_distance"));
    add_str("--normalize-cooccurrence",
            "two-step normalization of co-occurrence vectors (default: false)",
            entry("normalize_cooccurrence"));
  }

  void wsd() {
    add_vec("--wsd-examples", "sense-labeled example context file(s)",
            [](lexsem::ExperimentConfig& c, const std::vector<std::string>& v) {
              c.wsd_examples_paths = v;
            });
    add_vec("--wsd-tests", "sense-labeled test context file(s), one per examples file",
            [](lexsem::ExperimentConfig& c, const std::vector<std::string>& v) {
              c.wsd_tests_paths = v;
            });
    add_str("--context-window", "context words taken on each side of the target (default: 10)",
            entry("context_window"));
  }

  void polarity() {
    add_str("--pairs", "positive/negative example pairs TSV", entry("pairs"));
    add_str("--polarity-tests", "labeled test words TSV", entry("polarity_tests"));
  }

  void add_str(const std::string& flag, const std::string& help,
               std::function<void(lexsem::ExperimentConfig&, const std::string&)> apply) {
    auto value = std::make_shared<std::string>();
    auto* option = cmd_->add_option(flag, *value, help);
    appliers_.push_back([option, value, apply = std::move(apply)](lexsem::ExperimentConfig& c) {
      if (option->count() > 0) apply(c, *value);
    });
  }

  void add_vec(const std::string& flag, const std::string& help,
               std::function<void(lexsem::ExperimentConfig&, const std::vector<std::string>&)> apply) {
    auto value = std::make_shared<std::vector<std::string>>();
    auto* option = cmd_->add_option(flag, *value, help);
    appliers_.push_back([option, value, apply = std::move(apply)](lexsem::ExperimentConfig& c) {
      if (option->count() > 0) apply(c, *value);
    });
  }

  void add_flag(const std::string& flag, const std::string& help,
                std::function<void(lexsem::ExperimentConfig&)> apply) {
    auto* option = cmd_->add_flag(flag, help);
    appliers_.push_back([option, apply = std::move(apply)](lexsem::ExperimentConfig& c) {
      if (option->count() > 0) apply(c);
    });
  }

  static std::function<void(lexsem::ExperimentConfig&, const std::string&)> entry(
      const std::string& key) {
    return [key](lexsem::ExperimentConfig& c, const std::string& v) {
      lexsem::apply_config_entry(c, key, v);
    };
  }

  lexsem::ExperimentConfig resolve() const {
    lexsem::ExperimentConfig cfg;
    if (!config_path_.empty()) lexsem::apply_config_file(cfg, config_path_);
    for (const auto& apply : appliers_) apply(cfg);
    return cfg;
  }

  CLI::App* command() const { return cmd_; }

 private:
  CLI::App* cmd_;
  std::string config_path_;
  std::vector<std::function<void(lexsem::ExperimentConfig&)>> appliers_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word vector spaces from dictionary reference networks and corpus co-occurrence"};
  app.require_subcommand(1);

  using Runner = std::function<void(const lexsem::ExperimentConfig&)>;
  std::vector<std::pair<std::shared_ptr<ConfigBinder>, Runner>> dispatch;

  auto make = [&](const std::string& name, const std::string& help, Runner run) {
    auto binder = std::make_shared<ConfigBinder>(app.add_subcommand(name, help));
    dispatch.emplace_back(binder, std::move(run));
    return binder;
  };

  auto build = make("build", "build and persist the vector space(s)",
                    [](const lexsem::ExperimentConfig& c) { lexsem::cmd_build(c); });
  build->inputs();
  build->add_flag("--dump-stats", "also persist the corpus statistics dump",
                  [](lexsem::ExperimentConfig& c) { c.dump_stats = true; });

  auto evaluate_wsd = make("evaluate-wsd", "classify test contexts by nearest example",
                           [](const lexsem::ExperimentConfig& c) { lexsem::cmd_evaluate_wsd(c); });
  evaluate_wsd->wsd();

  auto evaluate_polarity =
      make("evaluate-polarity", "classify test words as positive or negative",
           [](const lexsem::ExperimentConfig& c) { lexsem::cmd_evaluate_polarity(c); });
  evaluate_polarity->polarity();
  evaluate_polarity->add_str("--k", "number of example pairs used (default: all)",
                             ConfigBinder::entry("polarity_k"));

  auto sweep_corpus =
      make("sweep-corpus-size", "WSD precision as the co-occurrence corpus prefix grows",
           [](const lexsem::ExperimentConfig& c) { lexsem::cmd_sweep_corpus_size(c); });
  sweep_corpus->inputs();
  sweep_corpus->wsd();
  sweep_corpus->add_str("--sizes", "comma-separated token-count grid (default: 200,400,... full)",
                        ConfigBinder::entry("corpus_sizes"));

  auto sweep_dimension =
      make("sweep-dimension", "WSD precision as vectors are truncated to origin prefixes",
           [](const lexsem::ExperimentConfig& c) { lexsem::cmd_sweep_dimension(c); });
  sweep_dimension->wsd();
  sweep_dimension->normalization();
  sweep_dimension->add_str("--dimensions", "comma-separated dimension grid (default: m/10 steps)",
                           ConfigBinder::entry("dimensions"));

  auto sweep_context = make("sweep-context", "WSD precision per context size",
                            [](const lexsem::ExperimentConfig& c) { lexsem::cmd_sweep_context(c); });
  sweep_context->wsd();
  sweep_context->add_str("--contexts",
                         "comma-separated context-size grid (default: 1..10,20,30,40,50)",
                         ConfigBinder::entry("contexts"));

  auto polarity_curve =
      make("polarity-curve", "polarity precision for k = 1..|pairs| example pairs",
           [](const lexsem::ExperimentConfig& c) { lexsem::cmd_polarity_curve(c); });
  polarity_curve->polarity();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [binder, run] : dispatch) {
    if (!binder->command()->parsed()) continue;
    try {
      run(binder->resolve());
    } catch (const lexsem::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
