#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lexsem/corpus_stats.hpp"
#include "lexsem/dictionary.hpp"
#include "lexsem/errors.hpp"
#include "lexsem/io.hpp"
#include "lexsem/reference_network.hpp"
#include "lexsem/tasks.hpp"
#include "lexsem/vector_space.hpp"

namespace lexsem {

/// Everything a command needs, resolved from config file plus flag overrides.
/// All commands are deterministic functions of (inputs, config, seed).
struct ExperimentConfig {
  std::string dictionary_path;
  std::vector<std::string> corpus_paths;
  std::size_t origin_start_rank = 51;
  std::size_t origin_count = 1000;
  std::size_t window_half_width = 50;
  std::size_t context_window = 10;
  LinkMode edge_mode = LinkMode::weighted;
  bool normalize_distance = true;      // two-step normalization for distance vectors
  bool normalize_cooccurrence = false; // ablation switch; off to match raw MI usage
  std::vector<std::string> wsd_examples_paths;
  std::vector<std::string> wsd_tests_paths;
  std::string pairs_path;
  std::string polarity_tests_path;
  std::vector<std::uint64_t> corpus_size_grid;  // empty: geometric x2 from 200 up to full size
  std::vector<std::size_t> dimension_grid;      // empty: 10 evenly spaced prefixes up to m
  std::vector<std::size_t> context_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30, 40, 50};
  std::size_t polarity_k = 0;  // 0: use all pairs
  std::string output_dir = "out";
  std::uint64_t seed = 0;  // reserved; the pipeline itself is deterministic
  bool dump_stats = false;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    auto item = trim(std::string_view(value).substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

inline std::uint64_t parse_config_uint(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  if (!parse_uint(value, out)) throw ConfigError(key + ": expected a non-negative integer, got `" + value + "`");
  return out;
}

inline bool parse_config_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key + ": expected true/false, got `" + value + "`");
}

}  // namespace detail

/// Applies one `key=value` setting; shared by the config-file reader and the
/// CLI flag layer.
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
  using detail::parse_config_bool;
  using detail::parse_config_uint;
  if (key == "dictionary") cfg.dictionary_path = value;
  else if (key == "corpus") cfg.corpus_paths = detail::split_commas(value);
  else if (key == "origin_start_rank") cfg.origin_start_rank = parse_config_uint(key, value);
  else if (key == "origin_count") cfg.origin_count = parse_config_uint(key, value);
  else if (key == "window_half_width") cfg.window_half_width = parse_config_uint(key, value);
  else if (key == "context_window") cfg.context_window = parse_config_uint(key, value);
  else if (key == "edge_mode") {
    if (value == "unit") cfg.edge_mode = LinkMode::unit;
    else if (value == "weighted") cfg.edge_mode = LinkMode::weighted;
    else throw ConfigError("edge_mode: expected unit or weighted, got `" + value + "`");
  } else if (key == "normalize_distance") cfg.normalize_distance = parse_config_bool(key, value);
  else if (key == "normalize_cooccurrence") cfg.normalize_cooccurrence = parse_config_bool(key, value);
  else if (key == "wsd_examples") cfg.wsd_examples_paths = detail::split_commas(value);
  else if (key == "wsd_tests") cfg.wsd_tests_paths = detail::split_commas(value);
  else if (key == "pairs") cfg.pairs_path = value;
  else if (key == "polarity_tests") cfg.polarity_tests_path = value;
  else if (key == "corpus_sizes") {
    cfg.corpus_size_grid.clear();
    for (const auto& item : detail::split_commas(value))
      cfg.corpus_size_grid.push_back(parse_config_uint(key, item));
  } else if (key == "dimensions") {
    cfg.dimension_grid.clear();
    for (const auto& item : detail::split_commas(value))
      cfg.dimension_grid.push_back(parse_config_uint(key, item));
  } else if (key == "contexts") {
    cfg.context_grid.clear();
    for (const auto& item : detail::split_commas(value))
      cfg.context_grid.push_back(parse_config_uint(key, item));
  } else if (key == "polarity_k") cfg.polarity_k = parse_config_uint(key, value);
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "seed") cfg.seed = parse_config_uint(key, value);
  else if (key == "dump_stats") cfg.dump_stats = parse_config_bool(key, value);
  else throw ConfigError("unknown config key `" + key + "`");
}

/// `key=value` lines; blank lines and `#` comments are skipped.
inline void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + " line " + std::to_string(line_no) + ": expected key=value");
    apply_config_entry(cfg, detail::trim(std::string_view(text).substr(0, eq)),
                       detail::trim(std::string_view(text).substr(eq + 1)));
  }
}

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

inline void require_readable(const std::string& path, const std::string& what) {
  require(!path.empty(), what + " path is required");
  std::ifstream probe(path);
  require(static_cast<bool>(probe), "cannot open " + what + " file: " + path);
}

inline void require_positive(std::size_t value, const std::string& what) {
  require(value >= 1, what + " must be >= 1");
}

inline void validate_common(const ExperimentConfig& cfg) {
  require(!cfg.output_dir.empty(), "output_dir must not be empty");
  require_positive(cfg.origin_start_rank, "origin_start_rank");
  require_positive(cfg.origin_count, "origin_count");
  require_positive(cfg.window_half_width, "window_half_width");
  require_positive(cfg.context_window, "context_window");
}

inline std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

inline OriginSet origins_or_config_error(const FrequencyTable& table, const ExperimentConfig& cfg) {
  try {
    return select_origins(table, cfg.origin_start_rank, cfg.origin_count);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("insufficient vocabulary for origins: ") + e.what());
  }
}

inline VectorSpace apply_two_step_normalization(VectorSpace space, bool enabled) {
  if (!enabled) return space;
  return normalize_within_vector(normalize_across_words(std::move(space)));
}

}  // namespace detail

struct WsdFixture {
  SenseInventory inventory;
  std::vector<LabeledContext> tests;
};

inline std::vector<WsdFixture> load_wsd_fixtures(const ExperimentConfig& cfg) {
  detail::require(!cfg.wsd_examples_paths.empty(), "wsd_examples is required");
  detail::require(cfg.wsd_examples_paths.size() == cfg.wsd_tests_paths.size(),
                  "wsd_examples and wsd_tests must list the same number of files");
  for (const auto& path : cfg.wsd_examples_paths) detail::require_readable(path, "wsd examples");
  for (const auto& path : cfg.wsd_tests_paths) detail::require_readable(path, "wsd tests");
  std::vector<WsdFixture> fixtures;
  for (std::size_t i = 0; i < cfg.wsd_examples_paths.size(); ++i)
    fixtures.push_back({load_sense_inventory_file(cfg.wsd_examples_paths[i]),
                        load_labeled_contexts_file(cfg.wsd_tests_paths[i])});
  return fixtures;
}

struct NamedSpace {
  std::string kind;
  VectorSpace space;
};

namespace detail {

inline std::vector<NamedSpace> load_spaces(const ExperimentConfig& cfg, bool raw) {
  std::vector<NamedSpace> spaces;
  for (const char* kind : {"distance", "cooccurrence"}) {
    const auto path = out_path(cfg, std::string(kind) + (raw ? "_raw.vec" : ".vec"));
    if (std::ifstream probe(path); probe) spaces.push_back({kind, load_space(path)});
  }
  require(!spaces.empty(), "no built vector spaces under " + cfg.output_dir + "; run build first");
  return spaces;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// build

struct BuildResult {
  std::vector<std::string> written;
};

/// Builds the distance and/or co-occurrence spaces, applies the configured
/// normalization, and persists everything under output_dir. Deterministic:
/// identical inputs and config produce byte-identical files.
inline BuildResult cmd_build(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  detail::require(!cfg.dictionary_path.empty() || !cfg.corpus_paths.empty(),
                  "build needs a dictionary, a corpus, or both");
  if (!cfg.dictionary_path.empty()) detail::require_readable(cfg.dictionary_path, "dictionary");
  for (const auto& path : cfg.corpus_paths) detail::require_readable(path, "corpus");

  BuildResult result;
  auto persist_space = [&](const VectorSpace& space, const std::string& name) {
    const auto path = detail::out_path(cfg, name);
    save_space(space, path);
    result.written.push_back(path);
  };

  std::optional<DictionaryEntries> dictionary;
  OriginSet origins;
  if (!cfg.dictionary_path.empty()) {
    dictionary = parse_dictionary_file(cfg.dictionary_path);
    detail::require(!dictionary->empty(), "dictionary has no entries: " + cfg.dictionary_path);
    origins = detail::origins_or_config_error(rank_frequencies(*dictionary), cfg);
  } else {
    const auto table = corpus_frequency_table(cfg.corpus_paths);
    detail::require(table.total_tokens > 0, "corpus is empty");
    origins = detail::origins_or_config_error(table, cfg);
  }

  std::filesystem::create_directories(cfg.output_dir);

  if (dictionary) {
    const auto network = build_network(*dictionary);
    const auto network_path = detail::out_path(cfg, "network.tsv");
    save_network(network, network_path);
    result.written.push_back(network_path);

    auto raw = build_distance_space(network, origins, cfg.edge_mode);
    persist_space(raw, "distance_raw.vec");
    persist_space(detail::apply_two_step_normalization(std::move(raw), cfg.normalize_distance),
                  "distance.vec");
  }

  if (!cfg.corpus_paths.empty()) {
    const auto stats = ingest_corpus_files(cfg.corpus_paths, origins, cfg.window_half_width);
    if (cfg.dump_stats) {
      const auto stats_path = detail::out_path(cfg, "corpus_stats.tsv");
      save_stats(stats, stats_path);
      result.written.push_back(stats_path);
    }
    auto raw = build_cooc_space(stats);
    persist_space(raw, "cooccurrence_raw.vec");
    persist_space(detail::apply_two_step_normalization(std::move(raw), cfg.normalize_cooccurrence),
                  "cooccurrence.vec");
  }

  for (const auto& path : result.written) std::cout << "wrote " << path << '\n';
  return result;
}

// ---------------------------------------------------------------------------
// evaluate

struct WsdEvaluation {
  std::string kind;
  std::string word;
  PrecisionReport report;
};

inline std::vector<WsdEvaluation> evaluate_wsd_over_spaces(const std::vector<NamedSpace>& spaces,
                                                           const std::vector<WsdFixture>& fixtures,
                                                           std::size_t window) {
  std::vector<WsdEvaluation> evaluations;
  for (const auto& named : spaces)
    for (const auto& fixture : fixtures)
      evaluations.push_back({named.kind, fixture.inventory.target_word,
                             wsd_evaluate(named.space, fixture.inventory, fixture.tests, window)});
  return evaluations;
}

/// Evaluates every WSD fixture against every built space; one report CSV per
/// space kind, rows prefixed `word:`.
inline std::vector<WsdEvaluation> cmd_evaluate_wsd(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  const auto fixtures = load_wsd_fixtures(cfg);
  const auto spaces = detail::load_spaces(cfg, /*raw=*/false);
  auto evaluations = evaluate_wsd_over_spaces(spaces, fixtures, cfg.context_window);

  for (const auto& named : spaces) {
    const auto path = detail::out_path(cfg, "wsd_report_" + named.kind + ".csv");
    std::ostringstream csv;
    bool first = true;
    for (const auto& eval : evaluations) {
      if (eval.kind != named.kind) continue;
      if (first) csv << "unit,correct,total,precision\n";
      std::ostringstream block;
      write_report_csv(eval.report, block, eval.word + ":");
      const auto text = block.str();
      csv << text.substr(text.find('\n') + 1);  // drop the repeated header
      first = false;
    }
    write_file(path, csv.str());
    std::cout << "wrote " << path << '\n';
  }
  for (const auto& eval : evaluations) {
    std::cout << eval.kind << ' ' << eval.word << " precision " << format_double(eval.report.precision)
              << " (" << eval.report.correct << '/' << eval.report.total << " micro)";
    if (eval.report.unknown_queries > 0)
      std::cout << " [" << eval.report.unknown_queries << " contexts with no known word]";
    for (const auto& unit : eval.report.units_without_tests)
      std::cout << " [sense " << unit << " has no tests]";
    std::cout << '\n';
  }
  return evaluations;
}

struct PolarityEvaluation {
  std::string kind;
  PrecisionReport report;
};

inline std::vector<PolarityEvaluation> cmd_evaluate_polarity(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_readable(cfg.pairs_path, "pairs");
  detail::require_readable(cfg.polarity_tests_path, "polarity tests");
  const auto pairs = load_polarity_pairs_file(cfg.pairs_path);
  const auto tests = load_polarity_tests_file(cfg.polarity_tests_path);
  const std::size_t k = cfg.polarity_k == 0 ? pairs.pairs.size() : cfg.polarity_k;
  detail::require(k >= 1 && k <= pairs.pairs.size(),
                  "polarity_k out of range 1.." + std::to_string(pairs.pairs.size()));
  const auto spaces = detail::load_spaces(cfg, /*raw=*/false);

  std::vector<PolarityEvaluation> evaluations;
  for (const auto& named : spaces) {
    auto report = polarity_evaluate(named.space, pairs, k, tests);
    const auto path = detail::out_path(cfg, "polarity_report_" + named.kind + ".csv");
    std::ostringstream csv;
    write_report_csv(report, csv);
    write_file(path, csv.str());
    std::cout << "wrote " << path << '\n';
    std::cout << named.kind << " polarity precision " << format_double(report.precision) << " ("
              << report.correct << '/' << report.total << ")";
    if (report.unknown_queries > 0)
      std::cout << " [" << report.unknown_queries << " test words not in space]";
    if (report.missing_examples > 0)
      std::cout << " [" << report.missing_examples << " example words not in space]";
    std::cout << '\n';
    evaluations.push_back({named.kind, std::move(report)});
  }
  return evaluations;
}

// ---------------------------------------------------------------------------
// sweeps

namespace detail {

inline std::vector<std::uint64_t> resolve_corpus_grid(const ExperimentConfig& cfg,
                                                      std::uint64_t full_tokens) {
  std::vector<std::uint64_t> grid;
  if (!cfg.corpus_size_grid.empty()) {
    for (auto size : cfg.corpus_size_grid) {
      require(size >= 1, "corpus size grid entries must be >= 1");
      if (size > full_tokens) {
        std::cerr << "warning: corpus size " << size << " exceeds corpus length " << full_tokens
                  << ", clamped\n";
        size = full_tokens;
      }
      grid.push_back(size);
    }
    return grid;
  }
  for (std::uint64_t size = 200; size < full_tokens; size *= 2) grid.push_back(size);
  if (grid.empty() || grid.back() != full_tokens) grid.push_back(full_tokens);
  return grid;
}

inline std::vector<std::size_t> resolve_dimension_grid(const ExperimentConfig& cfg, std::size_t m,
                                                       bool normalized_kind) {
  std::vector<std::size_t> grid;
  if (!cfg.dimension_grid.empty()) {
    for (auto k : cfg.dimension_grid) {
      require(k >= 1, "dimension grid entries must be >= 1");
      if (k > m) {
        std::cerr << "warning: dimension " << k << " exceeds vector dimension " << m
                  << ", clamped\n";
        k = m;
      }
      grid.push_back(k);
    }
  } else {
    for (std::size_t i = 1; i <= 10; ++i) {
      const std::size_t k = std::max<std::size_t>(1, m * i / 10);
      if (grid.empty() || grid.back() != k) grid.push_back(k);
    }
  }
  if (normalized_kind)
    for (auto k : grid)
      require(k >= 2, "dimension grid point " + std::to_string(k) +
                          " is incompatible with two-step normalization (needs >= 2 coordinates)");
  return grid;
}

inline void write_csv(const ExperimentConfig& cfg, const std::string& name,
                      const std::string& header, const std::vector<std::string>& rows,
                      std::vector<std::string>* written = nullptr) {
  std::filesystem::create_directories(cfg.output_dir);
  std::ostringstream out;
  out << header << '\n';
  for (const auto& row : rows) out << row << '\n';
  const auto path = out_path(cfg, name);
  write_file(path, out.str());
  std::cout << "wrote " << path << '\n';
  if (written) written->push_back(path);
}

}  // namespace detail

struct CorpusSizeRow {
  std::string word;
  std::uint64_t size = 0;
  double precision = 0.0;
};

/// Rebuilds the co-occurrence statistics on growing token prefixes of the
/// corpus and reports WSD precision per (word, size). Origins stay fixed
/// (from the dictionary when given, otherwise from the full corpus) so the
/// coordinates mean the same thing at every size.
inline std::vector<CorpusSizeRow> cmd_sweep_corpus_size(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  detail::require(!cfg.corpus_paths.empty(), "sweep-corpus-size needs a corpus");
  for (const auto& path : cfg.corpus_paths) detail::require_readable(path, "corpus");
  const auto fixtures = load_wsd_fixtures(cfg);

  OriginSet origins;
  std::uint64_t full_tokens = 0;
  if (!cfg.dictionary_path.empty()) {
    detail::require_readable(cfg.dictionary_path, "dictionary");
    const auto dictionary = parse_dictionary_file(cfg.dictionary_path);
    origins = detail::origins_or_config_error(rank_frequencies(dictionary), cfg);
    full_tokens = corpus_frequency_table(cfg.corpus_paths).total_tokens;
  } else {
    const auto table = corpus_frequency_table(cfg.corpus_paths);
    full_tokens = table.total_tokens;
    detail::require(full_tokens > 0, "corpus is empty");
    origins = detail::origins_or_config_error(table, cfg);
  }
  detail::require(full_tokens > 0, "corpus is empty");
  const auto grid = detail::resolve_corpus_grid(cfg, full_tokens);

  std::vector<CorpusSizeRow> rows;
  for (const auto size : grid) {
    const auto stats = ingest_corpus_files(cfg.corpus_paths, origins, cfg.window_half_width, size);
    const auto space = detail::apply_two_step_normalization(build_cooc_space(stats),
                                                            cfg.normalize_cooccurrence);
    for (const auto& fixture : fixtures)
      rows.push_back({fixture.inventory.target_word, size,
                      wsd_evaluate(space, fixture.inventory, fixture.tests, cfg.context_window)
                          .precision});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CorpusSizeRow& a, const CorpusSizeRow& b) {
    return a.word != b.word ? a.word < b.word : a.size < b.size;
  });
  std::vector<std::string> lines;
  for (const auto& row : rows)
    lines.push_back(row.word + ',' + std::to_string(row.size) + ',' + format_double(row.precision));
  detail::write_csv(cfg, "sweep_corpus_size.csv", "word,size,precision", lines);
  return rows;
}

struct DimensionRow {
  std::string kind;
  std::string word;
  std::size_t k = 0;
  double precision = 0.0;
};

/// Truncates the raw spaces to origin prefixes, re-applies the configured
/// normalization, and evaluates WSD per (kind, word, k).
inline std::vector<DimensionRow> cmd_sweep_dimension(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  const auto fixtures = load_wsd_fixtures(cfg);
  const auto spaces = detail::load_spaces(cfg, /*raw=*/true);

  std::vector<DimensionRow> rows;
  for (const auto& named : spaces) {
    const bool normalize =
        named.kind == "distance" ? cfg.normalize_distance : cfg.normalize_cooccurrence;
    const auto grid = detail::resolve_dimension_grid(cfg, named.space.dimension(), normalize);
    for (const auto k : grid) {
      const auto space =
          detail::apply_two_step_normalization(truncate_dimension(named.space, k), normalize);
      for (const auto& fixture : fixtures)
        rows.push_back({named.kind, fixture.inventory.target_word, k,
                        wsd_evaluate(space, fixture.inventory, fixture.tests, cfg.context_window)
                            .precision});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const DimensionRow& a, const DimensionRow& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.word != b.word) return a.word < b.word;
    return a.k < b.k;
  });
  std::vector<std::string> lines;
  for (const auto& row : rows)
    lines.push_back(row.kind + ',' + row.word + ',' + std::to_string(row.k) + ',' +
                    format_double(row.precision));
  detail::write_csv(cfg, "sweep_dimension.csv", "kind,word,k,precision", lines);
  return rows;
}

struct ContextRow {
  std::string kind;
  std::string word;
  std::size_t context_size = 0;
  double precision = 0.0;
};

/// Evaluates WSD at each context size in the grid.
inline std::vector<ContextRow> cmd_sweep_context(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  detail::require(!cfg.context_grid.empty(), "context grid must not be empty");
  for (const auto size : cfg.context_grid) detail::require_positive(size, "context size");
  const auto fixtures = load_wsd_fixtures(cfg);
  const auto spaces = detail::load_spaces(cfg, /*raw=*/false);

  std::vector<ContextRow> rows;
  for (const auto& named : spaces)
    for (const auto size : cfg.context_grid)
      for (const auto& fixture : fixtures)
        rows.push_back({named.kind, fixture.inventory.target_word, size,
                        wsd_evaluate(named.space, fixture.inventory, fixture.tests, size)
                            .precision});
  std::stable_sort(rows.begin(), rows.end(), [](const ContextRow& a, const ContextRow& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.word != b.word) return a.word < b.word;
    return a.context_size < b.context_size;
  });
  std::vector<std::string> lines;
  for (const auto& row : rows)
    lines.push_back(row.kind + ',' + row.word + ',' + std::to_string(row.context_size) + ',' +
                    format_double(row.precision));
  detail::write_csv(cfg, "sweep_context.csv", "kind,word,context_size,precision", lines);
  return rows;
}

struct PolarityCurveRow {
  std::string kind;
  std::size_t k = 0;
  double precision = 0.0;
};

/// Learning curve: polarity precision using the first k pairs, k = 1..|pairs|.
inline std::vector<PolarityCurveRow> cmd_polarity_curve(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  detail::require_readable(cfg.pairs_path, "pairs");
  detail::require_readable(cfg.polarity_tests_path, "polarity tests");
  const auto pairs = load_polarity_pairs_file(cfg.pairs_path);
  const auto tests = load_polarity_tests_file(cfg.polarity_tests_path);
  detail::require(!pairs.pairs.empty(), "pairs file has no pairs");
  const auto spaces = detail::load_spaces(cfg, /*raw=*/false);

  std::vector<PolarityCurveRow> rows;
  for (const auto& named : spaces)
    for (std::size_t k = 1; k <= pairs.pairs.size(); ++k)
      rows.push_back({named.kind, k, polarity_evaluate(named.space, pairs, k, tests).precision});
  std::vector<std::string> lines;
  for (const auto& row : rows)
    lines.push_back(row.kind + ',' + std::to_string(row.k) + ',' + format_double(row.precision));
  detail::write_csv(cfg, "polarity_curve.csv", "kind,k,precision", lines);
  return rows;
}

}  // namespace lexsem
