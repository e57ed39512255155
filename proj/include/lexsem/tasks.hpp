#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "lexsem/errors.hpp"
#include "lexsem/io.hpp"
#include "lexsem/tokenize.hpp"
#include "lexsem/vector_space.hpp"

namespace lexsem {

/// One occurrence of the target word inside a token window.
struct ContextExample {
  std::vector<std::string> tokens;
  std::size_t target_index = 0;
};

struct SenseEntry {
  std::string label;
  std::vector<ContextExample> examples;
};

struct SenseInventory {
  std::string target_word;
  std::vector<SenseEntry> senses;
};

struct LabeledContext {
  ContextExample context;
  std::string true_label;
};

struct PolarityPair {
  std::string positive, negative;
};

struct PolarityExamples {
  std::vector<PolarityPair> pairs;
};

struct UnitStat {
  std::string unit;
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  double precision() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

/// Per-unit counts plus the headline precision. For WSD the headline is the
/// unweighted mean of the per-sense precisions (senses without tests are
/// excluded and listed); for polarity it is plain agreement correct/total.
struct PrecisionReport {
  std::vector<UnitStat> units;
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  double precision = 0.0;
  std::uint64_t unknown_queries = 0;   // zero contexts / out-of-space test words, scored as errors
  std::uint64_t missing_examples = 0;  // example words absent from the space, skipped
  std::vector<std::string> units_without_tests;
};

inline void write_report_csv(const PrecisionReport& report, std::ostream& out,
                             const std::string& unit_prefix = "") {
  out << "unit,correct,total,precision\n";
  for (const auto& unit : report.units)
    out << unit_prefix << unit.unit << ',' << unit.correct << ',' << unit.total << ','
        << format_double(unit.precision()) << '\n';
  out << unit_prefix << "overall," << report.correct << ',' << report.total << ','
      << format_double(report.precision) << '\n';
}

/// Sum of the space vectors of the words up to `before` positions left and
/// `after` positions right of the target, excluding the target position
/// itself. Words without a vector contribute nothing.
inline std::vector<double> context_vector(const VectorSpace& space, const ContextExample& example,
                                          std::size_t before, std::size_t after) {
  if (example.target_index >= example.tokens.size())
    throw std::invalid_argument("context_vector: target index out of range");
  std::vector<double> sum(space.dimension(), 0.0);
  const std::size_t lo =
      example.target_index >= before ? example.target_index - before : 0;
  const std::size_t hi = std::min(example.target_index + after, example.tokens.size() - 1);
  for (std::size_t q = lo; q <= hi; ++q) {
    if (q == example.target_index) continue;
    if (const auto* v = space.find(example.tokens[q]))
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
  }
  return sum;
}

/// Symmetric window: N words on each side of the target.
inline std::vector<double> context_vector(const VectorSpace& space, const ContextExample& example,
                                          std::size_t window) {
  if (window < 1) throw std::invalid_argument("context_vector: window must be >= 1");
  return context_vector(space, example, window, window);
}

struct Classification {
  std::size_t index = 0;
  std::string label;
  double similarity = 0.0;
};

/// The single most cosine-similar example wins; ties keep the earliest.
inline Classification classify_by_nearest_example(
    std::span<const double> query,
    const std::vector<std::pair<std::string, std::vector<double>>>& labeled) {
  if (labeled.empty())
    throw std::invalid_argument("classify_by_nearest_example: no labeled examples");
  Classification best{0, labeled[0].first, cosine(query, labeled[0].second)};
  for (std::size_t i = 1; i < labeled.size(); ++i) {
    const double sim = cosine(query, labeled[i].second);
    if (sim > best.similarity) best = {i, labeled[i].first, sim};
  }
  return best;
}

/// Ablation route the default deliberately avoids: the winning label is the
/// one whose examples have the highest mean similarity to the query.
inline Classification classify_by_average_similarity(
    std::span<const double> query,
    const std::vector<std::pair<std::string, std::vector<double>>>& labeled) {
  if (labeled.empty())
    throw std::invalid_argument("classify_by_average_similarity: no labeled examples");
  std::vector<std::string> order;
  std::vector<double> sums;
  std::vector<std::size_t> counts, first_index;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    std::size_t slot = order.size();
    for (std::size_t j = 0; j < order.size(); ++j)
      if (order[j] == labeled[i].first) {
        slot = j;
        break;
      }
    if (slot == order.size()) {
      order.push_back(labeled[i].first);
      sums.push_back(0.0);
      counts.push_back(0);
      first_index.push_back(i);
    }
    sums[slot] += cosine(query, labeled[i].second);
    ++counts[slot];
  }
  std::size_t best = 0;
  double best_mean = sums[0] / static_cast<double>(counts[0]);
  for (std::size_t j = 1; j < order.size(); ++j) {
    const double mean = sums[j] / static_cast<double>(counts[j]);
    if (mean > best_mean) {
      best = j;
      best_mean = mean;
    }
  }
  return {first_index[best], order[best], best_mean};
}

/// Sense-inference rule; average_similarity exists only for ablation and is
/// not surfaced by the CLI.
enum class WsdInference { nearest_example, average_similarity };

namespace detail {

inline bool is_zero_vector(std::span<const double> v) {
  for (double c : v)
    if (c != 0.0) return false;
  return true;
}

}  // namespace detail

/// Classifies each test context against every example context of every sense
/// and reports per-sense precision plus their simple (unweighted) average.
/// Contexts whose window contains no known word count as errors.
inline PrecisionReport wsd_evaluate(const VectorSpace& space, const SenseInventory& inventory,
                                    const std::vector<LabeledContext>& tests, std::size_t window,
                                    WsdInference inference = WsdInference::nearest_example) {
  if (inventory.senses.size() < 2)
    throw std::invalid_argument("wsd_evaluate: need at least 2 senses");
  std::vector<std::pair<std::string, std::vector<double>>> labeled;
  for (const auto& sense : inventory.senses) {
    if (sense.examples.empty())
      throw std::invalid_argument("wsd_evaluate: sense `" + sense.label + "` has no examples");
    for (const auto& example : sense.examples)
      labeled.emplace_back(sense.label, context_vector(space, example, window));
  }

  PrecisionReport report;
  for (const auto& sense : inventory.senses) report.units.push_back({sense.label, 0, 0});
  auto unit_of = [&](const std::string& label) -> UnitStat& {
    for (auto& unit : report.units)
      if (unit.unit == label) return unit;
    throw std::invalid_argument("wsd_evaluate: test labeled with unknown sense `" + label + "`");
  };

  for (const auto& test : tests) {
    if (test.context.tokens.at(test.context.target_index) != inventory.target_word)
      throw std::invalid_argument("wsd_evaluate: test context target `" +
                                  test.context.tokens[test.context.target_index] +
                                  "` does not match inventory target `" + inventory.target_word +
                                  "`");
    auto& unit = unit_of(test.true_label);
    ++unit.total;
    ++report.total;
    const auto query = context_vector(space, test.context, window);
    if (detail::is_zero_vector(query)) {
      ++report.unknown_queries;  // no known word in range: always an error
      continue;
    }
    const auto verdict = inference == WsdInference::nearest_example
                             ? classify_by_nearest_example(query, labeled)
                             : classify_by_average_similarity(query, labeled);
    if (verdict.label == test.true_label) {
      ++unit.correct;
      ++report.correct;
    }
  }

  double sum = 0.0;
  std::size_t tested_units = 0;
  for (const auto& unit : report.units) {
    if (unit.total == 0) {
      report.units_without_tests.push_back(unit.unit);
      continue;
    }
    sum += unit.precision();
    ++tested_units;
  }
  report.precision = tested_units == 0 ? 0.0 : sum / static_cast<double>(tested_units);
  return report;
}

/// Nearest-example polarity judgement using the first k pairs as labeled
/// examples (2k words). Test words absent from the space are errors; the
/// headline precision is plain agreement with the true labels.
inline PrecisionReport polarity_evaluate(const VectorSpace& space, const PolarityExamples& examples,
                                         std::size_t k,
                                         const std::vector<std::pair<std::string, std::string>>& tests) {
  if (k < 1 || k > examples.pairs.size())
    throw std::out_of_range("polarity_evaluate: k=" + std::to_string(k) + " out of range 1.." +
                            std::to_string(examples.pairs.size()));
  PrecisionReport report;
  report.units.push_back({"positive", 0, 0});
  report.units.push_back({"negative", 0, 0});

  std::vector<std::pair<std::string, std::vector<double>>> labeled;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto* side : {&examples.pairs[i].positive, &examples.pairs[i].negative}) {
      const bool positive = side == &examples.pairs[i].positive;
      if (const auto* v = space.find(*side))
        labeled.emplace_back(positive ? "positive" : "negative", *v);
      else
        ++report.missing_examples;
    }
  }
  if (labeled.empty())
    throw std::invalid_argument("polarity_evaluate: no example word is present in the space");

  for (const auto& [word, true_label] : tests) {
    if (true_label != "positive" && true_label != "negative")
      throw std::invalid_argument("polarity_evaluate: bad label `" + true_label + "`");
    auto& unit = report.units[true_label == "positive" ? 0 : 1];
    ++unit.total;
    ++report.total;
    const auto* v = space.find(word);
    if (v == nullptr) {
      ++report.unknown_queries;
      continue;
    }
    if (classify_by_nearest_example(*v, labeled).label == true_label) {
      ++unit.correct;
      ++report.correct;
    }
  }
  report.precision =
      report.total == 0 ? 0.0 : static_cast<double>(report.correct) / static_cast<double>(report.total);
  return report;
}

// Fixture formats. Contexts: `sense_label<TAB>text with the target as *word*`.
// Polarity pairs: `positive<TAB>negative`. Polarity tests: `word<TAB>label`.

namespace detail {

inline LabeledContext parse_context_line(const std::string& line, std::size_t line_no) {
  const auto where = [&] { return "context line " + std::to_string(line_no) + ": "; };
  const auto tab = line.find('\t');
  if (tab == std::string::npos) throw ParseError(where() + "missing TAB separator");
  LabeledContext out;
  out.true_label = line.substr(0, tab);
  if (out.true_label.empty()) throw ParseError(where() + "empty label");
  const std::string_view text = std::string_view(line).substr(tab + 1);
  const auto star1 = text.find('*');
  if (star1 == std::string_view::npos) throw ParseError(where() + "no *target* marker");
  const auto star2 = text.find('*', star1 + 1);
  if (star2 == std::string_view::npos) throw ParseError(where() + "unterminated *target* marker");
  auto target_tokens = tokenize(text.substr(star1 + 1, star2 - star1 - 1));
  if (target_tokens.size() != 1)
    throw ParseError(where() + "marker must contain exactly one token");
  auto before = tokenize(text.substr(0, star1));
  auto after = tokenize(text.substr(star2 + 1));
  out.context.target_index = before.size();
  out.context.tokens = std::move(before);
  out.context.tokens.push_back(std::move(target_tokens.front()));
  out.context.tokens.insert(out.context.tokens.end(), std::make_move_iterator(after.begin()),
                            std::make_move_iterator(after.end()));
  return out;
}

}  // namespace detail

inline std::vector<LabeledContext> load_labeled_contexts(std::istream& in) {
  std::vector<LabeledContext> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(detail::parse_context_line(line, line_no));
  }
  return out;
}

/// Groups labeled contexts into a sense inventory (sense order = first
/// appearance). All marked targets must agree.
inline SenseInventory load_sense_inventory(std::istream& in) {
  SenseInventory inventory;
  for (auto& item : load_labeled_contexts(in)) {
    const auto& target = item.context.tokens[item.context.target_index];
    if (inventory.senses.empty() && inventory.target_word.empty()) inventory.target_word = target;
    if (target != inventory.target_word)
      throw ParseError("sense inventory: mixed targets `" + inventory.target_word + "` and `" +
                       target + "`");
    auto it = std::find_if(inventory.senses.begin(), inventory.senses.end(),
                           [&](const SenseEntry& s) { return s.label == item.true_label; });
    if (it == inventory.senses.end()) {
      inventory.senses.push_back({item.true_label, {}});
      it = inventory.senses.end() - 1;
    }
    it->examples.push_back(std::move(item.context));
  }
  return inventory;
}

inline std::vector<LabeledContext> load_labeled_contexts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto out = load_labeled_contexts(in);
  return out;
}

inline SenseInventory load_sense_inventory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_sense_inventory(in);
}

namespace detail {

inline std::string single_token(const std::string& field, std::size_t line_no, const char* what) {
  auto tokens = tokenize(field);
  if (tokens.size() != 1)
    throw ParseError("line " + std::to_string(line_no) + ": " + what +
                     " must be a single token, got `" + field + "`");
  return std::move(tokens.front());
}

template <typename Fn>
void for_each_tsv_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": missing TAB separator");
    fn(line.substr(0, tab), line.substr(tab + 1), line_no);
  }
}

}  // namespace detail

inline PolarityExamples load_polarity_pairs(std::istream& in) {
  PolarityExamples out;
  std::unordered_set<std::string> seen;
  detail::for_each_tsv_line(in, [&](const std::string& a, const std::string& b, std::size_t line_no) {
    PolarityPair pair{detail::single_token(a, line_no, "positive word"),
                      detail::single_token(b, line_no, "negative word")};
    for (const auto& word : {pair.positive, pair.negative})
      if (!seen.insert(word).second)
        throw ParseError("line " + std::to_string(line_no) + ": duplicate word `" + word + "`");
    out.pairs.push_back(std::move(pair));
  });
  return out;
}

inline std::vector<std::pair<std::string, std::string>> load_polarity_tests(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  detail::for_each_tsv_line(in, [&](const std::string& a, const std::string& b, std::size_t line_no) {
    auto word = detail::single_token(a, line_no, "test word");
    if (b != "positive" && b != "negative")
      throw ParseError("line " + std::to_string(line_no) + ": label must be positive or negative");
    out.emplace_back(std::move(word), b);
  });
  return out;
}

inline PolarityExamples load_polarity_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_polarity_pairs(in);
}

inline std::vector<std::pair<std::string, std::string>> load_polarity_tests_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_polarity_tests(in);
}

}  // namespace lexsem
