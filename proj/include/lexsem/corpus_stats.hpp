#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexsem/dictionary.hpp"
#include "lexsem/errors.hpp"
#include "lexsem/io.hpp"
#include "lexsem/tokenize.hpp"
#include "lexsem/vector_space.hpp"

namespace lexsem {

/// Streaming corpus counts: global token frequencies plus, for every origin
/// word Y, the token counts inside the windows of half_width tokens before
/// and after each occurrence of Y. Windows never cross document boundaries
/// and exclude the central occurrence itself (other occurrences of Y inside
/// the window do count). Accumulation is an associative, commutative merge,
/// so per-document stats can be combined in any grouping.
class CorpusStats {
 public:
  CorpusStats() = default;
  CorpusStats(OriginSet origins, std::size_t half_width)
      : origins_(std::move(origins)), half_width_(half_width) {
    if (half_width_ < 1) throw std::invalid_argument("half_width must be >= 1");
    neighborhoods_.resize(origins_.size());
    window_totals_.assign(origins_.size(), 0);
  }

  const OriginSet& origins() const { return origins_; }
  std::size_t half_width() const { return half_width_; }
  std::uint64_t total_tokens() const { return total_; }

  std::uint64_t frequency(const std::string& token) const {
    auto it = freq_.find(token);
    return it == freq_.end() ? 0 : it->second;
  }

  std::uint64_t window_token_total(const std::string& origin) const {
    auto i = origins_.index_of(origin);
    return i ? window_totals_[*i] : 0;
  }

  std::uint64_t neighborhood_count(const std::string& origin, const std::string& token) const {
    auto i = origins_.index_of(origin);
    if (!i) return 0;
    auto it = neighborhoods_[*i].find(token);
    return it == neighborhoods_[*i].end() ? 0 : it->second;
  }

  const std::unordered_map<std::string, std::uint64_t>& frequencies() const { return freq_; }

  void add_document(std::span<const std::string> tokens) {
    total_ += tokens.size();
    for (const auto& token : tokens) ++freq_[token];
    if (origins_.empty()) return;
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      const auto origin_index = origins_.index_of(tokens[p]);
      if (!origin_index) continue;
      auto& neighborhood = neighborhoods_[*origin_index];
      const std::size_t lo = p >= half_width_ ? p - half_width_ : 0;
      const std::size_t hi = std::min(p + half_width_, tokens.size() - 1);
      for (std::size_t q = lo; q <= hi; ++q) {
        if (q == p) continue;
        ++neighborhood[tokens[q]];
        ++window_totals_[*origin_index];
      }
    }
  }

  void merge(const CorpusStats& other) {
    if (!(origins_ == other.origins_) || half_width_ != other.half_width_)
      throw std::invalid_argument("merge: origin set or half_width mismatch");
    total_ += other.total_;
    for (const auto& [token, count] : other.freq_) freq_[token] += count;
    for (std::size_t i = 0; i < neighborhoods_.size(); ++i) {
      window_totals_[i] += other.window_totals_[i];
      for (const auto& [token, count] : other.neighborhoods_[i])
        neighborhoods_[i][token] += count;
    }
  }

  friend void save_stats(const CorpusStats& stats, std::ostream& out);
  friend CorpusStats load_stats(std::istream& in);

 private:
  OriginSet origins_;
  std::size_t half_width_ = 50;
  std::uint64_t total_ = 0;
  std::unordered_map<std::string, std::uint64_t> freq_;
  std::vector<std::unordered_map<std::string, std::uint64_t>> neighborhoods_;
  std::vector<std::uint64_t> window_totals_;
};

namespace detail {

// Shared line-oriented ingestion: blank lines close the current document,
// max_tokens truncates the stream mid-document when the budget runs out.
class DocumentFeeder {
 public:
  DocumentFeeder(CorpusStats& stats, std::uint64_t max_tokens)
      : stats_(&stats), remaining_(max_tokens) {}

  bool exhausted() const { return remaining_ == 0; }

  void feed_line(std::string_view line) {
    if (exhausted()) return;
    auto tokens = tokenize(line);
    if (tokens.empty() && !line.empty()) return;  // punctuation-only line, not a boundary
    if (line.empty()) {
      flush();
      return;
    }
    for (auto& t : tokens) document_.push_back(std::move(t));
  }

  void flush() {
    if (document_.empty()) return;
    if (document_.size() > remaining_) document_.resize(remaining_);
    stats_->add_document(document_);
    remaining_ -= document_.size();
    document_.clear();
  }

 private:
  CorpusStats* stats_;
  std::uint64_t remaining_;
  std::vector<std::string> document_;
};

}  // namespace detail

/// Single-pass ingestion of one text stream; blank lines delimit documents.
inline CorpusStats ingest_corpus(std::istream& in, const OriginSet& origins,
                                 std::size_t half_width = 50,
                                 std::uint64_t max_tokens = UINT64_MAX) {
  CorpusStats stats(origins, half_width);
  detail::DocumentFeeder feeder(stats, max_tokens);
  std::string line;
  while (std::getline(in, line) && !feeder.exhausted()) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    feeder.feed_line(line);
  }
  feeder.flush();
  return stats;
}

inline CorpusStats ingest_corpus_text(std::string_view text, const OriginSet& origins,
                                      std::size_t half_width = 50,
                                      std::uint64_t max_tokens = UINT64_MAX) {
  std::istringstream in{std::string(text)};
  return ingest_corpus(in, origins, half_width, max_tokens);
}

/// Multiple files; each new file also starts a new document.
inline CorpusStats ingest_corpus_files(const std::vector<std::string>& paths,
                                       const OriginSet& origins, std::size_t half_width = 50,
                                       std::uint64_t max_tokens = UINT64_MAX) {
  CorpusStats stats(origins, half_width);
  detail::DocumentFeeder feeder(stats, max_tokens);
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line) && !feeder.exhausted()) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      feeder.feed_line(line);
    }
    feeder.flush();
  }
  return stats;
}

/// Token frequencies of a corpus (no window counting).
inline FrequencyTable corpus_frequency_table(const std::vector<std::string>& paths) {
  const auto stats = ingest_corpus_files(paths, OriginSet{}, 1);
  return make_frequency_table(stats.frequencies());
}

/// Clamped mutual-information estimate I(X,Y) = log+ P(X|Y)/P(X), where P(X)
/// is the corpus density of X and P(X|Y) the density of X in Y's windows.
/// Every unmeasurable case (zero frequency, unknown origin, empty windows)
/// yields 0, as does a ratio below 1.
inline double mutual_information(const CorpusStats& stats, const std::string& x,
                                 const std::string& y) {
  const auto fx = stats.frequency(x);
  const auto total = stats.total_tokens();
  if (fx == 0 || total == 0) return 0.0;
  const auto window_total = stats.window_token_total(y);
  if (window_total == 0) return 0.0;
  const auto nx = stats.neighborhood_count(y, x);
  if (nx == 0) return 0.0;
  const double px = static_cast<double>(fx) / static_cast<double>(total);
  const double px_given_y = static_cast<double>(nx) / static_cast<double>(window_total);
  const double value = std::log(px_given_y / px);
  return value > 0.0 ? value : 0.0;
}

struct CoocVector {
  std::string word;
  std::vector<double> coords;
};

/// Coordinate i is I(word, origin_i); unknown words yield the zero vector.
inline CoocVector cooc_vector(const std::string& word, const CorpusStats& stats) {
  CoocVector out{word, {}};
  out.coords.reserve(stats.origins().size());
  for (const auto& origin : stats.origins())
    out.coords.push_back(mutual_information(stats, word, origin));
  return out;
}

/// Raw co-occurrence space over the whole corpus vocabulary.
inline VectorSpace build_cooc_space(const CorpusStats& stats) {
  std::vector<std::string> vocabulary;
  vocabulary.reserve(stats.frequencies().size());
  for (const auto& [token, count] : stats.frequencies()) vocabulary.push_back(token);
  std::sort(vocabulary.begin(), vocabulary.end());
  VectorSpace space(Provenance::cooccurrence, stats.origins());
  for (const auto& word : vocabulary) space.insert(word, cooc_vector(word, stats).coords);
  return space;
}

// Sorted text dump so stats can be persisted and merged incrementally.

inline void save_stats(const CorpusStats& stats, std::ostream& out) {
  out << "corpus-stats " << stats.half_width_ << ' ' << stats.total_ << ' '
      << stats.origins_.size() << '\n';
  out << join_tokens(stats.origins_.words()) << '\n';
  std::map<std::string, std::uint64_t> sorted_freq(stats.freq_.begin(), stats.freq_.end());
  for (const auto& [token, count] : sorted_freq) out << "f\t" << token << '\t' << count << '\n';
  for (std::size_t i = 0; i < stats.origins_.size(); ++i) {
    out << "w\t" << i << '\t' << stats.window_totals_[i] << '\n';
    std::map<std::string, std::uint64_t> sorted(stats.neighborhoods_[i].begin(),
                                                stats.neighborhoods_[i].end());
    for (const auto& [token, count] : sorted)
      out << "n\t" << i << '\t' << token << '\t' << count << '\n';
  }
}

inline CorpusStats load_stats(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("corpus stats: empty file");
  auto header = split_whitespace(line);
  std::uint64_t half_width = 0, total = 0, m = 0;
  if (header.size() != 4 || header[0] != "corpus-stats" || !parse_uint(header[1], half_width) ||
      !parse_uint(header[2], total) || !parse_uint(header[3], m))
    throw ParseError("corpus stats line 1: bad header");
  if (!std::getline(in, line)) throw ParseError("corpus stats: missing origin list");
  auto origin_words = split_whitespace(line);
  if (origin_words.size() != m) throw ParseError("corpus stats line 2: origin count mismatch");
  CorpusStats stats(OriginSet(std::move(origin_words)), half_width);
  stats.total_ = total;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    const auto bad = [&](const char* why) {
      return ParseError("corpus stats line " + std::to_string(line_no) + ": " + why);
    };
    std::uint64_t count = 0, index = 0;
    if (fields[0] == "f" && fields.size() == 3 && parse_uint(fields[2], count)) {
      stats.freq_[fields[1]] = count;
    } else if (fields[0] == "w" && fields.size() == 3 && parse_uint(fields[1], index) &&
               parse_uint(fields[2], count)) {
      if (index >= m) throw bad("origin index out of range");
      stats.window_totals_[index] = count;
    } else if (fields[0] == "n" && fields.size() == 4 && parse_uint(fields[1], index) &&
               parse_uint(fields[3], count)) {
      if (index >= m) throw bad("origin index out of range");
      stats.neighborhoods_[index][fields[2]] = count;
    } else {
      throw bad("unrecognized record");
    }
  }
  return stats;
}

inline void save_stats(const CorpusStats& stats, const std::string& path) {
  std::ostringstream out;
  save_stats(stats, out);
  write_file(path, out.str());
}

inline CorpusStats load_stats(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return load_stats(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace lexsem
