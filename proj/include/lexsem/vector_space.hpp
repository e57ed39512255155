#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lexsem/dictionary.hpp"
#include "lexsem/errors.hpp"
#include "lexsem/io.hpp"

namespace lexsem {

enum class Provenance { distance, cooccurrence };
enum class NormState { raw, coord_normalized, fully_normalized };

inline const char* to_string(Provenance p) {
  return p == Provenance::distance ? "distance" : "cooccurrence";
}

inline const char* to_string(NormState s) {
  switch (s) {
    case NormState::raw: return "raw";
    case NormState::coord_normalized: return "coord_normalized";
    default: return "fully_normalized";
  }
}

constexpr double kDegenerateSigma = 1e-12;
constexpr double kDegenerateNorm = 1e-12;

/// Inner product of the two directions; 0 when either vector is (near) zero.
inline double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("cosine: length mismatch");
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  const double nu = std::sqrt(uu);
  const double nv = std::sqrt(vv);
  if (nu < kDegenerateNorm || nv < kDegenerateNorm) return 0.0;
  return uv / (nu * nv);
}

/// Immutable word -> dense vector map with provenance and an explicit
/// normalization state. The state only ever advances
/// raw -> coord_normalized -> fully_normalized; the normalization steps
/// return new spaces.
class VectorSpace {
 public:
  VectorSpace() = default;
  VectorSpace(Provenance provenance, OriginSet origins)
      : provenance_(provenance), origins_(std::move(origins)) {}

  Provenance provenance() const { return provenance_; }
  NormState state() const { return state_; }
  const OriginSet& origins() const { return origins_; }
  std::size_t dimension() const { return origins_.size(); }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }

  void insert(std::string word, std::vector<double> coords) {
    if (coords.size() != dimension())
      throw std::invalid_argument("vector length " + std::to_string(coords.size()) +
                                  " does not match dimension " + std::to_string(dimension()));
    auto [it, inserted] = vectors_.emplace(std::move(word), std::move(coords));
    if (!inserted) throw std::invalid_argument("duplicate word: " + it->first);
  }

  const std::vector<double>* find(const std::string& word) const {
    auto it = vectors_.find(word);
    return it == vectors_.end() ? nullptr : &it->second;
  }

  /// Sorted by word; iteration order is deterministic.
  const std::map<std::string, std::vector<double>>& vectors() const { return vectors_; }

  friend bool operator==(const VectorSpace& a, const VectorSpace& b) {
    return a.provenance_ == b.provenance_ && a.state_ == b.state_ && a.origins_ == b.origins_ &&
           a.vectors_ == b.vectors_;
  }

  friend VectorSpace normalize_across_words(VectorSpace space);
  friend VectorSpace normalize_within_vector(VectorSpace space);
  friend VectorSpace truncate_dimension(VectorSpace space, std::size_t k);
  friend VectorSpace load_space(std::istream& in);

 private:
  Provenance provenance_ = Provenance::distance;
  NormState state_ = NormState::raw;
  OriginSet origins_;
  std::map<std::string, std::vector<double>> vectors_;
};

/// Step one: each coordinate becomes its deviation across words,
/// (v_i - a_i) / sigma_i with the population standard deviation. Coordinates
/// whose sigma is degenerate are zeroed for every word.
inline VectorSpace normalize_across_words(VectorSpace space) {
  if (space.state_ != NormState::raw)
    throw std::logic_error("normalize_across_words: space is not raw");
  const std::size_t words = space.size();
  if (words < 2) throw std::invalid_argument("normalize_across_words: need at least 2 words");
  const std::size_t m = space.dimension();
  std::vector<double> mean(m, 0.0), sigma(m, 0.0);
  for (const auto& [word, coords] : space.vectors_)
    for (std::size_t i = 0; i < m; ++i) mean[i] += coords[i];
  for (std::size_t i = 0; i < m; ++i) mean[i] /= static_cast<double>(words);
  for (const auto& [word, coords] : space.vectors_)
    for (std::size_t i = 0; i < m; ++i) {
      const double d = coords[i] - mean[i];
      sigma[i] += d * d;
    }
  for (std::size_t i = 0; i < m; ++i) sigma[i] = std::sqrt(sigma[i] / static_cast<double>(words));
  for (auto& [word, coords] : space.vectors_)
    for (std::size_t i = 0; i < m; ++i)
      coords[i] = sigma[i] < kDegenerateSigma ? 0.0 : (coords[i] - mean[i]) / sigma[i];
  space.state_ = NormState::coord_normalized;
  return space;
}

/// Step two: each vector is recentred and rescaled by its own coordinate mean
/// and population standard deviation; zero-variance vectors become zero.
inline VectorSpace normalize_within_vector(VectorSpace space) {
  if (space.state_ != NormState::coord_normalized)
    throw std::logic_error("normalize_within_vector: space is not coord_normalized");
  const std::size_t m = space.dimension();
  if (m < 2) throw std::invalid_argument("normalize_within_vector: need at least 2 coordinates");
  for (auto& [word, coords] : space.vectors_) {
    double mean = 0.0;
    for (double c : coords) mean += c;
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double c : coords) var += (c - mean) * (c - mean);
    const double sigma = std::sqrt(var / static_cast<double>(m));
    for (double& c : coords) c = sigma < kDegenerateSigma ? 0.0 : (c - mean) / sigma;
  }
  space.state_ = NormState::fully_normalized;
  return space;
}

/// Keeps the first k coordinates (and origins). Truncation happens before
/// normalization, so the space must still be raw.
inline VectorSpace truncate_dimension(VectorSpace space, std::size_t k) {
  if (space.state_ != NormState::raw) throw std::logic_error("truncate_dimension: space is not raw");
  if (k < 1 || k > space.dimension())
    throw std::out_of_range("truncate_dimension: k=" + std::to_string(k) + " out of range 1.." +
                            std::to_string(space.dimension()));
  if (k == space.dimension()) return space;
  std::vector<std::string> origins(space.origins_.words().begin(),
                                   space.origins_.words().begin() + static_cast<std::ptrdiff_t>(k));
  space.origins_ = OriginSet(std::move(origins));
  for (auto& [word, coords] : space.vectors_) coords.resize(k);
  return space;
}

// Text format: `provenance m state`, the origin list, then one `word v1..vm`
// line per word with round-trip decimal precision.

inline void save_space(const VectorSpace& space, std::ostream& out) {
  out << to_string(space.provenance()) << ' ' << space.dimension() << ' '
      << to_string(space.state()) << '\n';
  out << join_tokens(space.origins().words()) << '\n';
  for (const auto& [word, coords] : space.vectors()) {
    out << word;
    for (double c : coords) out << ' ' << format_double(c);
    out << '\n';
  }
}

inline VectorSpace load_space(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line))
      throw ParseError(std::string("vector space: truncated file, missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("header");
  const auto header = split_whitespace(line);
  if (header.size() != 3) throw ParseError("vector space line 1: expected `provenance m state`");
  Provenance provenance;
  if (header[0] == "distance") provenance = Provenance::distance;
  else if (header[0] == "cooccurrence") provenance = Provenance::cooccurrence;
  else throw ParseError("vector space line 1: unknown provenance `" + header[0] + "`");
  std::uint64_t m = 0;
  if (!parse_uint(header[1], m)) throw ParseError("vector space line 1: bad dimension `" + header[1] + "`");
  NormState state;
  if (header[2] == "raw") state = NormState::raw;
  else if (header[2] == "coord_normalized") state = NormState::coord_normalized;
  else if (header[2] == "fully_normalized") state = NormState::fully_normalized;
  else throw ParseError("vector space line 1: unknown state `" + header[2] + "`");

  next_line("origin list");
  auto origin_words = split_whitespace(line);
  if (origin_words.size() != m)
    throw ParseError("vector space line 2: expected " + std::to_string(m) + " origins, found " +
                     std::to_string(origin_words.size()));

  VectorSpace space(provenance, OriginSet(std::move(origin_words)));
  space.state_ = state;

  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_whitespace(line);
    if (fields.size() != m + 1)
      throw ParseError("vector space line " + std::to_string(line_no) + ": expected " +
                       std::to_string(m + 1) + " fields, found " + std::to_string(fields.size()));
    std::vector<double> coords(m);
    for (std::size_t i = 0; i < m; ++i)
      if (!parse_double(fields[i + 1], coords[i]))
        throw ParseError("vector space line " + std::to_string(line_no) + ": bad number `" +
                         fields[i + 1] + "`");
    if (space.vectors_.count(fields[0]) != 0)
      throw ParseError("vector space line " + std::to_string(line_no) + ": duplicate word `" +
                       fields[0] + "`");
    space.vectors_.emplace(std::move(fields[0]), std::move(coords));
  }
  return space;
}

/// Path-based variants; a .gz extension selects transparent compression.
inline void save_space(const VectorSpace& space, const std::string& path) {
  std::ostringstream out;
  save_space(space, out);
  write_file(path, out.str());
}

inline VectorSpace load_space(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return load_space(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace lexsem
