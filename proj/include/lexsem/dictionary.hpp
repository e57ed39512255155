#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexsem/errors.hpp"
#include "lexsem/tokenize.hpp"

namespace lexsem {

struct DictionaryEntry {
  std::string headword;
  std::vector<std::string> definition_tokens;
};

/// One entry per distinct headword, kept in first-seen order. Re-adding a
/// headword appends to its definition token list.
class DictionaryEntries {
 public:
  void add(std::string headword, std::vector<std::string> definition_tokens) {
    auto it = index_.find(headword);
    if (it == index_.end()) {
      index_.emplace(headword, entries_.size());
      entries_.push_back({std::move(headword), std::move(definition_tokens)});
    } else {
      auto& tokens = entries_[it->second].definition_tokens;
      tokens.insert(tokens.end(), definition_tokens.begin(), definition_tokens.end());
    }
  }

  const std::vector<DictionaryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const DictionaryEntry* find(const std::string& headword) const {
    auto it = index_.find(headword);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

 private:
  std::vector<DictionaryEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Parses TAB-separated `headword<TAB>definition text` lines. Blank lines and
/// lines starting with `#` are skipped; CRLF input is accepted. A multiword
/// head is keyed by its first token and the remaining head tokens are
/// prepended to the definition.
inline DictionaryEntries parse_dictionary(std::istream& in) {
  DictionaryEntries out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("dictionary line " + std::to_string(line_no) + ": missing TAB separator");
    auto head_tokens = tokenize(std::string_view(line).substr(0, tab));
    if (head_tokens.empty())
      throw ParseError("dictionary line " + std::to_string(line_no) + ": empty headword");
    auto def_tokens = tokenize(std::string_view(line).substr(tab + 1));
    std::vector<std::string> definition;
    definition.reserve(head_tokens.size() - 1 + def_tokens.size());
    definition.insert(definition.end(), std::make_move_iterator(head_tokens.begin() + 1),
                      std::make_move_iterator(head_tokens.end()));
    definition.insert(definition.end(), std::make_move_iterator(def_tokens.begin()),
                      std::make_move_iterator(def_tokens.end()));
    out.add(std::move(head_tokens.front()), std::move(definition));
  }
  return out;
}

inline DictionaryEntries parse_dictionary_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dictionary(in);
}

inline DictionaryEntries parse_dictionary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dictionary(in);
}

/// Token counts plus a deterministic rank order: descending count, ties
/// broken lexicographically.
struct FrequencyTable {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::vector<std::string> ranked;
  std::uint64_t total_tokens = 0;
};

inline FrequencyTable make_frequency_table(std::unordered_map<std::string, std::uint64_t> counts) {
  FrequencyTable table;
  table.counts = std::move(counts);
  table.ranked.reserve(table.counts.size());
  for (const auto& [token, count] : table.counts) {
    table.ranked.push_back(token);
    table.total_tokens += count;
  }
  std::sort(table.ranked.begin(), table.ranked.end(),
            [&](const std::string& a, const std::string& b) {
              const auto ca = table.counts.at(a);
              const auto cb = table.counts.at(b);
              return ca != cb ? ca > cb : a < b;
            });
  return table;
}

/// Frequencies over all definition text; headwords count only where they
/// occur inside definitions.
inline FrequencyTable rank_frequencies(const DictionaryEntries& entries) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& entry : entries.entries())
    for (const auto& token : entry.definition_tokens) ++counts[token];
  return make_frequency_table(std::move(counts));
}

/// Fixed, ordered list of origin words; position i defines coordinate i of
/// every vector built against this set.
class OriginSet {
 public:
  OriginSet() = default;

  explicit OriginSet(std::vector<std::string> words) : words_(std::move(words)) {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i].empty()) throw std::invalid_argument("origin words must be non-empty");
      if (!index_.emplace(words_[i], i).second)
        throw std::invalid_argument("duplicate origin word: " + words_[i]);
    }
  }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::size_t> index_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  friend bool operator==(const OriginSet& a, const OriginSet& b) { return a.words_ == b.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Picks the tokens at ranks start_rank .. start_rank+count-1 (1-based).
inline OriginSet select_origins(const FrequencyTable& table, std::size_t start_rank = 51,
                                std::size_t count = 1000) {
  if (start_rank < 1) throw std::invalid_argument("select_origins: start_rank must be >= 1");
  if (count < 1) throw std::invalid_argument("select_origins: count must be >= 1");
  const std::size_t needed = start_rank + count - 1;
  if (table.ranked.size() < needed)
    throw std::invalid_argument("select_origins: need " + std::to_string(needed) +
                                " ranked tokens, have " + std::to_string(table.ranked.size()));
  std::vector<std::string> words(table.ranked.begin() + static_cast<std::ptrdiff_t>(start_rank - 1),
                                 table.ranked.begin() + static_cast<std::ptrdiff_t>(needed));
  return OriginSet(std::move(words));
}

}  // namespace lexsem
