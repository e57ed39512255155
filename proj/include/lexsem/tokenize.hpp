#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace lexsem {

namespace detail {

// Bytes >= 0x80 are treated as letters so UTF-8 words survive intact;
// only ASCII letters are case folded.
inline bool is_word_char(unsigned char c) {
  return std::isalpha(c) != 0 || c >= 0x80;
}

}  // namespace detail

/// Splits text into lowercase tokens: maximal runs of letters, keeping
/// apostrophes and hyphens that sit between two letters. Digits and all
/// other characters separate tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (detail::is_word_char(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if ((c == '\'' || c == '-') && !current.empty() && i + 1 < text.size() &&
               detail::is_word_char(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back(static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens,
                               std::string_view separator = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += separator;
    out += tokens[i];
  }
  return out;
}

}  // namespace lexsem
