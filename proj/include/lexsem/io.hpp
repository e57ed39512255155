#pragma once

#include <zlib.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lexsem {

/// Formats a double with enough digits to round-trip bit-exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline bool has_gz_extension(std::string_view path) {
  return path.size() > 3 && path.substr(path.size() - 3) == ".gz";
}

/// Reads a whole file into memory. Files ending in .gz are decompressed
/// transparently.
inline std::string read_file(const std::string& path) {
  if (has_gz_extension(path)) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (gz == nullptr) throw std::runtime_error("cannot open " + path);
    std::string data;
    char buf[1 << 16];
    int got = 0;
    while ((got = gzread(gz, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(got));
    const bool bad = got < 0;
    gzclose(gz);
    if (bad) throw std::runtime_error("gzip read error in " + path);
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return std::move(out).str();
}

/// Writes a whole file, compressing when the path ends in .gz.
inline void write_file(const std::string& path, std::string_view data) {
  if (has_gz_extension(path)) {
    gzFile gz = gzopen(path.c_str(), "wb");
    if (gz == nullptr) throw std::runtime_error("cannot open " + path + " for writing");
    const auto wrote = gzwrite(gz, data.data(), static_cast<unsigned>(data.size()));
    gzclose(gz);
    if (wrote != static_cast<int>(data.size()) && !data.empty())
      throw std::runtime_error("gzip write error in " + path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write error in " + path);
}

inline std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

/// Strict double parser: the whole field must be consumed.
inline bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + field.size() && !field.empty();
}

inline bool parse_uint(const std::string& field, std::uint64_t& out) {
  if (field.empty()) return false;
  out = 0;
  for (char c : field) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

}  // namespace lexsem
