#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lexsem/dictionary.hpp"
#include "lexsem/errors.hpp"
#include "lexsem/io.hpp"
#include "lexsem/vector_space.hpp"

namespace lexsem {

enum class LinkMode { unit, weighted };

inline const char* to_string(LinkMode m) { return m == LinkMode::unit ? "unit" : "weighted"; }

/// Frequency-aware edge weight: -log(n^2 / (N1*N2)) where n is the number of
/// direct links between the two words and N1, N2 their total link incidences.
/// Non-negative because n <= min(N1, N2).
inline double link_length(std::uint64_t n, std::uint64_t n1, std::uint64_t n2) {
  if (n < 1) throw std::domain_error("link_length: n must be >= 1");
  if (n > n1 || n > n2) throw std::domain_error("link_length: n exceeds an incidence total");
  const double ratio =
      (static_cast<double>(n) * static_cast<double>(n)) /
      (static_cast<double>(n1) * static_cast<double>(n2));
  return -std::log(ratio) + 0.0;  // +0.0 folds -0 into +0
}

/// Undirected word graph: one edge per unordered word pair carrying the
/// direct-link count n, plus per-node incidence totals N (the sum of n over
/// incident edges). Node ids are assigned in sorted name order, so exports
/// and iteration are deterministic.
class ReferenceNetwork {
 public:
  using NodeId = std::uint32_t;

  struct Neighbor {
    NodeId node;
    std::uint64_t links;
  };

  struct Edge {
    std::string first, second;
    std::uint64_t links;
  };

  /// One edge increment per occurrence of a definition token T under
  /// headword H (T != H); self-links are dropped entirely.
  static ReferenceNetwork build(const DictionaryEntries& entries) {
    std::vector<Edge> edges;
    std::vector<std::string> nodes;
    std::unordered_map<std::string, std::unordered_map<std::string, std::uint64_t>> counts;
    for (const auto& entry : entries.entries()) {
      nodes.push_back(entry.headword);
      for (const auto& token : entry.definition_tokens) {
        nodes.push_back(token);
        if (token == entry.headword) continue;
        const bool head_first = entry.headword < token;
        const auto& a = head_first ? entry.headword : token;
        const auto& b = head_first ? token : entry.headword;
        ++counts[a][b];
      }
    }
    for (auto& [a, row] : counts)
      for (auto& [b, n] : row) edges.push_back({a, b, n});
    return ReferenceNetwork(std::move(edges), std::move(nodes));
  }

  /// Direct construction from an edge list; counts for repeated pairs
  /// accumulate. extra_nodes registers isolated nodes.
  static ReferenceNetwork from_edges(std::vector<Edge> edges,
                                     std::vector<std::string> extra_nodes = {}) {
    return ReferenceNetwork(std::move(edges), std::move(extra_nodes));
  }

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  bool has_node(const std::string& word) const { return ids_.count(word) != 0; }

  NodeId id_of(const std::string& word) const {
    auto it = ids_.find(word);
    if (it == ids_.end()) throw std::out_of_range("unknown word: " + word);
    return it->second;
  }

  const std::string& name_of(NodeId id) const { return names_[id]; }
  const std::vector<std::string>& node_names() const { return names_; }

  std::uint64_t incidence(NodeId id) const { return incidence_[id]; }
  std::uint64_t incidence(const std::string& word) const { return incidence_[id_of(word)]; }

  const std::vector<Neighbor>& neighbors(NodeId id) const { return adjacency_[id]; }

  /// Direct-link count n for the unordered pair, 0 when unlinked.
  std::uint64_t direct_links(const std::string& a, const std::string& b) const {
    auto ia = ids_.find(a);
    auto ib = ids_.find(b);
    if (ia == ids_.end() || ib == ids_.end()) return 0;
    for (const auto& nb : adjacency_[ia->second])
      if (nb.node == ib->second) return nb.links;
    return 0;
  }

  double edge_length(NodeId a, const Neighbor& nb, LinkMode mode) const {
    return mode == LinkMode::unit ? 1.0 : link_length(nb.links, incidence_[a], incidence_[nb.node]);
  }

 private:
  ReferenceNetwork(std::vector<Edge> edges, std::vector<std::string> extra_nodes) {
    std::unordered_set<std::string> seen;
    for (const auto& e : edges) {
      seen.insert(e.first);
      seen.insert(e.second);
    }
    seen.insert(extra_nodes.begin(), extra_nodes.end());
    names_.assign(seen.begin(), seen.end());
    std::sort(names_.begin(), names_.end());
    ids_.reserve(names_.size());
    for (NodeId i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);

    std::map<std::pair<NodeId, NodeId>, std::uint64_t> pair_counts;
    for (const auto& e : edges) {
      if (e.first == e.second) continue;  // self-loops never enter the graph
      if (e.links == 0) throw std::invalid_argument("edge with zero links");
      NodeId a = ids_.at(e.first);
      NodeId b = ids_.at(e.second);
      if (a > b) std::swap(a, b);
      pair_counts[{a, b}] += e.links;
    }
    adjacency_.assign(names_.size(), {});
    incidence_.assign(names_.size(), 0);
    edge_count_ = pair_counts.size();
    for (const auto& [pair, n] : pair_counts) {
      adjacency_[pair.first].push_back({pair.second, n});
      adjacency_[pair.second].push_back({pair.first, n});
      incidence_[pair.first] += n;
      incidence_[pair.second] += n;
    }
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::uint64_t> incidence_;
  std::size_t edge_count_ = 0;
};

inline ReferenceNetwork build_network(const DictionaryEntries& entries) {
  return ReferenceNetwork::build(entries);
}

/// Distances from one origin to every node; unreachable nodes hold infinity.
struct DistanceField {
  std::vector<double> distances;
  double max_finite = 0.0;

  static constexpr double unreachable() { return std::numeric_limits<double>::infinity(); }

  std::map<std::string, double> to_map(const ReferenceNetwork& net) const {
    std::map<std::string, double> out;
    for (std::size_t id = 0; id < distances.size(); ++id)
      out.emplace(net.name_of(static_cast<ReferenceNetwork::NodeId>(id)), distances[id]);
    return out;
  }
};

/// Runs Dijkstra from single sources over a fixed network and edge-length
/// mode; edge lengths are cached once since the same engine is reused for
/// every origin.
class ShortestPathEngine {
 public:
  ShortestPathEngine(const ReferenceNetwork& net, LinkMode mode) : net_(&net) {
    lengths_.resize(net.node_count());
    for (ReferenceNetwork::NodeId u = 0; u < net.node_count(); ++u) {
      const auto& nbs = net.neighbors(u);
      lengths_[u].reserve(nbs.size());
      for (const auto& nb : nbs) lengths_[u].push_back(net.edge_length(u, nb, mode));
    }
  }

  DistanceField from(ReferenceNetwork::NodeId source) const {
    DistanceField field;
    field.distances.assign(net_->node_count(), DistanceField::unreachable());
    using Item = std::pair<double, ReferenceNetwork::NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    field.distances[source] = 0.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
      const auto [dist, u] = queue.top();
      queue.pop();
      if (dist > field.distances[u]) continue;  // stale entry
      const auto& nbs = net_->neighbors(u);
      for (std::size_t i = 0; i < nbs.size(); ++i) {
        const auto v = nbs[i].node;
        const double alt = dist + lengths_[u][i];
        if (alt < field.distances[v]) {
          field.distances[v] = alt;
          queue.push({alt, v});
        }
      }
    }
    for (double d : field.distances)
      if (d != DistanceField::unreachable()) field.max_finite = std::max(field.max_finite, d);
    return field;
  }

  DistanceField from(const std::string& origin) const { return from(net_->id_of(origin)); }

 private:
  const ReferenceNetwork* net_;
  std::vector<std::vector<double>> lengths_;
};

/// Exact shortest-path lengths from origin to every node under the selected
/// edge-length mode.
inline DistanceField single_source_distances(const ReferenceNetwork& net, const std::string& origin,
                                             LinkMode mode) {
  return ShortestPathEngine(net, mode).from(origin);
}

struct RawDistanceVector {
  std::string word;
  std::vector<double> coords;
};

namespace detail {

// Unreachable coordinates resolve to (max finite distance to that origin) + 1
// so every coordinate is finite and unreachable words rank strictly farthest.
inline double resolve_coordinate(const DistanceField& field, ReferenceNetwork::NodeId id) {
  const double d = field.distances[id];
  return d == DistanceField::unreachable() ? field.max_finite + 1.0 : d;
}

}  // namespace detail

/// Assembles one word's raw distance vector from per-origin fields given in
/// origin order.
inline RawDistanceVector distance_vector(const ReferenceNetwork& net, const std::string& word,
                                         const std::vector<DistanceField>& fields) {
  const auto id = net.id_of(word);
  RawDistanceVector out{word, {}};
  out.coords.reserve(fields.size());
  for (const auto& field : fields) out.coords.push_back(detail::resolve_coordinate(field, id));
  return out;
}

/// One single-source run per origin. The runs are independent and share the
/// network read-only, so they execute on a small worker pool; slot i always
/// holds origin i, keeping the merge deterministic regardless of scheduling.
inline std::vector<DistanceField> origin_distance_fields(const ReferenceNetwork& net,
                                                         const OriginSet& origins, LinkMode mode) {
  const ShortestPathEngine engine(net, mode);
  std::vector<ReferenceNetwork::NodeId> sources;
  sources.reserve(origins.size());
  for (const auto& origin : origins) sources.push_back(net.id_of(origin));

  std::vector<DistanceField> fields(origins.size());
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      std::min({hardware, 8u, static_cast<unsigned>(sources.size() ? sources.size() : 1)});
  if (workers <= 1) {
    for (std::size_t i = 0; i < sources.size(); ++i) fields[i] = engine.from(sources[i]);
    return fields;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto drain = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= sources.size()) return;
      try {
        fields[i] = engine.from(sources[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
  return fields;
}

/// Raw distance space over every network node: one single-source run per
/// origin, then per-word assembly.
inline VectorSpace build_distance_space(const ReferenceNetwork& net, const OriginSet& origins,
                                        LinkMode mode) {
  const auto fields = origin_distance_fields(net, origins, mode);
  VectorSpace space(Provenance::distance, origins);
  for (const auto& word : net.node_names()) {
    const auto id = net.id_of(word);
    std::vector<double> coords;
    coords.reserve(fields.size());
    for (const auto& field : fields) coords.push_back(detail::resolve_coordinate(field, id));
    space.insert(word, std::move(coords));
  }
  return space;
}

// Text export: `# node <word> <N>` summary lines followed by one
// `w1<TAB>w2<TAB>n` line per edge, both sorted.

inline void save_network(const ReferenceNetwork& net, std::ostream& out) {
  out << "# reference network: " << net.node_count() << " nodes, " << net.edge_count()
      << " edges\n";
  for (const auto& name : net.node_names())
    out << "# node\t" << name << '\t' << net.incidence(net.id_of(name)) << '\n';
  for (const auto& name : net.node_names()) {
    const auto u = net.id_of(name);
    for (const auto& nb : net.neighbors(u))
      if (u < nb.node) out << name << '\t' << net.name_of(nb.node) << '\t' << nb.links << '\n';
  }
}

inline ReferenceNetwork load_network(std::istream& in) {
  std::vector<ReferenceNetwork::Edge> edges;
  std::vector<std::string> nodes;
  std::map<std::string, std::uint64_t> declared_incidence;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto fields = split_whitespace(line.substr(1));
      if (fields.size() == 3 && fields[0] == "node") {
        std::uint64_t n = 0;
        if (!parse_uint(fields[2], n))
          throw ParseError("network line " + std::to_string(line_no) + ": bad incidence");
        nodes.push_back(fields[1]);
        declared_incidence[fields[1]] = n;
      }
      continue;
    }
    auto fields = split_whitespace(line);
    if (fields.size() != 3)
      throw ParseError("network line " + std::to_string(line_no) + ": expected `w1 w2 n`");
    std::uint64_t n = 0;
    if (!parse_uint(fields[2], n) || n == 0)
      throw ParseError("network line " + std::to_string(line_no) + ": bad link count `" +
                       fields[2] + "`");
    edges.push_back({std::move(fields[0]), std::move(fields[1]), n});
  }
  auto net = ReferenceNetwork::from_edges(std::move(edges), std::move(nodes));
  for (const auto& [word, n] : declared_incidence)
    if (net.incidence(word) != n)
      throw ParseError("network: incidence summary for `" + word + "` (" + std::to_string(n) +
                       ") does not match edges (" + std::to_string(net.incidence(word)) + ")");
  return net;
}

inline void save_network(const ReferenceNetwork& net, const std::string& path) {
  std::ostringstream out;
  save_network(net, out);
  write_file(path, out.str());
}

inline ReferenceNetwork load_network(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return load_network(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace lexsem
