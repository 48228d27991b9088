#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lobound/event.hpp"

namespace lobound {

// Orthogonality graph: immutable after construction, vertices in canonical
// order (settings string, then outcomes string), adjacency stored as bitset
// rows for fast clique search.
class OrthoGraph {
 public:
  OrthoGraph() = default;

  // Canonical constructor: sorts the events and wires adjacency through
  // orthogonal(). Rejects duplicates.
  static OrthoGraph from_events(std::vector<Event> events);

  std::size_t size() const { return vertices_.size(); }
  const Event& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Event>& vertices() const { return vertices_; }

  bool adjacent(std::size_t i, std::size_t j) const {
    return (adj_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  std::size_t degree(std::size_t i) const;
  std::size_t edge_count() const;

  std::optional<std::size_t> find_vertex(const Event& e) const;

  std::size_t words_per_row() const { return words_; }
  const uint64_t* row(std::size_t i) const { return adj_.data() + i * words_; }

  friend OrthoGraph conormal_product(const OrthoGraph&, const OrthoGraph&);
  friend OrthoGraph build_single_copy_graph(const std::vector<Event>&);

 private:
  void init_vertices(std::vector<Event> events, bool sort_canonical);
  void set_edge(std::size_t i, std::size_t j);

  std::vector<Event> vertices_;
  std::size_t words_ = 0;
  std::vector<uint64_t> adj_;
};

// The 16 single-copy events minus the zero set, edges per orthogonal().
// zero_events must be single-copy events.
OrthoGraph build_single_copy_graph(const std::vector<Event>& zero_events);

// Co-normal product: vertex set is the cartesian product (events
// concatenated, re-sorted canonically); (u1,u2) ~ (v1,v2) iff u1~v1 or
// u2~v2. For orthogonality graphs this coincides with orthogonal() on the
// concatenated events.
OrthoGraph conormal_product(const OrthoGraph& g1, const OrthoGraph& g2);

struct Clique {
  std::vector<uint32_t> members;  // ascending vertex indices
  bool maximal = false;
};

// Flat container for millions of cliques.
class CliqueList {
 public:
  void add(std::span<const uint32_t> members);
  std::size_t size() const { return offsets_.size() - 1; }
  std::span<const uint32_t> operator[](std::size_t i) const {
    return {flat_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  // Sorts cliques lexicographically by member sequence.
  void canonicalize();

 private:
  std::vector<uint32_t> flat_;
  std::vector<std::size_t> offsets_{0};
};

// Streams every maximal clique (members ascending) in algorithm order.
// Bron-Kerbosch with degeneracy ordering and pivoting.
void for_each_maximal_clique(
    const OrthoGraph& g,
    const std::function<void(std::span<const uint32_t>)>& visit);

// All maximal cliques in canonical order (lexicographic member sequences).
CliqueList maximal_cliques(const OrthoGraph& g);

std::size_t count_maximal_cliques(const OrthoGraph& g);

enum class CliqueStatus { Absent, Clique, MaximalClique };

// Classifies an event set within g. Throws on events missing from g.
CliqueStatus contains_clique(const OrthoGraph& g, const std::vector<Event>& events);

// Graphviz rendering, vertices labelled "a1b1a2b2|x1y1x2y2".
std::string to_dot(const OrthoGraph& g, const std::string& name = "ortho");

}  // namespace lobound
