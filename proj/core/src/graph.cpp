#include "lobound/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lobound {
namespace {

bool all_zero(const uint64_t* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i]) return false;
  }
  return true;
}

std::size_t popcount_words(const uint64_t* w, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(w[i]);
  return c;
}

std::size_t popcount_and(const uint64_t* a, const uint64_t* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

template <typename Fn>
void for_each_bit(const uint64_t* w, std::size_t words, Fn&& fn) {
  for (std::size_t i = 0; i < words; ++i) {
    uint64_t word = w[i];
    while (word) {
      const int bit = std::countr_zero(word);
      fn(static_cast<uint32_t>(i * 64 + bit));
      word &= word - 1;
    }
  }
}

}  // namespace

void OrthoGraph::init_vertices(std::vector<Event> events, bool sort_canonical) {
  if (sort_canonical) std::sort(events.begin(), events.end(), canonical_less);
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i] == events[i - 1]) {
      throw std::invalid_argument("duplicate vertex: " + events[i].label());
    }
  }
  vertices_ = std::move(events);
  words_ = (vertices_.size() + 63) / 64;
  adj_.assign(vertices_.size() * words_, 0);
}

void OrthoGraph::set_edge(std::size_t i, std::size_t j) {
  adj_[i * words_ + j / 64] |= uint64_t{1} << (j % 64);
  adj_[j * words_ + i / 64] |= uint64_t{1} << (i % 64);
}

OrthoGraph OrthoGraph::from_events(std::vector<Event> events) {
  OrthoGraph g;
  g.init_vertices(std::move(events), true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (orthogonal(g.vertices_[i], g.vertices_[j])) g.set_edge(i, j);
    }
  }
  return g;
}

std::size_t OrthoGraph::degree(std::size_t i) const {
  return popcount_words(row(i), words_);
}

std::size_t OrthoGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < size(); ++i) total += degree(i);
  return total / 2;
}

std::optional<std::size_t> OrthoGraph::find_vertex(const Event& e) const {
  const auto it =
      std::lower_bound(vertices_.begin(), vertices_.end(), e, canonical_less);
  if (it != vertices_.end() && *it == e) {
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  return std::nullopt;
}

OrthoGraph build_single_copy_graph(const std::vector<Event>& zero_events) {
  std::vector<Event> events = all_single_copy_events();
  for (const auto& z : zero_events) {
    if (z.copy_count() != 1) {
      throw std::invalid_argument("zero event is not single-copy: " + z.label());
    }
    const auto it = std::find(events.begin(), events.end(), z);
    if (it == events.end()) {
      throw std::invalid_argument("zero event listed twice: " + z.label());
    }
    events.erase(it);
  }
  return OrthoGraph::from_events(std::move(events));
}

OrthoGraph conormal_product(const OrthoGraph& g1, const OrthoGraph& g2) {
  const std::size_t n1 = g1.size(), n2 = g2.size();
  std::vector<Event> events;
  std::vector<std::pair<uint32_t, uint32_t>> source;
  events.reserve(n1 * n2);
  source.reserve(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      events.push_back(concat(g1.vertex(i), g2.vertex(j)));
      source.emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
    }
  }
  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return canonical_less(events[a], events[b]);
  });

  OrthoGraph g;
  std::vector<Event> sorted;
  sorted.reserve(events.size());
  for (std::size_t k : order) sorted.push_back(events[k]);
  g.init_vertices(std::move(sorted), false);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto [i1, i2] = source[order[p]];
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const auto [j1, j2] = source[order[q]];
      if (g1.adjacent(i1, j1) || g2.adjacent(i2, j2)) g.set_edge(p, q);
    }
  }
  return g;
}

void CliqueList::add(std::span<const uint32_t> members) {
  flat_.insert(flat_.end(), members.begin(), members.end());
  offsets_.push_back(flat_.size());
}

void CliqueList::canonicalize() {
  std::vector<std::size_t> idx(size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto sa = (*this)[a], sb = (*this)[b];
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(),
                                        sb.end());
  });
  std::vector<uint32_t> flat;
  flat.reserve(flat_.size());
  std::vector<std::size_t> offsets;
  offsets.reserve(offsets_.size());
  offsets.push_back(0);
  for (std::size_t k : idx) {
    const auto s = (*this)[k];
    flat.insert(flat.end(), s.begin(), s.end());
    offsets.push_back(flat.size());
  }
  flat_ = std::move(flat);
  offsets_ = std::move(offsets);
}

namespace {

// Bron-Kerbosch with pivoting over bitset candidate sets; the top level
// walks a degeneracy ordering, which keeps recursion shallow on these
// near-regular product graphs.
class CliqueSearch {
 public:
  CliqueSearch(const OrthoGraph& g,
               const std::function<void(std::span<const uint32_t>)>& visit)
      : g_(g), words_(g.words_per_row()), visit_(visit) {}

  void run() {
    const std::size_t n = g_.size();
    if (n == 0) return;
    scratch_.assign((n + 2) * 2 * words_, 0);
    const auto order = degeneracy_order();
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;

    std::vector<uint64_t> p(words_), x(words_);
    for (std::size_t k = 0; k < n; ++k) {
      const uint32_t v = order[k];
      const uint64_t* nb = g_.row(v);
      std::fill(p.begin(), p.end(), 0);
      std::fill(x.begin(), x.end(), 0);
      for_each_bit(nb, words_, [&](uint32_t w) {
        auto& target = pos[w] > k ? p : x;
        target[w / 64] |= uint64_t{1} << (w % 64);
      });
      r_.push_back(v);
      expand(p.data(), x.data(), 0);
      r_.pop_back();
    }
  }

 private:
  std::vector<uint32_t> degeneracy_order() const {
    const std::size_t n = g_.size();
    std::vector<std::size_t> deg(n);
    std::vector<bool> removed(n, false);
    for (std::size_t i = 0; i < n; ++i) deg[i] = g_.degree(i);
    std::vector<uint32_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n, best_deg = n + 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (!removed[i] && deg[i] < best_deg) {
          best = i;
          best_deg = deg[i];
        }
      }
      removed[best] = true;
      order.push_back(static_cast<uint32_t>(best));
      for_each_bit(g_.row(best), words_, [&](uint32_t w) {
        if (!removed[w]) --deg[w];
      });
    }
    return order;
  }

  void expand(uint64_t* p, uint64_t* x, std::size_t depth) {
    if (all_zero(p, words_)) {
      if (all_zero(x, words_)) {
        emit_.assign(r_.begin(), r_.end());
        std::sort(emit_.begin(), emit_.end());
        visit_(emit_);
      }
      return;
    }

    // Pivot: the vertex of P ∪ X covering the most of P.
    uint32_t pivot = 0;
    std::size_t best_cover = 0;
    bool have_pivot = false;
    const auto consider = [&](uint32_t u) {
      const std::size_t cover = popcount_and(p, g_.row(u), words_);
      if (!have_pivot || cover > best_cover) {
        have_pivot = true;
        best_cover = cover;
        pivot = u;
      }
    };
    for_each_bit(p, words_, consider);
    for_each_bit(x, words_, consider);

    // candidates_ is a stack shared across levels: this call owns the range
    // [base, base+count) and truncates back to base on exit.
    const std::size_t base = candidates_.size();
    const uint64_t* pivot_row = g_.row(pivot);
    for (std::size_t i = 0; i < words_; ++i) {
      uint64_t word = p[i] & ~pivot_row[i];
      while (word) {
        const int bit = std::countr_zero(word);
        candidates_.push_back(static_cast<uint32_t>(i * 64 + bit));
        word &= word - 1;
      }
    }
    const std::size_t count = candidates_.size() - base;

    uint64_t* child_p = scratch_.data() + (depth + 1) * 2 * words_;
    uint64_t* child_x = child_p + words_;
    for (std::size_t c = 0; c < count; ++c) {
      const uint32_t v = candidates_[base + c];
      const uint64_t* nb = g_.row(v);
      for (std::size_t i = 0; i < words_; ++i) {
        child_p[i] = p[i] & nb[i];
        child_x[i] = x[i] & nb[i];
      }
      r_.push_back(v);
      expand(child_p, child_x, depth + 1);
      r_.pop_back();
      p[v / 64] &= ~(uint64_t{1} << (v % 64));
      x[v / 64] |= uint64_t{1} << (v % 64);
    }
    candidates_.resize(base);
  }

  const OrthoGraph& g_;
  std::size_t words_;
  const std::function<void(std::span<const uint32_t>)>& visit_;
  std::vector<uint64_t> scratch_;
  std::vector<uint32_t> r_;
  std::vector<uint32_t> emit_;
  std::vector<uint32_t> candidates_;
};

}  // namespace

void for_each_maximal_clique(
    const OrthoGraph& g,
    const std::function<void(std::span<const uint32_t>)>& visit) {
  CliqueSearch(g, visit).run();
}

CliqueList maximal_cliques(const OrthoGraph& g) {
  CliqueList out;
  for_each_maximal_clique(g, [&](std::span<const uint32_t> c) { out.add(c); });
  out.canonicalize();
  return out;
}

std::size_t count_maximal_cliques(const OrthoGraph& g) {
  std::size_t n = 0;
  for_each_maximal_clique(g, [&](std::span<const uint32_t>) { ++n; });
  return n;
}

CliqueStatus contains_clique(const OrthoGraph& g,
                             const std::vector<Event>& events) {
  std::vector<std::size_t> idx;
  idx.reserve(events.size());
  for (const auto& e : events) {
    const auto found = g.find_vertex(e);
    if (!found) throw std::invalid_argument("unknown vertex: " + e.label());
    idx.push_back(*found);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.empty()) return CliqueStatus::Absent;

  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (!g.adjacent(idx[i], idx[j])) return CliqueStatus::Absent;
    }
  }

  // Common neighbourhood of all members; any survivor extends the clique.
  const std::size_t words = g.words_per_row();
  std::vector<uint64_t> common(g.row(idx[0]), g.row(idx[0]) + words);
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const uint64_t* nb = g.row(idx[k]);
    for (std::size_t i = 0; i < words; ++i) common[i] &= nb[i];
  }
  return all_zero(common.data(), words) ? CliqueStatus::MaximalClique
                                        : CliqueStatus::Clique;
}

std::string to_dot(const OrthoGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out << "  \"" << g.vertex(i).label() << "\";\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g.adjacent(i, j)) {
        out << "  \"" << g.vertex(i).label() << "\" -- \""
            << g.vertex(j).label() << "\";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace lobound
