#include <doctest.h>

#include <lobound/event.hpp>
#include <lobound/graph.hpp>
#include <lobound/lo.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

using namespace lobound;

namespace {

std::vector<std::vector<uint32_t>> collect(const OrthoGraph& g) {
  CliqueList list = maximal_cliques(g);
  std::vector<std::vector<uint32_t>> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto span = list[i];
    out.emplace_back(span.begin(), span.end());
  }
  return out;
}

}  // namespace

TEST_CASE("event labels round-trip") {
  for (const auto& e : all_single_copy_events()) {
    CHECK(parse_event(e.label()) == e);
    CHECK(e.label().size() == 5);
  }
  Event two = concat(parse_event("01|10"), parse_event("11|01"));
  CHECK(two.label() == "0111|1001");
  CHECK(parse_event("0111|1001") == two);
  CHECK_THROWS(parse_event("01|1"));   // settings too short
  CHECK_THROWS(parse_event("0x|10"));  // not a bit
  CHECK_THROWS(parse_event("0110"));   // missing separator
}

TEST_CASE("orthogonality definition") {
  CHECK(orthogonal(parse_event("00|00"), parse_event("01|00")));
  CHECK(!orthogonal(parse_event("00|00"), parse_event("11|11")));
  CHECK(!orthogonal(parse_event("00|00"), parse_event("00|00")));
  // two-copy pair from a listed clique
  CHECK(orthogonal(parse_event("0000|1010"), parse_event("0101|1010")));
  CHECK_THROWS_AS(orthogonal(parse_event("00|00"), parse_event("0000|0000")),
                  std::invalid_argument);
}

TEST_CASE("orthogonal is symmetric and irreflexive") {
  const auto singles = all_single_copy_events();
  for (const auto& u : singles)
    for (const auto& v : singles) {
      CHECK(orthogonal(u, v) == orthogonal(v, u));
      if (u == v) CHECK(!orthogonal(u, v));
    }
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, singles.size() - 1);
  for (int i = 0; i < 10000; ++i) {
    Event u = concat(singles[pick(rng)], singles[pick(rng)]);
    Event v = concat(singles[pick(rng)], singles[pick(rng)]);
    CHECK(orthogonal(u, v) == orthogonal(v, u));
    if (u == v) CHECK(!orthogonal(u, v));
  }
}

TEST_CASE("single-copy graphs have the right shape") {
  const auto t0 = std::chrono::steady_clock::now();
  OrthoGraph hardy = build_single_copy_graph(hardy_zero_events());
  OrthoGraph cabello = build_single_copy_graph(cabello_zero_events());
  OrthoGraph full = build_single_copy_graph({});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);

  CHECK(hardy.size() == 13);
  CHECK(hardy.edge_count() == 37);
  CHECK(cabello.size() == 14);
  CHECK(cabello.edge_count() == 42);
  CHECK(full.size() == 16);

  // vertices are canonically ordered and duplicate-free
  for (const OrthoGraph* g : {&hardy, &cabello, &full}) {
    for (std::size_t i = 1; i < g->size(); ++i)
      CHECK(canonical_less(g->vertex(i - 1), g->vertex(i)));
    for (std::size_t i = 0; i < g->size(); ++i) {
      CHECK(!g->adjacent(i, i));
      for (std::size_t j = 0; j < g->size(); ++j)
        CHECK(g->adjacent(i, j) == g->adjacent(j, i));
    }
  }

  // each fixed context is a 4-clique in the full graph
  for (const char* ctx : {"00", "01", "10", "11"}) {
    std::vector<Event> events;
    for (const char* ab : {"00", "01", "10", "11"})
      events.push_back(parse_event(std::string(ab) + "|" + ctx));
    CHECK(contains_clique(full, events) != CliqueStatus::Absent);
  }

  // zero events are gone
  CHECK(!hardy.find_vertex(parse_event("01|01")).has_value());
  CHECK(!hardy.find_vertex(parse_event("00|11")).has_value());
  CHECK(!hardy.find_vertex(parse_event("10|00")).has_value());
  CHECK(cabello.find_vertex(parse_event("01|01")).has_value());
}

TEST_CASE("co-normal product sizes and adjacency rule") {
  OrthoGraph hardy = build_single_copy_graph(hardy_zero_events());
  OrthoGraph cabello = build_single_copy_graph(cabello_zero_events());
  const auto t0 = std::chrono::steady_clock::now();
  OrthoGraph hardy2 = conormal_product(hardy, hardy);
  OrthoGraph cabello2 = conormal_product(cabello, cabello);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);

  CHECK(hardy2.size() == 169);
  CHECK(hardy2.edge_count() == 9768);
  CHECK(cabello2.size() == 196);
  CHECK(cabello2.edge_count() == 12936);

  // adjacency must agree with orthogonal() on the concatenated events,
  // exhaustively
  for (std::size_t i = 0; i < hardy2.size(); ++i)
    for (std::size_t j = i + 1; j < hardy2.size(); ++j)
      CHECK(hardy2.adjacent(i, j) ==
            orthogonal(hardy2.vertex(i), hardy2.vertex(j)));

  // canonical order in the product too
  for (std::size_t i = 1; i < hardy2.size(); ++i)
    CHECK(canonical_less(hardy2.vertex(i - 1), hardy2.vertex(i)));
}

TEST_CASE("product of edgeless graphs is edgeless") {
  // events pairwise non-orthogonal: distinct settings everywhere
  std::vector<Event> loners = {parse_event("00|00"), parse_event("11|11")};
  OrthoGraph g = OrthoGraph::from_events(loners);
  REQUIRE(g.edge_count() == 0);
  OrthoGraph gg = conormal_product(g, g);
  CHECK(gg.size() == 4);
  CHECK(gg.edge_count() == 0);
}

TEST_CASE("duplicate events are rejected") {
  CHECK_THROWS(OrthoGraph::from_events(
      {parse_event("00|00"), parse_event("00|00")}));
}

TEST_CASE("complete graph has one maximal clique") {
  // one context's four events are pairwise orthogonal: K4
  std::vector<Event> ctx = {parse_event("00|00"), parse_event("01|00"),
                            parse_event("10|00"), parse_event("11|00")};
  OrthoGraph k4 = OrthoGraph::from_events(ctx);
  REQUIRE(k4.edge_count() == 6);
  const auto cliques = collect(k4);
  REQUIRE(cliques.size() == 1);
  CHECK(cliques[0] == std::vector<uint32_t>{0, 1, 2, 3});
}

TEST_CASE("clique enumeration matches the exhaustive oracle") {
  OrthoGraph hardy = build_single_copy_graph(hardy_zero_events());
  OrthoGraph cabello = build_single_copy_graph(cabello_zero_events());
  OrthoGraph full = build_single_copy_graph({});

  for (const OrthoGraph* g : {&hardy, &cabello, &full}) {
    const auto got = collect(*g);
    CHECK(got == oracles::cliques_exhaustive(*g));
    CHECK(got == oracles::cliques_bk_naive(*g));
    for (const auto& c : got) {
      std::vector<Event> events;
      for (uint32_t v : c) events.push_back(g->vertex(v));
      CHECK(contains_clique(*g, events) == CliqueStatus::MaximalClique);
    }
  }
  CHECK(collect(hardy).size() == 12);
  CHECK(collect(cabello).size() == 12);
}

TEST_CASE("clique enumeration matches oracles on random event graphs") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 16);
    OrthoGraph g = oracles::random_event_graph(size(rng), rng);
    const auto got = collect(g);
    CHECK(got == oracles::cliques_exhaustive(g));
  }
  // the naive Bron-Kerbosch scales a little further
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<std::size_t> size(17, 28);
    OrthoGraph g = oracles::random_event_graph(size(rng), rng);
    CHECK(collect(g) == oracles::cliques_bk_naive(g));
  }
}

TEST_CASE("product clique counts are stable") {
  OrthoGraph hardy2 = conormal_product(build_single_copy_graph(hardy_zero_events()),
                                       build_single_copy_graph(hardy_zero_events()));
  OrthoGraph cabello2 =
      conormal_product(build_single_copy_graph(cabello_zero_events()),
                       build_single_copy_graph(cabello_zero_events()));
  CHECK(count_maximal_cliques(hardy2) == 2210946);
  CHECK(count_maximal_cliques(cabello2) == 3297568);
}

TEST_CASE("streaming and collected enumeration agree") {
  OrthoGraph g = build_single_copy_graph(hardy_zero_events());
  std::size_t streamed = 0;
  std::set<std::vector<uint32_t>> seen;
  for_each_maximal_clique(g, [&](std::span<const uint32_t> c) {
    ++streamed;
    std::vector<uint32_t> v(c.begin(), c.end());
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(seen.insert(std::move(v)).second);  // no duplicates
  });
  CHECK(streamed == 12);
  CHECK(streamed == count_maximal_cliques(g));
}

TEST_CASE("contains_clique classifies correctly") {
  OrthoGraph g = build_single_copy_graph(hardy_zero_events());
  // a single vertex of an edge is a clique but not maximal
  std::vector<Event> single = {parse_event("00|00")};
  CHECK(contains_clique(g, single) == CliqueStatus::Clique);
  // unknown vertex
  CHECK_THROWS(contains_clique(g, {parse_event("01|01")}));
  // non-adjacent pair
  std::vector<Event> far = {parse_event("00|00"), parse_event("11|11")};
  CHECK(contains_clique(g, far) == CliqueStatus::Absent);
}

TEST_CASE("dot output lists every vertex and edge") {
  OrthoGraph g = build_single_copy_graph(hardy_zero_events());
  const std::string dot = to_dot(g, "hardy");
  CHECK(dot.find("graph hardy {") == 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(dot.find("\"" + g.vertex(i).label() + "\"") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = dot.find("--"); pos != std::string::npos;
       pos = dot.find("--", pos + 2))
    ++edges;
  CHECK(edges == g.edge_count());
}
