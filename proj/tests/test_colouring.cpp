#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "symbreak/colouring.hpp"

using namespace symbreak;

namespace {

EdgeColouring colouring_of(const Graph& g, std::vector<int> colours, int k = 2) {
  EdgeColouring c;
  c.colours = k;
  c.edges = g.edges();
  c.colour = std::move(colours);
  REQUIRE(c.colour.size() == c.edges.size());
  return c;
}

}  // namespace

TEST_CASE("preserves") {
  const Graph p3 = oracles::path(3);
  const Permutation reversal({2, 1, 0});

  CHECK(preserves(p3, EdgeColouring::uniform(p3), reversal));             // monochromatic
  CHECK_FALSE(preserves(p3, colouring_of(p3, {1, 2}), reversal));         // swaps the two edges
  CHECK(preserves(p3, colouring_of(p3, {1, 2}), Permutation::identity(3)));
}

TEST_CASE("breaks_all") {
  const Graph k2 = oracles::complete(2);
  const Graph p3 = oracles::path(3);
  CHECK(breaks_all(k2, EdgeColouring::uniform(k2), {}));  // vacuous
  CHECK_FALSE(breaks_all(k2, EdgeColouring::uniform(k2), {Permutation({1, 0})}));
  CHECK(breaks_all(p3, colouring_of(p3, {1, 2}), {Permutation({2, 1, 0})}));
}

TEST_CASE("almost distinguishing witness") {
  const Graph p3 = oracles::path(3);
  const auto distinguishing =
      find_almost_distinguishing_witness(p3, colouring_of(p3, {1, 2}), automorphism_group(p3));
  CHECK(distinguishing.status == AlmostWitness::Status::Distinguishing);

  const Graph k2 = oracles::complete(2);
  const auto witness = find_almost_distinguishing_witness(k2, EdgeColouring::uniform(k2), automorphism_group(k2));
  REQUIRE(witness.status == AlmostWitness::Status::Witness);
  CHECK(*witness.pair == std::pair<int, int>{0, 1});

  const Graph c4 = oracles::cycle(4);
  const auto none = find_almost_distinguishing_witness(c4, EdgeColouring::uniform(c4), automorphism_group(c4));
  CHECK(none.status == AlmostWitness::Status::NotAlmostDistinguishing);
}

TEST_CASE("the preserving set is a subgroup for every 2-colouring of C4") {
  const Graph c4 = oracles::cycle(4);
  const auto grp = automorphism_group(c4);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    std::vector<int> colours(4);
    for (int i = 0; i < 4; ++i) colours[static_cast<size_t>(i)] = 1 + ((mask >> i) & 1);
    const EdgeColouring c = colouring_of(c4, colours);
    std::set<Permutation> preserving;
    for (const Permutation& p : grp.elements)
      if (preserves(c4, c, p)) preserving.insert(p);
    CHECK(preserving.count(Permutation::identity(4)) == 1);
    for (const Permutation& a : preserving) {
      CHECK(preserving.count(a.inverse()) == 1);
      for (const Permutation& b : preserving) CHECK(preserving.count(a.then(b)) == 1);
    }
  }
}

TEST_CASE("swapping the two colour classes preserves the predicate") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const Graph g = oracles::random_graph(rng, n, 0.5);
    std::vector<int> colours(g.edges().size());
    for (auto& c : colours) c = 1 + static_cast<int>(rng() % 2);
    const EdgeColouring c = colouring_of(g, colours);
    const EdgeColouring swapped = rename_colours(c, {2, 1});
    for (const Permutation& p : automorphism_group(g).elements)
      CHECK(preserves(g, c, p) == preserves(g, swapped, p));
  }
}

TEST_CASE("relabeling equivariance") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const Graph g = oracles::random_graph(rng, n, 0.5);

    std::vector<int> image(static_cast<size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    const Permutation q(image);

    const Graph h = oracles::relabel(g, q);
    std::vector<int> colours(g.edges().size());
    for (auto& c : colours) c = 1 + static_cast<int>(rng() % 2);
    const EdgeColouring cg = colouring_of(g, colours);

    // push the colouring through q
    EdgeColouring ch;
    ch.colours = 2;
    ch.edges = h.edges();
    ch.colour.assign(ch.edges.size(), 0);
    for (size_t i = 0; i < cg.edges.size(); ++i) {
      const Edge mapped(q(cg.edges[i].u), q(cg.edges[i].v));
      for (size_t j = 0; j < ch.edges.size(); ++j)
        if (ch.edges[j] == mapped) ch.colour[j] = cg.colour[i];
    }

    for (const Permutation& p : automorphism_group(g).elements)
      CHECK(preserves(g, cg, p) == preserves(h, ch, q.inverse().then(p).then(q)));
  }
}

TEST_CASE("breaking all non-trivial automorphisms implies breaking the small subset") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const Graph g = oracles::random_graph(rng, n, 0.5);
    const auto grp = automorphism_group(g);
    std::vector<Permutation> nontrivial;
    for (const Permutation& p : grp.elements)
      if (!p.is_identity()) nontrivial.push_back(p);
    const auto smalls = small_automorphisms(g, grp);
    std::vector<int> colours(g.edges().size());
    for (auto& c : colours) c = 1 + static_cast<int>(rng() % 2);
    const EdgeColouring c = colouring_of(g, colours);
    if (breaks_all(g, c, nontrivial)) CHECK(breaks_all(g, c, smalls));
  }
}

TEST_CASE("coloured isomorphism matches colours literally") {
  const Graph k2 = oracles::complete(2);
  CHECK(coloured_isomorphic(k2, colouring_of(k2, {1}), k2, colouring_of(k2, {1})));
  CHECK_FALSE(coloured_isomorphic(k2, colouring_of(k2, {1}), k2, colouring_of(k2, {2})));

  const Graph p3 = oracles::path(3);
  CHECK(coloured_isomorphic(p3, colouring_of(p3, {1, 2}), p3, colouring_of(p3, {2, 1})));
}

TEST_CASE("colouring text round-trip") {
  const Graph c4 = oracles::cycle(4);
  const EdgeColouring c = colouring_of(c4, {1, 2, 2, 1});
  const EdgeColouring back = parse_colouring_text(to_colouring_text(c), c4);
  CHECK(back.colour == c.colour);
  CHECK_THROWS_AS(parse_colouring_text("0 1 1\n", c4), ParseError);          // incomplete
  CHECK_THROWS_AS(parse_colouring_text("0 2 1\n0 1 1\n", c4), ParseError);   // non-edge
}
