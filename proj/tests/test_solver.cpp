#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "symbreak/record.hpp"
#include "symbreak/solver.hpp"

using namespace symbreak;

namespace {

std::vector<Permutation> non_identity_elements(const Graph& g) {
  std::vector<Permutation> out;
  for (const Permutation& p : automorphism_group(g).elements)
    if (!p.is_identity()) out.push_back(p);
  return out;
}

IndexValue value_of(const IndexResult& r) { return IndexValue::from(r); }

}  // namespace

TEST_CASE("find_breaking_colouring basics") {
  const Graph c6 = oracles::cycle(6);

  SUBCASE("empty target list is vacuously broken by the monochromatic colouring") {
    const auto c = find_breaking_colouring(c6, 2, {});
    REQUIRE(c.has_value());
    for (int col : c->colour) CHECK(col == 1);
  }

  SUBCASE("the K2 swap survives every colouring") {
    const Graph k2 = oracles::complete(2);
    CHECK_FALSE(find_breaking_colouring(k2, 2, {Permutation({1, 0})}).has_value());
    CHECK_FALSE(find_breaking_colouring(k2, 4, {Permutation({1, 0})}).has_value());
  }

  SUBCASE("C6 has a 2-colouring breaking its small automorphisms") {
    const auto smalls = small_automorphisms(c6, automorphism_group(c6));
    REQUIRE_FALSE(smalls.empty());
    const auto witness = find_breaking_colouring(c6, 2, smalls);
    REQUIRE(witness.has_value());
    CHECK(breaks_all(c6, *witness, smalls));
    // the independent enumeration agrees one exists
    CHECK(oracles::naive_breaking(c6, 2, smalls).has_value());
  }
}

TEST_CASE("exhaustive phase returns the least counter witness") {
  const Graph c4 = oracles::cycle(4);
  const auto smalls = small_automorphisms(c4, automorphism_group(c4));
  SearchOptions no_heuristic;
  no_heuristic.budget = 0;
  const auto witness = find_breaking_colouring(c4, 2, smalls, no_heuristic);
  const auto expected = oracles::naive_breaking(c4, 2, smalls);
  REQUIRE(witness.has_value());
  REQUIRE(expected.has_value());
  CHECK(witness->colour == *expected);
}

TEST_CASE("distinguishing index of the worked examples") {
  const IndexResult p3 = distinguishing_index(oracles::path(3));
  CHECK(value_of(p3) == IndexValue{IndexKind::Finite, 2});
  REQUIRE(p3.witness.has_value());
  CHECK(breaks_all(oracles::path(3), *p3.witness, non_identity_elements(oracles::path(3))));

  CHECK(value_of(distinguishing_index(oracles::complete(2))) == IndexValue{IndexKind::Infinite, 0});

  // the 6-vertex graph from the edge list 0-1,1-2,2-3,3-4,4-5,1-4,0-2: its
  // group is trivial (checked against the oracle), so one colour suffices
  const Graph asym(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 4}, {0, 2}});
  REQUIRE(oracles::naive_automorphisms(asym).size() == 1);
  const IndexResult r = distinguishing_index(asym);
  CHECK(value_of(r) == IndexValue{IndexKind::Finite, 1});
  CHECK(r.method == SearchMethod::NoSymmetryShortcut);
}

TEST_CASE("small distinguishing index of the worked examples") {
  CHECK(value_of(small_distinguishing_index(oracles::star(5))) == IndexValue{IndexKind::Finite, 1});
  CHECK(value_of(small_distinguishing_index(oracles::complete(2))) == IndexValue{IndexKind::Infinite, 0});
  CHECK(value_of(small_distinguishing_index(oracles::cycle(6))) == IndexValue{IndexKind::Finite, 2});
}

TEST_CASE("both indices equal the naive enumeration on every graph of order <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const Graph g = oracles::from_mask(n, mask);
      const AutGroup grp = automorphism_group(g);
      const auto naive = oracles::naive_automorphisms(g);

      std::vector<Permutation> nontrivial;
      for (const Permutation& p : naive)
        if (!p.is_identity()) nontrivial.push_back(p);
      std::vector<Permutation> smalls;
      for (const Permutation& p : nontrivial)
        if (is_small(g, p)) smalls.push_back(p);

      CHECK(value_of(distinguishing_index(g, grp)) == oracles::naive_index(g, nontrivial, kDefaultMaxColours));
      CHECK(value_of(small_distinguishing_index(g, grp)) == oracles::naive_index(g, smalls, kDefaultMaxColours));
    }
  }
}

TEST_CASE("indices agree with the naive enumeration on sampled graphs with m <= 10") {
  std::mt19937_64 rng(2025);
  int done = 0;
  while (done < 40) {
    const int n = 6 + static_cast<int>(rng() % 2);
    const Graph g = oracles::random_graph(rng, n, 0.3);
    if (g.edge_count() > 10) continue;
    ++done;
    const AutGroup grp = automorphism_group(g);
    std::vector<Permutation> nontrivial = non_identity_elements(g);
    std::vector<Permutation> smalls = small_automorphisms(g, grp);
    CHECK(value_of(distinguishing_index(g, grp)) == oracles::naive_index(g, nontrivial, kDefaultMaxColours));
    CHECK(value_of(small_distinguishing_index(g, grp)) == oracles::naive_index(g, smalls, kDefaultMaxColours));
  }
}

TEST_CASE("monotonicity and the d_small = 1 characterisation hold on all graphs of order <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const Graph g = oracles::from_mask(n, mask);
      const AutGroup grp = automorphism_group(g);
      const IndexValue dp = value_of(distinguishing_index(g, grp));
      const IndexValue ds = value_of(small_distinguishing_index(g, grp));
      CHECK_FALSE(ds.provably_greater(dp));
      const bool no_smalls = small_automorphisms(g, grp).empty();
      CHECK(((ds.kind == IndexKind::Finite && ds.value == 1)) == no_smalls);
    }
  }
}

TEST_CASE("small distinguishing index is isomorphism invariant") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const Graph g = oracles::random_graph(rng, n, 0.45);
    std::vector<int> image(static_cast<size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    const Graph h = oracles::relabel(g, Permutation(image));
    CHECK(value_of(small_distinguishing_index(g)) == value_of(small_distinguishing_index(h)));
  }
}

TEST_CASE("find_distinguishing_or_almost") {
  SUBCASE("a trivial group means the very first colouring is distinguishing") {
    const Graph asym(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 4}, {0, 2}});
    const auto r = find_distinguishing_or_almost(asym, 2);
    REQUIRE(r.status == DistOrAlmostResult::Status::Distinguishing);
    for (int c : r.distinguishing->colour) CHECK(c == 1);
  }

  SUBCASE("K2: both colourings are almost distinguishing, two literal classes, one renaming class") {
    const auto r = find_distinguishing_or_almost(oracles::complete(2), 2);
    REQUIRE(r.status == DistOrAlmostResult::Status::Almost);
    REQUIRE(r.almost.size() == 2);
    CHECK(r.almost[0].colour == std::vector<int>{1});
    CHECK(r.almost[1].colour == std::vector<int>{2});
    CHECK(r.witness_pairs[0] == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(r.literal_classes.size() == 2);
    CHECK(r.renaming_classes.size() == 1);
  }

  SUBCASE("C4 at k=2 agrees with a direct scan of all 16 colourings") {
    const Graph c4 = oracles::cycle(4);
    const auto grp = automorphism_group(c4);
    const auto r = find_distinguishing_or_almost(c4, 2);

    // independent scan
    int distinguishing = 0, almost = 0;
    const auto edges = c4.edges();
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      std::vector<int> colours(4);
      for (int i = 0; i < 4; ++i) colours[static_cast<size_t>(i)] = 1 + ((mask >> i) & 1);
      int preservers = 0;
      bool all_swap_common_pair = true;
      std::vector<Permutation> pres;
      for (const Permutation& p : grp.elements) {
        if (p.is_identity()) continue;
        if (oracles::naive_preserves(c4, edges, colours, p)) pres.push_back(p);
      }
      preservers = static_cast<int>(pres.size());
      all_swap_common_pair = !common_swapped_pairs(pres).empty();
      if (preservers == 0)
        ++distinguishing;
      else if (all_swap_common_pair)
        ++almost;
    }
    CHECK(distinguishing == 0);  // no distinguishing 2-colouring of C4 exists
    REQUIRE(r.status == DistOrAlmostResult::Status::Almost);
    CHECK(static_cast<int>(r.almost.size()) == almost);
  }

  SUBCASE("edge limit is enforced") {
    CHECK_THROWS_AS(find_distinguishing_or_almost(oracles::complete(8), 2), SizeLimitError);
  }
}

TEST_CASE("star families exceed max colours for the full index but not the small one") {
  // K_{1,7}: every pair of leaf edges is swappable, so D' = 7 > 4, while no
  // automorphism is small.
  const Graph star7 = oracles::star(7);
  const IndexResult dp = distinguishing_index(star7);
  CHECK(dp.kind == IndexKind::ExceedsMax);
  CHECK(dp.value == kDefaultMaxColours);
  CHECK(value_of(small_distinguishing_index(star7)) == IndexValue{IndexKind::Finite, 1});
}
