#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include <syndetic/syndetic.hpp>

#include "oracles.hpp"

using namespace syndetic;

namespace {

  FiniteSet random_subset(std::mt19937_64& rng, std::size_t n, std::size_t size) {
    std::vector<Elem> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return FiniteSet(all);
  }

  // KA_i is m-thick by the naive oracle and |K| <= m^(n-1).
  void check_cell(GSpace const& X, std::vector<FiniteSet> const& cells, std::size_t m) {
    auto r = prethick_cell(X, cells, m);
    REQUIRE(r.decision == Decision::yes);
    REQUIRE(r.cell < cells.size());
    REQUIRE(r.K.size() <= static_cast<std::size_t>(std::pow(m, cells.size() - 1)));
    auto KA = set_product(X, r.K, cells[r.cell]);
    REQUIRE(oracle::m_thick(X, oracle::mask(KA), static_cast<int>(m)));
    REQUIRE(replay(X, KA, r.verdict));
    REQUIRE(r.trace.size() == r.cell);
  }

}  // namespace

TEST_CASE("greedy cover examples", "[covering]") {
  auto G = cyclic(6);
  auto c = greedy_cover(G, G.elements());
  CHECK(c.B == FiniteSet{0});
  CHECK(c.bound_ceil >= 1);

  c = greedy_cover(G, FiniteSet{0, 1});
  CHECK(c.B == FiniteSet{0, 2, 4});
  CHECK(c.bound == Catch::Approx(3 * (std::log(2.0) + 1)));
  CHECK(c.bound_ceil == 6);
  CHECK(replay(G, c));
  // greedy matches the exhaustive optimum here
  auto X = GSpace::regular(G);
  CHECK(is_m_large(X, FiniteSet{0, 1}, 2).decision == Decision::no);

  CHECK_THROWS_AS(greedy_cover(G, FiniteSet{}), std::invalid_argument);
  CHECK_THROWS_AS(greedy_cover(G, FiniteSet{7}), std::invalid_argument);
}

TEST_CASE("greedy cover bound on random sets", "[covering][property]") {
  std::mt19937_64 rng(100);
  auto            G = cyclic(100);
  for (int t = 0; t < 100; ++t) {
    auto c = greedy_cover(G, random_subset(rng, 100, 25));
    REQUIRE(replay(G, c));
    REQUIRE(c.B.size() < 17);
    REQUIRE(c.B.size() <= c.bound_ceil);
  }
  for (auto const& H : {dihedral(7), quaternion(), product(cyclic(3), dihedral(4))}) {
    for (int t = 0; t < 20; ++t) {
      std::size_t k = 1 + rng() % H.order();
      auto        A = random_subset(rng, H.order(), k);
      auto        c = greedy_cover(H, A);
      REQUIRE(set_product(H, c.B, A) == H.elements());
      REQUIRE(c.B.size() <= c.bound_ceil);
      REQUIRE(greedy_cover(H, A).B == c.B);
    }
  }
}

TEST_CASE("tampered cover certificates fail replay", "[covering]") {
  auto G = cyclic(12);
  auto c = greedy_cover(G, FiniteSet{0, 1, 5});
  REQUIRE(replay(G, c));
  auto bad = c;
  bad.B    = set_difference(c.B, FiniteSet{c.B.front()});
  CHECK_FALSE(replay(G, bad));
}

TEST_CASE("E-separated net examples", "[covering]") {
  auto G = cyclic(12);
  auto n = max_E_separated(G, FiniteSet{0}, G.elements());
  CHECK(n.B == G.elements());
  CHECK(n.sup_nu == 1);

  n = max_E_separated(G, FiniteSet{0, 1, 2}, G.elements());
  CHECK(n.B == FiniteSet{0, 3, 6, 9});
  CHECK(n.nu == FiniteMeasure::uniform(FiniteSet{0, 10, 11}));
  CHECK(n.sup_nu == Rational(1, 3));
  CHECK(check_net(G, n).ok());

  WindowedGroup Z(1, 200);
  auto          w = max_E_separated(Z, FiniteSet::interval(0, 9), FiniteSet::interval(0, 99));
  std::vector<Elem> tens;
  for (Elem x = 0; x < 100; x += 10) {
    tens.push_back(x);
  }
  CHECK(w.B == FiniteSet(tens));
  CHECK(w.sup_nu == Rational(1, 10));
  CHECK(window_max_count(w.B, 10, 190) == 1);

  CHECK_THROWS_AS(max_E_separated(Z, FiniteSet::interval(0, 9), FiniteSet{195}),
                  WindowOverflow);
  CHECK_THROWS_AS(max_E_separated(G, FiniteSet{}, G.elements()), std::invalid_argument);
}

TEST_CASE("net certificates replay clause by clause", "[covering][property]") {
  std::mt19937_64 rng(21);
  for (auto const& G : {cyclic(30), dihedral(6), quaternion(), product(cyclic(4), cyclic(5))}) {
    for (int t = 0; t < 25; ++t) {
      auto E = random_subset(rng, G.order(), 1 + rng() % 4);
      auto S = random_subset(rng, G.order(), 1 + rng() % G.order());
      auto c = max_E_separated(G, E, S);
      auto k = check_net(G, c);
      REQUIRE(k.ok());
      REQUIRE(max_E_separated(G, E, S).B == c.B);

      if (c.B.size() >= 2) {
        auto fewer = c;
        fewer.B    = set_difference(c.B, FiniteSet{c.B.back()});
        fewer.sup_nu = detail::net_sup_nu(G, E, fewer.B);
        CHECK_FALSE(check_net(G, fewer).maximal);
      }
      auto rest = set_difference(S, c.B);
      if (!rest.empty() && E.size() >= 2) {
        auto more = c;
        more.B    = set_union(c.B, FiniteSet{rest.front()});
        CHECK_FALSE(check_net(G, more).disjoint);
      }
    }
  }

  WindowedGroup Z2(2, 20);
  for (int t = 0; t < 10; ++t) {
    std::vector<Elem> e{0};
    for (int i = 0; i < 2; ++i) {
      e.push_back(Z2.encode({static_cast<std::int64_t>(rng() % 5) - 2,
                             static_cast<std::int64_t>(rng() % 5) - 2}));
    }
    auto c = max_E_separated(Z2, FiniteSet(e), Z2.ball(15));
    REQUIRE(check_net(Z2, c).ok());
  }
}

TEST_CASE("prethick cell examples", "[covering]") {
  auto Z4 = GSpace::regular(cyclic(4));
  auto one = prethick_cell(Z4, {Z4.points()}, 3);
  CHECK(one.decision == Decision::yes);
  CHECK(one.cell == 0);
  CHECK(one.K == FiniteSet{0});

  // The recursion answers cell 1 with K = {0, 3}; brute force also finds
  // K = {0, 1} for cell 0. Both satisfy |K| <= 2 and KA = Z_4.
  auto r = prethick_cell(Z4, {FiniteSet{0, 2}, FiniteSet{1, 3}}, 2);
  REQUIRE(r.decision == Decision::yes);
  CHECK(r.cell == 1);
  CHECK(r.K == FiniteSet{0, 3});
  CHECK(r.trace == std::vector<FiniteSet>{FiniteSet{0, 1}});
  CHECK(set_product(Z4, r.K, FiniteSet{1, 3}) == Z4.points());
  auto brute = is_k_m_prethick(Z4, FiniteSet{0, 2}, 2, 2);
  REQUIRE(brute.decision == Decision::yes);
  CHECK(*brute.K == FiniteSet{0, 1});

  CHECK_THROWS_AS(prethick_cell(Z4, {FiniteSet{0, 2}, FiniteSet{1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(prethick_cell(Z4, {}, 2), std::invalid_argument);

  auto big = GSpace::regular(cyclic(400));
  CHECK(prethick_cell(big, {big.points()}, 4).decision == Decision::undecided);
}

TEST_CASE("prethick cells of every small partition", "[covering][property]") {
  std::vector<GSpace> spaces;
  for (std::size_t n = 1; n <= 6; ++n) {
    spaces.push_back(GSpace::regular(cyclic(n)));
  }
  spaces.push_back(GSpace::regular(dihedral(3)));
  for (auto const& X : spaces) {
    std::size_t const n = X.size();
    for (std::size_t cells = 2; cells <= 3; ++cells) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) {
        total *= cells;
      }
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::vector<Elem>> parts(cells);
        std::size_t                    c = code;
        for (Elem x = 0; x < static_cast<Elem>(n); ++x) {
          parts[c % cells].push_back(x);
          c /= cells;
        }
        std::vector<FiniteSet> cover;
        for (auto& p : parts) {
          cover.emplace_back(p);
        }
        check_cell(X, cover, 2);
      }
    }
  }
}

TEST_CASE("prethick cells of random overlapping covers", "[covering][property]") {
  std::mt19937_64 rng(8);
  for (auto const& G : {cyclic(8), cyclic(10), dihedral(4), dihedral(5), quaternion()}) {
    auto X = GSpace::regular(G);
    for (int t = 0; t < 50; ++t) {
      std::size_t            cells = 1 + rng() % 3;
      std::vector<FiniteSet> cover(cells);
      for (Elem x : X.points()) {
        // every point lands in one cell, and sometimes in a second
        for (int copies = rng() % 4 == 0 ? 2 : 1; copies > 0; --copies) {
          auto& c = cover[rng() % cells];
          c       = set_union(c, FiniteSet{x});
        }
      }
      check_cell(X, cover, 2);
      auto again = prethick_cell(X, cover, 2);
      CHECK(again.K == prethick_cell(X, cover, 2).K);
    }
  }
}
