#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <syndetic/syndetic.hpp>

#include "oracles.hpp"

using namespace syndetic;

namespace {

  // Every finite space used by the exhaustive properties, |X| <= 10.
  std::vector<GSpace> small_spaces(std::size_t max_points) {
    std::vector<GSpace> out;
    for (std::size_t n = 1; n <= max_points; ++n) {
      out.push_back(GSpace::regular(cyclic(n)));
    }
    for (std::size_t n = 3; 2 * n <= max_points; ++n) {
      out.push_back(GSpace::regular(dihedral(n)));
    }
    if (max_points >= 8) {
      out.push_back(GSpace::regular(quaternion()));
      out.push_back(GSpace::regular(product(cyclic(2), cyclic(4))));
    }
    out.push_back(GSpace::regular(product(cyclic(2), cyclic(2))));
    // Z_2 swapping two points and fixing a third
    out.emplace_back(std::make_shared<FiniteGroup const>(cyclic(2)), 3,
                     std::vector<std::vector<Elem>>{{0, 1, 2}, {1, 0, 2}});
    // Z_6 acting on Z_3 and on a pair
    std::vector<std::vector<Elem>> act(6, std::vector<Elem>(5));
    for (Elem g = 0; g < 6; ++g) {
      for (Elem x = 0; x < 3; ++x) {
        act[g][x] = (x + g) % 3;
      }
      act[g][3] = 3 + g % 2;
      act[g][4] = 3 + (1 + g) % 2;
    }
    out.emplace_back(std::make_shared<FiniteGroup const>(cyclic(6)), 5, act);
    return out;
  }

  bool key_yes(Decision d) {
    REQUIRE(d != Decision::undecided);
    return d == Decision::yes;
  }

}  // namespace

TEST_CASE("m-large examples", "[setcalc]") {
  auto Z6 = GSpace::regular(cyclic(6));
  auto r  = is_m_large(Z6, Z6.points(), 1);
  REQUIRE(r.decision == Decision::yes);
  CHECK(r.witness->F == FiniteSet{0});

  r = is_m_large(Z6, FiniteSet{0, 1}, 3);
  REQUIRE(r.decision == Decision::yes);
  CHECK(r.witness->F == FiniteSet{0, 2, 4});
  CHECK(replay(Z6, FiniteSet{0, 1}, *r.witness));
  CHECK_FALSE(replay(Z6, FiniteSet{0}, *r.witness));
  CHECK(is_m_large(Z6, FiniteSet{0, 1}, 2).decision == Decision::no);

  auto Z5 = GSpace::regular(cyclic(5));
  r       = is_m_large(Z5, FiniteSet{0}, 4);
  CHECK(r.decision == Decision::no);
  CHECK_FALSE(r.witness);
  CHECK(is_m_large(Z5, FiniteSet{}, 5).decision == Decision::no);
}

TEST_CASE("m-thick examples", "[setcalc]") {
  auto Z8 = GSpace::regular(cyclic(8));
  auto v  = is_m_thick(Z8, Z8.points(), 3);
  CHECK(v.thick());
  CHECK(replay(Z8, Z8.points(), v));

  v = is_m_thick(Z8, FiniteSet{0, 1, 2, 3}, 2);
  REQUIRE(v.decision == Decision::no);
  CHECK(*v.failing == FiniteSet{0, 4});
  CHECK(replay(Z8, FiniteSet{0, 1, 2, 3}, v));

  for (FiniteSet A : {FiniteSet{5}, FiniteSet{0, 3}, FiniteSet{1, 2, 7}}) {
    auto t = is_m_thick(Z8, A, 1);
    CHECK(t.thick());
    CHECK(replay(Z8, A, t));
  }
}

TEST_CASE("(k,m)-prethick examples", "[setcalc]") {
  auto Z4 = GSpace::regular(cyclic(4));
  auto r  = is_k_m_prethick(Z4, Z4.points(), 1, 3);
  REQUIRE(r.decision == Decision::yes);
  CHECK(*r.K == FiniteSet{0});

  r = is_k_m_prethick(Z4, FiniteSet{0}, 4, 4);
  REQUIRE(r.decision == Decision::yes);
  CHECK(r.K->size() == 4);
  CHECK(r.verdict.thick());
  CHECK(is_k_m_prethick(Z4, FiniteSet{0}, 3, 4).decision == Decision::no);

  auto Z8 = GSpace::regular(cyclic(8));
  auto v  = is_m_thick(Z8, FiniteSet{0, 1, 4, 5}, 2);
  REQUIRE(v.decision == Decision::no);
  CHECK(*v.failing == FiniteSet{0, 2});

  r = is_k_m_prethick(Z8, FiniteSet{0, 4}, 2, 2);
  CHECK(r.decision == Decision::no);
  CHECK_FALSE(r.K);
}

TEST_CASE("k-meager examples", "[setcalc]") {
  auto X = GSpace::regular(dihedral(3));
  for (std::size_t k = 1; k <= 3; ++k) {
    auto v = is_k_meager(X, FiniteSet{}, k);
    CHECK(v.decision == Decision::yes);
    for (auto const& c : v.certificates) {
      REQUIRE(c.complement_witness);
      CHECK(replay(X, set_difference(X.points(), set_product(X, c.K, FiniteSet{})),
                   *c.complement_witness));
    }
  }
  auto full = is_k_meager(X, X.points(), 1);
  CHECK(full.decision == Decision::no);
  CHECK(*full.thick_K == FiniteSet{0});

  // Z_6 {0, 3} is 2-meager but not 3-meager
  auto Z6 = GSpace::regular(cyclic(6));
  auto two = is_k_meager(Z6, FiniteSet{0, 3}, 2);
  CHECK(two.decision == Decision::yes);
  CHECK(two.certificates.size() == 21);
  for (auto const& c : two.certificates) {
    CHECK(replay(Z6, complement(Z6, set_product(Z6, c.K, FiniteSet{0, 3})),
                 *c.complement_witness));
  }
  auto three = is_k_meager(Z6, FiniteSet{0, 3}, 3);
  CHECK(three.decision == Decision::no);
  CHECK(*three.thick_K == FiniteSet{0, 1, 2});
}

TEST_CASE("budget overflow is undecided", "[setcalc]") {
  auto Z = GSpace::regular(cyclic(200));
  CHECK(is_m_large(Z, FiniteSet{0}, 4).decision == Decision::undecided);
  CHECK(is_m_thick(Z, FiniteSet{0}, 4).decision == Decision::undecided);
  CHECK(is_k_m_prethick(Z, FiniteSet{0}, 4, 1).decision == Decision::undecided);
  CHECK(is_k_meager(Z, FiniteSet{0}, 4).decision == Decision::undecided);
  CHECK(is_m_large(Z, FiniteSet{0}, 4, 100'000'000).decision == Decision::no);
}

TEST_CASE("windowed classifiers", "[setcalc][window]") {
  WindowedGroup Z(1, 60);
  HorizonPolicy p(60, 3);
  SECTION("evens are 1-meager at any margin >= 1") {
    std::vector<Elem> ev;
    for (Elem x = -60; x <= 60; x += 2) {
      ev.push_back(x);
    }
    FiniteSet E(ev);
    auto      v = is_k_meager(Z, E, 1, p);
    CHECK(v.horizon_relative);
    CHECK(v.decision == Decision::yes);
    CHECK(v.certificates.size() == 7);
    for (auto const& c : v.certificates) {
      CHECK(*c.run_bound == 2);
    }
    auto t = is_m_thick(Z, E, 2, p);
    REQUIRE(t.decision == Decision::no);
    REQUIRE(t.failing->size() == 2);
    Elem d = t.failing->back() - t.failing->front();
    CHECK(d % 2 == 1);
    auto l = is_m_large(Z, E, 2, p);
    REQUIRE(l.decision == Decision::yes);
    CHECK(replay(Z, p, E, *l.witness));
    CHECK(is_m_large(Z, E, 1, p).decision == Decision::no);
    CHECK(is_k_meager(Z, E, 2, p).decision == Decision::no);
  }
  SECTION("a long interval is thick") {
    FiniteSet I = FiniteSet::interval(-10, 10);
    CHECK(is_m_thick(Z, I, 3, p).thick());
    auto v = is_k_meager(Z, I, 1, p);
    CHECK(v.decision == Decision::no);
    FiniteSet KI = set_product(Z, *v.thick_K, I);
    CHECK(is_subset(translate(Z, *v.thick_point, Z.ball(3)), KI));
    CHECK(is_m_large(Z, I, 2, p).decision == Decision::no);
  }
  SECTION("Z^2 window") {
    WindowedGroup Z2(2, 6);
    HorizonPolicy q(6, 1);
    FiniteSet     ball = Z2.ball(4);
    CHECK(is_m_thick(Z2, ball, 2, q).thick());
    CHECK(is_k_meager(Z2, ball, 1, q).decision == Decision::no);
    std::vector<Elem> checker;
    for (Elem v : Z2.elements()) {
      auto c = Z2.decode(v);
      if ((c[0] + c[1]) % 2 == 0) {
        checker.push_back(v);
      }
    }
    FiniteSet C(checker);
    CHECK(is_k_meager(Z2, C, 1, q).decision == Decision::yes);
    auto l = is_m_large(Z2, C, 2, q);
    REQUIRE(l.decision == Decision::yes);
    CHECK(replay(Z2, q, C, *l.witness));
  }
}

TEST_CASE("oracle agreement on small spaces", "[setcalc][property]") {
  for (auto const& X : small_spaces(10)) {
    auto const n = X.size();
    for (oracle::Mask a = 0; a <= oracle::full(n); ++a) {
      FiniteSet A = oracle::unmask(a);
      for (int m = 1; m <= 2; ++m) {
        auto l = is_m_large(X, A, static_cast<std::size_t>(m));
        REQUIRE(key_yes(l.decision) == oracle::m_large(X, a, m));
        if (l.witness) {
          REQUIRE(replay(X, A, *l.witness));
        }
        auto t = is_m_thick(X, A, static_cast<std::size_t>(m));
        REQUIRE(key_yes(t.decision) == oracle::m_thick(X, a, m));
        REQUIRE(replay(X, A, t));
        for (int k = 1; k <= 2; ++k) {
          auto p = is_k_m_prethick(X, A, static_cast<std::size_t>(k),
                                   static_cast<std::size_t>(m));
          REQUIRE(key_yes(p.decision) == oracle::km_prethick(X, a, k, m));
          if (p.K) {
            REQUIRE(p.K->size() <= static_cast<std::size_t>(k));
            REQUIRE(replay(X, set_product(X, *p.K, A), p.verdict));
          }
        }
      }
      for (int k = 1; k <= 2; ++k) {
        auto v = is_k_meager(X, A, static_cast<std::size_t>(k));
        REQUIRE(key_yes(v.decision) == oracle::k_meager(X, a, k));
      }
    }
  }
}

TEST_CASE("thick iff the complement is not large", "[setcalc][property]") {
  for (auto const& X : small_spaces(8)) {
    auto const order = X.group().order();
    for (oracle::Mask a = 0; a <= oracle::full(X.size()); ++a) {
      FiniteSet A = oracle::unmask(a);
      bool      thick = key_yes(is_m_thick(X, A, order).decision);
      bool      large = key_yes(is_m_large(X, complement(X, A), order).decision);
      REQUIRE(thick == !large);
    }
  }
}

TEST_CASE("monotonicity in k and m", "[setcalc][property]") {
  std::mt19937_64 rng(11);
  for (auto const& X : small_spaces(8)) {
    std::uniform_int_distribution<oracle::Mask> pick(0, oracle::full(X.size()));
    for (int t = 0; t < 30; ++t) {
      FiniteSet A = oracle::unmask(pick(rng));
      for (std::size_t m = 1; m < 4; ++m) {
        if (key_yes(is_m_large(X, A, m).decision)) {
          CHECK(key_yes(is_m_large(X, A, m + 1).decision));
        }
        if (key_yes(is_m_thick(X, A, m + 1).decision)) {
          CHECK(key_yes(is_m_thick(X, A, m).decision));
        }
        for (std::size_t k = 1; k < 3; ++k) {
          if (key_yes(is_k_m_prethick(X, A, k, m + 1).decision)) {
            CHECK(key_yes(is_k_m_prethick(X, A, k, m).decision));
            CHECK(key_yes(is_k_m_prethick(X, A, k + 1, m + 1).decision));
          }
        }
      }
    }
  }
}

TEST_CASE("verdicts are translate invariant", "[setcalc][property]") {
  std::mt19937_64 rng(5);
  for (auto const& X : small_spaces(10)) {
    std::uniform_int_distribution<oracle::Mask> pick(0, oracle::full(X.size()));
    for (int t = 0; t < 20; ++t) {
      FiniteSet A = oracle::unmask(pick(rng));
      for (Elem g : X.group().elements()) {
        FiniteSet gA = translate(X, g, A);
        CHECK(is_m_large(X, A, 2).decision == is_m_large(X, gA, 2).decision);
        CHECK(is_m_thick(X, A, 2).decision == is_m_thick(X, gA, 2).decision);
        CHECK(is_k_m_prethick(X, A, 2, 2).decision
              == is_k_m_prethick(X, gA, 2, 2).decision);
        CHECK(is_k_meager(X, A, 2).decision == is_k_meager(X, gA, 2).decision);
      }
    }
  }

  WindowedGroup Z(1, 80);
  HorizonPolicy p(80, 4);
  std::vector<Elem> three;
  for (Elem x = -75; x <= 75; x += 3) {
    three.push_back(x);
  }
  FiniteSet A(three);
  for (Elem g : {-2, -1, 1, 2}) {
    FiniteSet gA = translate(Z, g, A);
    CHECK(is_m_large(Z, A, 3, p).decision == is_m_large(Z, gA, 3, p).decision);
    CHECK(is_m_thick(Z, A, 2, p).decision == is_m_thick(Z, gA, 2, p).decision);
    CHECK(is_k_meager(Z, A, 2, p).decision == is_k_meager(Z, gA, 2, p).decision);
    CHECK(is_k_meager(Z, A, 3, p).decision == is_k_meager(Z, gA, 3, p).decision);
  }
}
