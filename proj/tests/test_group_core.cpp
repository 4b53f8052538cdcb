#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <syndetic/io.hpp>
#include <syndetic/syndetic.hpp>

using namespace syndetic;

TEST_CASE("cyclic groups", "[group]") {
  auto t = cyclic(1);
  CHECK(t.order() == 1);
  CHECK(t.identity() == 0);

  auto z4 = cyclic(4);
  CHECK(z4.mul(1, 3) == 0);
  CHECK(z4.inv(1) == 3);
  CHECK(validate_group(cyclic(6).table()).valid());
  CHECK(validate_group(cyclic(5).table()).valid());
  CHECK_THROWS_AS(cyclic(0), std::invalid_argument);
}

TEST_CASE("direct products", "[group]") {
  auto klein = product(cyclic(2), cyclic(2));
  CHECK(klein.order() == 4);
  for (Elem g : klein.elements()) {
    CHECK(klein.mul(g, g) == klein.identity());
  }
  // (1,1) in Z2 x Z3 has id 1*3 + 1 and generates the whole group
  auto z6 = product(cyclic(2), cyclic(3));
  CHECK(z6.element_order(4) == 6);

  auto G = dihedral(3);
  auto P = product(cyclic(1), G);
  CHECK(P.order() == G.order());
  CHECK(P.table() == G.table());
  CHECK_THROWS_AS(product(cyclic(100), cyclic(100)), Error);
}

TEST_CASE("non-abelian constructors satisfy the axioms", "[group]") {
  for (auto const& G : {dihedral(4), dihedral(5), quaternion()}) {
    CHECK(validate_group(G.table()).valid());
  }
  auto Q = quaternion();
  // i^2 = -1 with ids {1, i, j, k, -1, -i, -j, -k}
  CHECK(Q.mul(1, 1) == 4);
  CHECK(Q.mul(1, 2) == 3);
  CHECK(Q.mul(2, 1) == 7);
}

TEST_CASE("validate_group reports every violated axiom", "[group]") {
  std::vector<std::vector<Elem>> bad = {{0, 1, 2}, {1, 1, 0}, {2, 0, 1}};
  auto                           r   = validate_group(bad);
  REQUIRE_FALSE(r.valid());
  bool row1 = false;
  for (auto const& v : r.violations) {
    row1 = row1 || (v.kind == Violation::Kind::non_latin_row && v.witness.front() == 1);
  }
  CHECK(row1);

  // x*y = x - y mod 3: Latin, but not associative; first witness (0,0,1)
  std::vector<std::vector<Elem>> magma = {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  auto                           m     = validate_group(magma);
  REQUIRE_FALSE(m.valid());
  auto it = std::find_if(m.violations.begin(), m.violations.end(),
                         [](auto const& v) { return v.kind == Violation::Kind::non_associative; });
  REQUIRE(it != m.violations.end());
  CHECK(it->witness == std::vector<Elem>{0, 0, 1});

  CHECK_THROWS_AS(validate_group({{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_group({}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup::from_table(magma), InvalidGroup);
}

TEST_CASE("large tables sample associativity", "[group]") {
  auto r = validate_group(cyclic(70).table());
  CHECK(r.valid());
  CHECK(r.sampled_associativity);
}

TEST_CASE("set products", "[group]") {
  auto X = GSpace::regular(cyclic(6));
  CHECK(set_product(X, FiniteSet{0}, FiniteSet{2, 5}) == FiniteSet{2, 5});
  CHECK(set_product(X, FiniteSet{0, 3}, FiniteSet{0, 1}) == FiniteSet{0, 1, 3, 4});

  WindowedGroup Z(1, 100);
  CHECK(set_product(Z, FiniteSet{-1, 0, 1}, FiniteSet{0, 5}) == FiniteSet{-1, 0, 1, 4, 5, 6});
  CHECK_THROWS_AS(set_product(Z, FiniteSet{1}, FiniteSet{100}), WindowOverflow);
}

TEST_CASE("set product properties", "[group][property]") {
  std::mt19937_64 rng(7);
  for (auto const& G : {cyclic(7), dihedral(4), quaternion(), product(cyclic(2), cyclic(4))}) {
    auto                            X = GSpace::regular(G);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(G.order()) - 1);
    for (int t = 0; t < 50; ++t) {
      std::vector<Elem> a, f;
      for (int i = 0; i < 3; ++i) {
        a.push_back(pick(rng));
        f.push_back(pick(rng));
      }
      FiniteSet A(a), F(f);
      Elem      g = pick(rng), h = pick(rng);
      CHECK(translate(X, g, translate(X, h, A)) == translate(X, G.mul(g, h), A));
      FiniteSet FA = set_product(X, F, A);
      CHECK(FA.size() <= F.size() * A.size());
      std::set<std::pair<Elem, Elem>> pairs;
      std::set<Elem>                  prods;
      for (Elem x : F) {
        for (Elem y : A) {
          prods.insert(G.mul(x, y));
        }
      }
      CHECK((FA.size() == F.size() * A.size()) == (prods.size() == F.size() * A.size()));
    }
  }
}

TEST_CASE("windowed groups encode vectors", "[group]") {
  WindowedGroup Z2(2, 5);
  Elem          v = Z2.encode({2, -3});
  CHECK(Z2.decode(v)[0] == 2);
  CHECK(Z2.decode(v)[1] == -3);
  CHECK(Z2.sup_norm(v) == 3);
  CHECK(Z2.mul(v, Z2.inv(v)) == 0);
  CHECK(Z2.ball(1).size() == 9);
  CHECK_THROWS_AS(Z2.encode({6, 0}), WindowOverflow);
  CHECK_THROWS_AS(Z2.mul(Z2.encode({5, 0}), Z2.encode({1, 0})), WindowOverflow);
  CHECK(Z2.size() == 121);
  CHECK_THROWS_AS(WindowedGroup(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(HorizonPolicy(10, 10), std::invalid_argument);
}

TEST_CASE("orbits and transitivity", "[group]") {
  auto Z4 = GSpace::regular(cyclic(4));
  CHECK(orbits(Z4).size() == 1);
  CHECK(is_transitive(Z4));

  auto z2 = std::make_shared<FiniteGroup const>(cyclic(2));
  GSpace two(z2, 3, {{0, 1, 2}, {1, 0, 2}});
  auto   o = orbits(two);
  REQUIRE(o.size() == 2);
  CHECK(o[0] == FiniteSet{0, 1});
  CHECK(o[1] == FiniteSet{2});
  CHECK_FALSE(is_transitive(two));

  auto   triv = std::make_shared<FiniteGroup const>(cyclic(1));
  GSpace pts(triv, 2, {{0, 1}});
  CHECK(orbits(pts).size() == 2);

  CHECK_THROWS_AS(GSpace(z2, 3, {{1, 0, 2}, {0, 1, 2}}), std::invalid_argument);
}

TEST_CASE("orbits partition the space", "[group][property]") {
  // Z_6 acting on Z_3 by reduction mod 3, and on 2 points by parity
  auto                           z6 = std::make_shared<FiniteGroup const>(cyclic(6));
  std::vector<std::vector<Elem>> act(6, std::vector<Elem>(5));
  for (Elem g = 0; g < 6; ++g) {
    for (Elem x = 0; x < 3; ++x) {
      act[g][x] = (x + g) % 3;
    }
    for (Elem x = 3; x < 5; ++x) {
      act[g][x] = 3 + (x - 3 + g) % 2;
    }
  }
  GSpace    X(z6, 5, act);
  FiniteSet all;
  std::size_t total = 0;
  for (auto const& o : orbits(X)) {
    CHECK(are_disjoint(all, o));
    all = set_union(all, o);
    total += o.size();
  }
  CHECK(all == X.points());
  CHECK(total == X.size());
}

TEST_CASE("homomorphisms preserve products", "[group][property]") {
  auto h = GroupHom::cyclic_map(12, 6, 5);
  CHECK(h.surjective());
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Elem> pick(0, 11);
  auto                                src = GSpace::regular(cyclic(12));
  auto                                tgt = GSpace::regular(cyclic(6));
  for (int t = 0; t < 50; ++t) {
    FiniteSet F{pick(rng), pick(rng)}, A{pick(rng), pick(rng), pick(rng)};
    CHECK(h.image(set_product(src, F, A)) == set_product(tgt, h.image(F), h.image(A)));
  }
  CHECK_FALSE(GroupHom::cyclic_map(12, 6, 2).surjective());
  CHECK_THROWS_AS(GroupHom::finite(std::make_shared<FiniteGroup const>(cyclic(4)),
                                   std::make_shared<FiniteGroup const>(cyclic(2)),
                                   {0, 1, 1, 0}),
                  std::invalid_argument);

  auto proj = GroupHom::linear(WindowedGroup(2, 3), WindowedGroup(1, 3), {{1, 0}});
  CHECK(proj.surjective());
  CHECK_FALSE(GroupHom::linear(WindowedGroup(1, 3), WindowedGroup(1, 3), {{2}}).surjective());
}

TEST_CASE("group files and set expressions", "[group][io]") {
  std::string dir = SAMPLES_DIR;
  auto        z12 = Ambient::build(group_descriptor_from_arg(dir + "/z12.toml"));
  CHECK(z12.group().order() == 12);
  auto prod = Ambient::build(group_descriptor_from_arg(dir + "/z2xz3.toml"));
  CHECK(prod.group().order() == 6);
  auto klein = Ambient::build(group_descriptor_from_arg(dir + "/klein.toml"));
  CHECK(klein.group() == product(cyclic(2), cyclic(2)));
  CHECK_THROWS_AS(Ambient::build(group_descriptor_from_arg(dir + "/magma.toml")), InvalidGroup);
  auto two = Ambient::build(group_descriptor_from_arg(dir + "/two_orbit.toml"));
  CHECK(two.is_space());
  CHECK(orbits(two.space()).size() == 2);
  auto win = Ambient::build(group_descriptor_from_arg(dir + "/zwindow.toml"));
  CHECK(win.windowed());
  CHECK(win.margin() == 4);
  CHECK(Ambient::build(group_descriptor_from_arg("cyclic(5)")).group().order() == 5);
  CHECK_THROWS_AS(group_descriptor_from_arg("nonsense(3)"), ParseError);

  SetContext ctx{FiniteSet::interval(0, 11), std::nullopt};
  CHECK(parse_set("{3, 1, 1}", ctx) == FiniteSet{1, 3});
  CHECK(parse_set("[2, 4]", ctx) == FiniteSet{2, 3, 4});
  CHECK(parse_set("ap(1, 4)", ctx) == FiniteSet{1, 5, 9});
  CHECK(parse_set("ap(0, 5, 2)", ctx) == FiniteSet{0, 5});
  CHECK(parse_set("complement(ap(0, 2))", ctx) == FiniteSet{1, 3, 5, 7, 9, 11});
  CHECK(parse_set("union({0}, [10, 11])", ctx) == FiniteSet{0, 10, 11});
  CHECK(parse_set("intersect(full, {4}) # trailing comment", ctx) == FiniteSet{4});
  CHECK(parse_set("empty", ctx).empty());
  CHECK_THROWS_AS(parse_set("{12}", ctx), ParseError);
  CHECK_THROWS_AS(parse_set("{1,", ctx), ParseError);

  WindowedGroup Z2(2, 3);
  SetContext    ctx2{Z2.elements(), Z2};
  CHECK(parse_set("{(1, -1)}", ctx2) == FiniteSet{Z2.encode({1, -1})});
}
