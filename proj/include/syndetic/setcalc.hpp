#ifndef SYNDETIC_SETCALC_HPP_
#define SYNDETIC_SETCALC_HPP_

// Exact classifiers for largeness, thickness, prethickness and meagerness.
//
// On a finite G-space every quantifier is exhaustive. On a windowed group
// the quantifiers over finite F, K are restricted to the margin ball of a
// HorizonPolicy and coverage/placement is over the inner window; those
// verdicts carry horizon_relative = true.
//
// Candidate sets are searched by cardinality, then lexicographically by id;
// the first hit is returned. If the number of candidates would exceed the
// budget, the result is Decision::undecided and nothing is scanned.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "finite_set.hpp"
#include "gspace.hpp"
#include "windowed.hpp"

namespace syndetic {

  struct LargenessWitness {
    enum class Relation { covers_space, covers_inner_window };

    FiniteSet F;
    Relation  relation = Relation::covers_space;
    //! Windowed guards: bound on the distance between consecutive members
    //! (and from the inner window's ends), when known.
    std::optional<std::int64_t> gap_bound;
  };

  inline char const* to_string(LargenessWitness::Relation r) noexcept {
    return r == LargenessWitness::Relation::covers_space ? "FA covers X"
                                                         : "FA covers inner window";
  }

  struct LargenessResult {
    Decision                        decision = Decision::undecided;
    std::optional<LargenessWitness> witness;
    bool                            horizon_relative = false;
    std::uint64_t                   candidates       = 0;
  };

  struct ThicknessVerdict {
    //! yes = m-thick, no = not m-thick.
    Decision decision = Decision::undecided;
    //! On no: an F with Fx not inside A for every admissible x.
    std::optional<FiniteSet> failing;
    //! On yes: one placement x for every candidate F.
    std::vector<std::pair<FiniteSet, Elem>> placements;
    bool                                    horizon_relative = false;
    std::uint64_t                           candidates       = 0;

    bool thick() const noexcept {
      return decision == Decision::yes;
    }
  };

  struct PrethickResult {
    Decision                 decision = Decision::undecided;
    std::optional<FiniteSet> K;
    //! m-thickness verdict for KA when K is present.
    ThicknessVerdict verdict;
    bool             horizon_relative = false;
    std::uint64_t    candidates       = 0;
  };

  //! Why KA is not thick for one K.
  struct NotThickCertificate {
    FiniteSet K;
    //! A pattern F with Fx not inside KA for every admissible x.
    FiniteSet pattern;
    //! Finite case: F' with F'(X \ KA) = X.
    std::optional<LargenessWitness> complement_witness;
    //! Windowed Z: no run of this many consecutive members of KA starts at
    //! an admissible position.
    std::optional<std::int64_t> run_bound;
  };

  struct MeagerVerdict {
    //! yes = k-meager.
    Decision                         decision = Decision::undecided;
    std::vector<NotThickCertificate> certificates;
    //! On no: a K with KA thick and a point x whose orbit (finite) or
    //! margin-ball placement (windowed) lies inside KA.
    std::optional<FiniteSet> thick_K;
    std::optional<Elem>      thick_point;
    bool                     horizon_relative = false;
    std::uint64_t            candidates       = 0;
  };

  namespace detail {

    // Calls fn on every s-subset of `universe` in lexicographic order until
    // fn returns false. Returns false if stopped early.
    template <typename Fn>
    bool for_each_subset(std::vector<Elem> const& universe, std::size_t s, Fn&& fn) {
      std::size_t n = universe.size();
      if (s == 0 || s > n) {
        return true;
      }
      std::vector<std::size_t> idx(s);
      for (std::size_t i = 0; i < s; ++i) {
        idx[i] = i;
      }
      std::vector<Elem> current(s);
      while (true) {
        for (std::size_t i = 0; i < s; ++i) {
          current[i] = universe[idx[i]];
        }
        if (!fn(current)) {
          return false;
        }
        std::size_t i = s;
        while (i > 0 && idx[i - 1] == n - s + i - 1) {
          --i;
        }
        if (i == 0) {
          return true;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < s; ++j) {
          idx[j] = idx[j - 1] + 1;
        }
      }
    }

    // Calls fn on every subset of size 1..m, by size then lexicographic.
    template <typename Fn>
    bool for_each_subset_up_to(std::vector<Elem> const& universe,
                               std::size_t              m,
                               Fn&&                     fn) {
      for (std::size_t s = 1; s <= m && s <= universe.size(); ++s) {
        if (!for_each_subset(universe, s, fn)) {
          return false;
        }
      }
      return true;
    }

    // Uniform view of "where patterns come from, where they are placed".
    struct FiniteContext {
      GSpace const& X;

      std::vector<Elem> patterns() const {
        return X.group().elements().members();
      }
      std::vector<Elem> placements() const {
        return X.points().members();
      }
      Bitmap bitmap(FiniteSet const& s) const {
        return X.bitmap(s);
      }
      Bitmap bitmap() const {
        return X.bitmap();
      }
      Elem place(Elem f, Elem x) const {
        return X.act(f, x);
      }
      // f a if it lies in the coverage target (always, here).
      std::optional<Elem> into_target(Elem f, Elem a) const {
        return X.act(f, a);
      }
      std::size_t target_size() const {
        return X.size();
      }
      // Product restricted to what thickness queries can see.
      FiniteSet product(FiniteSet const& K, FiniteSet const& A) const {
        return set_product(X, K, A);
      }
      static constexpr bool horizon_relative = false;
    };

    struct WindowContext {
      WindowedGroup const& G;
      HorizonPolicy        policy;

      std::vector<Elem> patterns() const {
        return G.ball(policy.margin).members();
      }
      std::vector<Elem> placements() const {
        return G.ball(policy.inner_radius()).members();
      }
      Bitmap bitmap(FiniteSet const& s) const {
        return G.bitmap(s);
      }
      Bitmap bitmap() const {
        return G.bitmap();
      }
      Elem place(Elem f, Elem x) const {
        // |f| <= margin and |x| <= horizon - margin, so this stays inside
        return f + x;
      }
      std::optional<Elem> into_target(Elem f, Elem a) const {
        return G.try_add(f, a, policy.inner_radius());
      }
      std::size_t target_size() const {
        std::size_t side = static_cast<std::size_t>(policy.inner_length());
        std::size_t n    = 1;
        for (int i = 0; i < G.dim(); ++i) {
          n *= side;
        }
        return n;
      }
      FiniteSet product(FiniteSet const& K, FiniteSet const& A) const {
        std::vector<Elem> out;
        out.reserve(K.size() * A.size());
        for (Elem k : K) {
          for (Elem a : A) {
            if (auto s = G.try_add(k, a, G.horizon())) {
              out.push_back(*s);
            }
          }
        }
        return FiniteSet(std::move(out));
      }
      static constexpr bool horizon_relative = true;
    };

    template <typename Ctx>
    bool covers_target(Ctx const& ctx, std::vector<Elem> const& F, FiniteSet const& A) {
      Bitmap      hit = ctx.bitmap();
      std::size_t count = 0;
      for (Elem f : F) {
        for (Elem a : A) {
          if (auto y = ctx.into_target(f, a); y && !hit.test(*y)) {
            hit.set(*y);
            ++count;
          }
        }
      }
      return count == ctx.target_size();
    }

    template <typename Ctx>
    LargenessResult m_large(Ctx const& ctx, FiniteSet const& A, std::size_t m,
                            std::uint64_t budget) {
      LargenessResult r;
      r.horizon_relative = Ctx::horizon_relative;
      auto universe      = ctx.patterns();
      r.candidates       = subsets_up_to(universe.size(), m);
      if (r.candidates > budget) {
        r.decision = Decision::undecided;
        return r;
      }
      r.decision = Decision::no;
      if (A.empty()) {
        return r;
      }
      for_each_subset_up_to(universe, m, [&](std::vector<Elem> const& F) {
        // |F||A| below the target size cannot cover
        if (F.size() * A.size() < ctx.target_size()) {
          return true;
        }
        if (covers_target(ctx, F, A)) {
          r.decision = Decision::yes;
          r.witness  = LargenessWitness{
              FiniteSet::from_sorted(F),
              Ctx::horizon_relative ? LargenessWitness::Relation::covers_inner_window
                                     : LargenessWitness::Relation::covers_space,
              std::nullopt};
          return false;
        }
        return true;
      });
      return r;
    }

    template <typename Ctx>
    std::optional<Elem> find_placement(Ctx const&               ctx,
                                       std::vector<Elem> const& F,
                                       std::vector<Elem> const& xs,
                                       Bitmap const&            inA) {
      for (Elem x : xs) {
        bool ok = true;
        for (Elem f : F) {
          if (!inA.test(ctx.place(f, x))) {
            ok = false;
            break;
          }
        }
        if (ok) {
          return x;
        }
      }
      return std::nullopt;
    }

    // Differences d with |d| <= radius such that a, a + d both lie in A.
    inline Bitmap small_differences(WindowedGroup const& G,
                                    FiniteSet const&     A,
                                    Bitmap const&        inA,
                                    std::int64_t         radius) {
      Bitmap    D   = G.bitmap();
      FiniteSet box = G.ball(radius);
      for (Elem a : A) {
        for (Elem d : box) {
          if (D.test(d)) {
            continue;
          }
          if (auto s = G.try_add(a, d, G.horizon()); s && inA.test(*s)) {
            D.set(d);
          }
        }
      }
      return D;
    }

    template <typename Ctx>
    ThicknessVerdict m_thick(Ctx const& ctx, FiniteSet const& A, std::size_t m,
                             std::uint64_t budget) {
      ThicknessVerdict v;
      v.horizon_relative = Ctx::horizon_relative;
      auto universe      = ctx.patterns();
      v.candidates       = subsets_up_to(universe.size(), m);
      if (v.candidates > budget) {
        v.decision = Decision::undecided;
        return v;
      }
      auto   xs  = ctx.placements();
      Bitmap inA = ctx.bitmap(A);
      std::optional<Bitmap> diffs;
      if constexpr (std::is_same_v<Ctx, WindowContext>) {
        if (m >= 2) {
          diffs = small_differences(ctx.G, A, inA, 2 * ctx.policy.margin);
        }
      }
      v.decision = Decision::yes;
      for_each_subset_up_to(universe, m, [&](std::vector<Elem> const& F) {
        if (diffs && F.size() == 2 && !diffs->test(F[1] - F[0])) {
          v.decision = Decision::no;
          v.failing  = FiniteSet::from_sorted(F);
          return false;
        }
        auto x = find_placement(ctx, F, xs, inA);
        if (!x) {
          v.decision = Decision::no;
          v.failing  = FiniteSet::from_sorted(F);
          return false;
        }
        v.placements.emplace_back(FiniteSet::from_sorted(F), *x);
        return true;
      });
      if (v.decision == Decision::no) {
        v.placements.clear();
      }
      return v;
    }

    template <typename Ctx>
    PrethickResult k_m_prethick(Ctx const& ctx, FiniteSet const& A, std::size_t k,
                                std::size_t m, std::uint64_t budget) {
      PrethickResult r;
      r.horizon_relative = Ctx::horizon_relative;
      auto          universe = ctx.patterns();
      std::uint64_t outer    = subsets_up_to(universe.size(), k);
      std::uint64_t inner    = subsets_up_to(universe.size(), m);
      r.candidates = saturating_mul(outer, saturating_add(inner, 1));
      if (r.candidates > budget) {
        r.decision = Decision::undecided;
        return r;
      }
      r.decision = Decision::no;
      for_each_subset_up_to(universe, k, [&](std::vector<Elem> const& K) {
        FiniteSet KA = ctx.product(FiniteSet::from_sorted(K), A);
        auto      v  = m_thick(ctx, KA, m, budget);
        if (v.thick()) {
          r.decision = Decision::yes;
          r.K        = FiniteSet::from_sorted(K);
          r.verdict  = std::move(v);
          return false;
        }
        return true;
      });
      return r;
    }

    // F with F C = X, chosen greedily in id order.
    inline std::optional<LargenessWitness>
    complement_cover(GSpace const& X, FiniteSet const& C) {
      if (C.empty()) {
        return std::nullopt;
      }
      Bitmap            hit = X.bitmap();
      std::size_t       count = 0;
      std::vector<Elem> F;
      auto              n = static_cast<Elem>(X.group().order());
      for (Elem g = 0; g < n && count < X.size(); ++g) {
        bool useful = false;
        for (Elem c : C) {
          if (!hit.test(X.act(g, c))) {
            useful = true;
            break;
          }
        }
        if (!useful) {
          continue;
        }
        F.push_back(g);
        for (Elem c : C) {
          if (Elem y = X.act(g, c); !hit.test(y)) {
            hit.set(y);
            ++count;
          }
        }
      }
      if (count < X.size()) {
        return std::nullopt;
      }
      return LargenessWitness{FiniteSet::from_sorted(std::move(F)),
                              LargenessWitness::Relation::covers_space,
                              std::nullopt};
    }

  }  // namespace detail

  //! Some F with |F| <= m and FA = X.
  inline LargenessResult is_m_large(GSpace const& X, FiniteSet const& A,
                                    std::size_t m, std::uint64_t budget = default_budget) {
    return detail::m_large(detail::FiniteContext{X}, A, m, budget);
  }

  //! Some F inside the margin ball with |F| <= m and FA covering the inner
  //! window.
  inline LargenessResult is_m_large(WindowedGroup const& G, FiniteSet const& A,
                                    std::size_t m, HorizonPolicy const& policy,
                                    std::uint64_t budget = default_budget) {
    policy.check(G);
    return detail::m_large(detail::WindowContext{G, policy}, A, m, budget);
  }

  inline ThicknessVerdict is_m_thick(GSpace const& X, FiniteSet const& A,
                                     std::size_t m, std::uint64_t budget = default_budget) {
    return detail::m_thick(detail::FiniteContext{X}, A, m, budget);
  }

  //! Patterns from the margin ball, placements x in the inner window. Pairs
  //! are first tested against the difference set A - A.
  inline ThicknessVerdict is_m_thick(WindowedGroup const& G, FiniteSet const& A,
                                     std::size_t m, HorizonPolicy const& policy,
                                     std::uint64_t budget = default_budget) {
    policy.check(G);
    return detail::m_thick(detail::WindowContext{G, policy}, A, m, budget);
  }

  inline PrethickResult is_k_m_prethick(GSpace const& X, FiniteSet const& A,
                                        std::size_t k, std::size_t m,
                                        std::uint64_t budget = default_budget) {
    return detail::k_m_prethick(detail::FiniteContext{X}, A, k, m, budget);
  }

  inline PrethickResult is_k_m_prethick(WindowedGroup const& G, FiniteSet const& A,
                                        std::size_t k, std::size_t m,
                                        HorizonPolicy const& policy,
                                        std::uint64_t budget = default_budget) {
    policy.check(G);
    return detail::k_m_prethick(detail::WindowContext{G, policy}, A, k, m, budget);
  }

  //! In a finite space, KA is thick iff it contains a whole orbit; each
  //! failure is certified by a largeness witness for X \ KA.
  inline MeagerVerdict is_k_meager(GSpace const& X, FiniteSet const& A,
                                   std::size_t k, std::uint64_t budget = default_budget) {
    MeagerVerdict v;
    auto          universe = X.group().elements().members();
    v.candidates           = detail::subsets_up_to(universe.size(), k);
    if (v.candidates > budget) {
      v.decision = Decision::undecided;
      return v;
    }
    auto      orbs    = orbits(X);
    FiniteSet pattern = X.group().elements();
    v.decision        = Decision::yes;
    detail::for_each_subset_up_to(universe, k, [&](std::vector<Elem> const& Kv) {
      FiniteSet K  = FiniteSet::from_sorted(Kv);
      FiniteSet KA = set_product(X, K, A);
      for (auto const& o : orbs) {
        if (is_subset(o, KA)) {
          v.decision    = Decision::no;
          v.thick_K     = K;
          v.thick_point = o.front();
          return false;
        }
      }
      NotThickCertificate c;
      c.K                  = std::move(K);
      c.pattern            = pattern;
      c.complement_witness = detail::complement_cover(X, complement(X, KA));
      v.certificates.push_back(std::move(c));
      return true;
    });
    if (v.decision == Decision::no) {
      v.certificates.clear();
    }
    return v;
  }

  //! Horizon-relative: KA counts as thick iff some translate of the whole
  //! margin ball by a point of the inner window lies inside KA.
  inline MeagerVerdict is_k_meager(WindowedGroup const& G, FiniteSet const& A,
                                   std::size_t k, HorizonPolicy const& policy,
                                   std::uint64_t budget = default_budget) {
    policy.check(G);
    detail::WindowContext ctx{G, policy};
    MeagerVerdict         v;
    v.horizon_relative = true;
    auto universe      = ctx.patterns();
    v.candidates       = detail::subsets_up_to(universe.size(), k);
    if (v.candidates > budget) {
      v.decision = Decision::undecided;
      return v;
    }
    std::int64_t const r  = policy.margin;
    std::int64_t const H  = G.horizon();
    auto const         xs = ctx.placements();
    FiniteSet const    ball = G.ball(r);
    v.decision             = Decision::yes;
    detail::for_each_subset_up_to(universe, k, [&](std::vector<Elem> const& Kv) {
      FiniteSet K  = FiniteSet::from_sorted(Kv);
      FiniteSet KA = ctx.product(K, A);
      NotThickCertificate c;
      c.K = K;
      if (G.dim() == 1) {
        // run[y - lo]: consecutive members of KA starting at y
        std::vector<std::int64_t> run(static_cast<std::size_t>(2 * H + 2), 0);
        detail::Bitmap            inKA = G.bitmap(KA);
        for (Elem y = H; y >= -H; --y) {
          run[static_cast<std::size_t>(y + H)] =
              inKA.test(y) ? 1 + run[static_cast<std::size_t>(y + H + 1)] : 0;
        }
        std::int64_t longest = 0;
        Elem         where   = 0;
        for (Elem x : xs) {
          std::int64_t len = run[static_cast<std::size_t>(x - r + H)];
          if (len > longest) {
            longest = len;
            where   = x;
          }
        }
        if (longest >= 2 * r + 1) {
          v.decision    = Decision::no;
          v.thick_K     = std::move(K);
          v.thick_point = where;
          return false;
        }
        c.run_bound = longest + 1;
        c.pattern   = FiniteSet::interval(-r, -r + longest);
      } else {
        detail::Bitmap inKA = G.bitmap(KA);
        if (auto x = detail::find_placement(ctx, ball.members(), xs, inKA)) {
          v.decision    = Decision::no;
          v.thick_K     = std::move(K);
          v.thick_point = *x;
          return false;
        }
        c.pattern = ball;
      }
      v.certificates.push_back(std::move(c));
      return true;
    });
    if (v.decision == Decision::no) {
      v.certificates.clear();
    }
    return v;
  }

  //! Re-checks a windowed largeness witness: F lies in the margin ball and
  //! F + A covers the inner window. A stored gap bound must also hold, for
  //! gaps between consecutive members inside the inner window (Z only).
  inline bool replay(WindowedGroup const& G, HorizonPolicy const& policy,
                     FiniteSet const& A, LargenessWitness const& w) {
    policy.check(G);
    if (w.F.empty() || w.relation != LargenessWitness::Relation::covers_inner_window) {
      return false;
    }
    for (Elem f : w.F) {
      if (G.sup_norm(f) > policy.margin) {
        return false;
      }
    }
    std::int64_t const R = policy.inner_radius();
    if (G.dim() == 1) {
      FiniteSet inner = set_intersection(A, FiniteSet::interval(-R, R));
      if (w.gap_bound) {
        for (std::size_t i = 1; i < inner.size(); ++i) {
          if (inner[i] - inner[i - 1] > *w.gap_bound) {
            return false;
          }
        }
      }
      if (w.F.back() - w.F.front() + 1 == static_cast<Elem>(w.F.size())) {
        // F an interval [p, q]: a + F are intervals, so sweep the sorted A
        Elem covered = -R - 1;
        for (Elem a : A) {
          Elem lo = a + w.F.front(), hi = a + w.F.back();
          if (lo > covered + 1) {
            break;
          }
          covered = std::max(covered, hi);
        }
        return covered >= R;
      }
    }
    return detail::covers_target(detail::WindowContext{G, policy}, w.F.members(), A);
  }

  //! Re-checks a largeness witness from scratch: FA = X.
  inline bool replay(GSpace const& X, FiniteSet const& A, LargenessWitness const& w) {
    return set_product(X, w.F, A) == X.points();
  }

  //! Re-checks a thickness verdict: every stored placement fits, or the
  //! failing pattern fits nowhere.
  inline bool replay(GSpace const& X, FiniteSet const& A, ThicknessVerdict const& v) {
    if (v.decision == Decision::yes) {
      for (auto const& [F, x] : v.placements) {
        if (!is_subset(set_product(X, F, FiniteSet{x}), A)) {
          return false;
        }
      }
      return true;
    }
    if (v.decision == Decision::no && v.failing) {
      for (Elem x : X.points()) {
        if (is_subset(set_product(X, *v.failing, FiniteSet{x}), A)) {
          return false;
        }
      }
      return true;
    }
    return false;
  }

}  // namespace syndetic

#endif  // SYNDETIC_SETCALC_HPP_
