#ifndef SYNDETIC_PARTITION_HPP_
#define SYNDETIC_PARTITION_HPP_

// A windowed prefix of the staged construction of a partition of Z into
// two k-meager sets.
//
// K_1, K_2, ... enumerates the k-subsets of Z. Stage n picks sparse large
// sets A_n then B_n with
//
//   A_n avoiding  K_n^-1 K_i B_i  for i < n,
//   B_n avoiding  K_n^-1 K_i A_i  for i <= n,
//
// each of window density below 1/(k^2 2^n). Then A = union of K_n A_n and
// cannot meet any K_n B_n. For K = K_n^-1 the large set B_n misses KA, and
// A_n misses K(X \ A), so neither KA nor K(X \ A) is thick.
//
// Every set lives in the inner window of a HorizonPolicy on Z; largeness is
// horizon-relative and carries explicit gap bounds.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "finite_set.hpp"
#include "gspace.hpp"
#include "hom.hpp"
#include "rational.hpp"
#include "setcalc.hpp"
#include "submeasure.hpp"
#include "windowed.hpp"

namespace syndetic {

  inline constexpr char horizon_caveat[] =
      "all largeness and thickness claims are horizon-relative: patterns and "
      "translates range over the margin ball, coverage over the inner window";

  ////////////////////////////////////////////////////////////////////////
  // Enumeration of k-subsets of Z
  ////////////////////////////////////////////////////////////////////////

  //! Upper bound on the sup-norm radius of the n-th enumerated set (n >= 1).
  using RadiusSchedule = std::function<std::int64_t(std::size_t n)>;

  //! ceil(n/2) + k.
  inline RadiusSchedule default_schedule(std::size_t k) {
    return [k](std::size_t n) {
      return static_cast<std::int64_t>((n + 1) / 2 + k);
    };
  }

  inline std::int64_t radius(FiniteSet const& K) {
    return K.empty() ? 0 : std::max(-K.front(), K.back());
  }

  //! The first `count` k-subsets of Z by increasing radius max|x|, then
  //! lexicographically. Later terms never move earlier ones. Throws if the
  //! n-th set breaks the schedule.
  inline std::vector<FiniteSet> enumerate_k_subsets(std::size_t k, std::size_t count,
                                                    RadiusSchedule const& schedule) {
    if (k == 0) {
      throw std::invalid_argument("k must be positive");
    }
    std::vector<FiniteSet> out;
    for (std::int64_t rho = 0; out.size() < count; ++rho) {
      std::vector<Elem> universe;
      for (Elem x = -rho; x <= rho; ++x) {
        universe.push_back(x);
      }
      detail::for_each_subset(universe, k, [&](std::vector<Elem> const& s) {
        if (s.front() == -rho || s.back() == rho) {
          out.push_back(FiniteSet::from_sorted(s));
        }
        return out.size() < count;
      });
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (radius(out[i]) > schedule(i + 1)) {
        throw std::invalid_argument("k-subset " + std::to_string(i + 1)
                                    + " has radius above the schedule");
      }
    }
    return out;
  }

  inline std::vector<FiniteSet> enumerate_k_subsets(std::size_t k, std::size_t count) {
    return enumerate_k_subsets(k, count, default_schedule(k));
  }

  ////////////////////////////////////////////////////////////////////////
  // Results
  ////////////////////////////////////////////////////////////////////////

  //! One of the two sets chosen at a stage, with the region it had to avoid.
  struct StageSide {
    FiniteSet        set;
    LargenessWitness witness;
    std::int64_t     E_len = 0;
    //! Window density of the set.
    Rational eval;
    //! The forbidden region is recomputed by the verifier, so only its
    //! size and density are kept.
    std::size_t forbidden_size = 0;
    Rational    forbidden_eval;
    //! sum over earlier sets P_i of |K_n^-1 K_i| eval(P_i) ...
    Rational subadditive_sum;
    //! ... and of k^2/(k^2 2^i), which must stay below 1.
    Rational bound_sum;
  };

  struct StageRecord {
    std::size_t n = 0;
    FiniteSet   K;
    //! 1/(k^2 2^n).
    Rational  bound;
    StageSide A;
    StageSide B;
  };

  struct PartitionResult {
    std::size_t              k = 0;
    std::int64_t             L = 0;
    HorizonPolicy            policy;
    std::vector<StageRecord> stages;
    //! Union of K_n A_n (may reach past the inner window by the radius of
    //! K_n, never past the horizon).
    FiniteSet A;

    std::size_t size() const noexcept {
      return stages.size();
    }

    //! The inner window minus A; contains every K_n B_n inside the window.
    FiniteSet B_side() const {
      std::int64_t R = policy.inner_radius();
      return set_difference(FiniteSet::interval(-R, R), A);
    }
  };

  struct PartitionPlan {
    std::int64_t  L     = 0;
    std::int64_t  E_max = 0;
    std::int64_t  K_max = 0;
    HorizonPolicy policy;
  };

  //! L = 4 k^2 2^N serves every stage: stage n uses eps = 1/(k^2 2^n),
  //! |E| = 2 k^2 2^n, and needs L >= 2|E|. The margin holds a largeness
  //! radius (<= L + |E|) plus the shift by K_n. The horizon must fit eight
  //! stage-N gap bounds L + 2|E_N| in the inner window.
  inline PartitionPlan plan_partition(std::size_t k, std::size_t N, std::int64_t horizon,
                                      std::optional<std::int64_t> margin = std::nullopt,
                                      RadiusSchedule const& schedule = {}) {
    if (k == 0) {
      throw std::invalid_argument("k must be positive");
    }
    if (N > 40) {
      throw PreconditionFailed("at most 40 stages are supported");
    }
    RadiusSchedule sched = schedule ? schedule : default_schedule(k);
    PartitionPlan  p;
    auto           kk = static_cast<std::int64_t>(k * k);
    p.E_max           = 2 * kk * (std::int64_t{1} << N);
    p.L               = 2 * p.E_max;
    p.K_max           = N == 0 ? 0 : sched(N);
    std::int64_t r    = margin ? *margin : p.L + 2 * p.E_max + 2 * p.K_max + 1;
    if (r >= horizon) {
      throw PreconditionFailed("horizon too small: margin " + std::to_string(r)
                               + " must be below the horizon " + std::to_string(horizon));
    }
    p.policy          = HorizonPolicy(horizon, r);
    std::int64_t need = 8 * (p.L + 2 * p.E_max);
    if (need > p.policy.inner_length()) {
      throw PreconditionFailed("horizon too small: 8 (L + 2|E_N|) = " + std::to_string(need)
                               + " exceeds the inner window length "
                               + std::to_string(p.policy.inner_length()));
    }
    return p;
  }

  namespace detail {

    // (union over i of (D_i + P_i)) inside [-R, R], D_i = K_i - K_n.
    struct Forbidden {
      Bitmap bits;
      Rational    subadditive_sum;
      Rational    bound_sum;
    };

    inline void add_shifted(Bitmap& bits, std::int64_t R, FiniteSet const& K_n,
                            FiniteSet const& K_i, FiniteSet const& P, Rational const& eval_P,
                            Rational const& eps_i, std::size_t k, Forbidden& f) {
      std::vector<Elem> D;
      for (Elem a : K_i) {
        for (Elem b : K_n) {
          D.push_back(a - b);
        }
      }
      FiniteSet shifts(std::move(D));
      for (Elem d : shifts) {
        for (Elem x : P) {
          if (Elem y = x + d; y >= -R && y <= R) {
            bits.set(y);
          }
        }
      }
      f.subadditive_sum += static_cast<unsigned long>(shifts.size()) * eval_P;
      f.bound_sum += static_cast<unsigned long>(k * k) * eps_i;
    }

    inline Rational stage_bound(std::size_t k, std::size_t n) {
      mpz_class den = mpz_class(static_cast<unsigned long>(k * k)) << static_cast<mp_bitcnt_t>(n);
      return Rational(mpz_class(1), den);
    }

    // Forbidden region of side A (with_own = false) or B (with_own = true)
    // at stage index s, from the recorded stages.
    inline Forbidden forbidden_region(std::vector<StageRecord> const& stages, std::size_t s,
                                      bool side_B, std::size_t k, std::int64_t R) {
      Forbidden f{Bitmap(-R, static_cast<std::size_t>(2 * R + 1)), 0, 0};
      StageRecord const& cur = stages[s];
      for (std::size_t i = 0; i <= s; ++i) {
        StageRecord const& st = stages[i];
        if (side_B) {
          add_shifted(f.bits, R, cur.K, st.K, st.A.set, st.A.eval, st.bound, k, f);
        } else if (i < s) {
          add_shifted(f.bits, R, cur.K, st.K, st.B.set, st.B.eval, st.bound, k, f);
        }
      }
      return f;
    }

  }  // namespace detail

  //! Runs N stages. Throws PreconditionFailed when the horizon is too small
  //! or a stage's forbidden region is too dense for a witness; every stage
  //! is verified before the result is returned.
  inline PartitionResult build_meager_partition(std::size_t k, std::size_t N,
                                                WindowDensity const& mu,
                                                RadiusSchedule const& schedule = {}) {
    if (k == 0) {
      throw std::invalid_argument("k must be positive");
    }
    RadiusSchedule sched = schedule ? schedule : default_schedule(k);
    PartitionResult res;
    res.k              = k;
    res.L              = mu.probe();
    res.policy         = mu.policy();
    std::int64_t const R = res.policy.inner_radius();
    auto const         Ks = enumerate_k_subsets(k, N, sched);

    std::vector<Elem> A;
    for (std::size_t s = 0; s < N; ++s) {
      std::size_t const n = s + 1;
      StageRecord       st;
      st.n     = n;
      st.K     = Ks[s];
      st.bound = detail::stage_bound(k, n);
      if (radius(st.K) > res.policy.margin) {
        throw PreconditionFailed("K_" + std::to_string(n) + " leaves the margin ball");
      }
      res.stages.push_back(st);

      for (bool side_B : {false, true}) {
        StageRecord& cur = res.stages.back();
        StageSide&   out = side_B ? cur.B : cur.A;
        auto         f   = detail::forbidden_region(res.stages, s, side_B, k, R);
        FiniteSet    forbidden = f.bits.to_set();
        out.forbidden_size     = forbidden.size();
        out.forbidden_eval     = mu.eval(forbidden);
        out.subadditive_sum    = f.subadditive_sum;
        out.bound_sum          = f.bound_sum;
        try {
          SyndeticWitnessZ w = syndetic_witness_Z(mu, forbidden, cur.bound);
          out.set            = std::move(w.B);
          out.witness        = std::move(w.witness);
          out.E_len          = static_cast<std::int64_t>(w.net.E.size());
          out.eval           = w.density;
        } catch (PreconditionFailed const& e) {
          throw PreconditionFailed("stage " + std::to_string(n) + (side_B ? " B" : " A")
                                   + ": forbidden region density "
                                   + to_string(out.forbidden_eval) + ": " + e.what());
        }
      }
      for (Elem kappa : res.stages.back().K) {
        for (Elem a : res.stages.back().A.set) {
          A.push_back(a + kappa);
        }
      }
    }
    res.A = FiniteSet(std::move(A));
    return res;
  }

  //! Plans the policy and probe length for (k, N, horizon) and builds.
  inline PartitionResult build_meager_partition(std::size_t k, std::size_t N,
                                                std::int64_t horizon,
                                                std::optional<std::int64_t> margin = std::nullopt) {
    PartitionPlan p = plan_partition(k, N, horizon, margin);
    WindowDensity mu(WindowedGroup(1, horizon), p.L, p.policy);
    return build_meager_partition(k, N, mu);
  }

  ////////////////////////////////////////////////////////////////////////
  // Verification
  ////////////////////////////////////////////////////////////////////////

  struct MeagernessCertificate {
    enum class Side { A_side, complement };

    std::size_t stage = 0;
    //! K = K_n^-1.
    FiniteSet K;
    Side      side = Side::A_side;
    //! A_side: B_n, disjoint from KA. complement: A_n, disjoint from
    //! K(X \ A), i.e. K_n A_n inside A.
    FiniteSet                   guard;
    LargenessWitness            witness;
    std::optional<std::int64_t> gap_bound;
  };

  inline char const* to_string(MeagernessCertificate::Side s) noexcept {
    return s == MeagernessCertificate::Side::A_side ? "A-side" : "complement";
  }

  class VerificationFailed : public Error {
   public:
    VerificationFailed(std::size_t stage, std::string predicate)
        : Error("stage " + std::to_string(stage) + ": " + predicate),
          _stage(stage),
          _predicate(std::move(predicate)) {}

    std::size_t stage() const noexcept {
      return _stage;
    }

    std::string const& predicate() const noexcept {
      return _predicate;
    }

   private:
    std::size_t _stage;
    std::string _predicate;
  };

  namespace detail {

    // Window density by prefix sums over a bitmap of the inner window, kept
    // separate from the construction's two-pointer scan.
    inline Rational density_by_prefix(FiniteSet const& S, std::int64_t L, std::int64_t R) {
      std::vector<std::int64_t> prefix(static_cast<std::size_t>(2 * R + 2), 0);
      for (Elem x : S) {
        if (x >= -R && x <= R) {
          prefix[static_cast<std::size_t>(x + R + 1)] = 1;
        }
      }
      for (std::size_t i = 1; i < prefix.size(); ++i) {
        prefix[i] += prefix[i - 1];
      }
      std::int64_t best = 0;
      for (std::int64_t x = -R; x + L - 1 <= R; ++x) {
        auto lo = static_cast<std::size_t>(x + R);
        best    = std::max(best, prefix[lo + static_cast<std::size_t>(L)] - prefix[lo]);
      }
      return make_rational(best, L);
    }

  }  // namespace detail

  //! Re-derives every stage invariant, the ledger and the 2N meagerness
  //! certificates from the stored result alone. Throws VerificationFailed
  //! naming the stage and predicate on the first failure.
  inline std::vector<MeagernessCertificate> verify_meagerness(PartitionResult const& res) {
    using Side                = MeagernessCertificate::Side;
    std::int64_t const R      = res.policy.inner_radius();
    std::int64_t const H      = res.policy.horizon;
    WindowedGroup const G(1, H);
    std::size_t const k = res.k;
    auto fail = [](std::size_t n, std::string what) { throw VerificationFailed(n, std::move(what)); };

    if (!res.A.empty() && (res.A.front() < -H || res.A.back() > H)) {
      fail(0, "A leaves the horizon");
    }
    auto const Ks = enumerate_k_subsets(k, res.stages.size());
    detail::Bitmap inA(-H, static_cast<std::size_t>(2 * H + 1), res.A);
    detail::Bitmap inKB(-H, static_cast<std::size_t>(2 * H + 1));
    std::vector<MeagernessCertificate> certs;

    for (std::size_t s = 0; s < res.stages.size(); ++s) {
      StageRecord const& st = res.stages[s];
      std::size_t const  n  = st.n;
      if (n != s + 1) {
        fail(n, "stage index out of sequence");
      }
      if (st.K != Ks[s] || st.K.size() != k) {
        fail(n, "K_n is not the n-th k-subset");
      }
      if (st.bound != detail::stage_bound(k, n)) {
        fail(n, "bound is not 1/(k^2 2^n)");
      }
      for (bool side_B : {false, true}) {
        StageSide const& sd   = side_B ? st.B : st.A;
        std::string      name = side_B ? "B_n" : "A_n";
        auto             f    = detail::forbidden_region(res.stages, s, side_B, k, R);
        for (Elem x : sd.set) {
          if (x < -R || x > R) {
            fail(n, name + " leaves the inner window");
          }
          if (f.bits.test(x)) {
            fail(n, name + " meets its forbidden region at " + std::to_string(x));
          }
        }
        Rational ev = detail::density_by_prefix(sd.set, res.L, R);
        if (ev != sd.eval) {
          fail(n, "recorded eval(" + name + ") does not match a rescan");
        }
        if (ev >= st.bound) {
          fail(n, "eval(" + name + ") = " + to_string(ev) + " is not below " + to_string(st.bound));
        }
        if (!replay(G, res.policy, sd.set, sd.witness)) {
          fail(n, "largeness witness of " + name + " does not replay");
        }
        FiniteSet forbidden = f.bits.to_set();
        Rational  fe        = detail::density_by_prefix(forbidden, res.L, R);
        if (forbidden.size() != sd.forbidden_size || fe != sd.forbidden_eval) {
          fail(n, "forbidden region of " + name + " does not match the record");
        }
        if (f.subadditive_sum != sd.subadditive_sum || f.bound_sum != sd.bound_sum) {
          fail(n, "ledger sums of " + name + " do not match a recount");
        }
        if (!(fe <= f.subadditive_sum && f.subadditive_sum <= f.bound_sum && f.bound_sum < 1)) {
          fail(n, "ledger chain eval <= sum |K_n^-1 K_i| eval <= sum k^2 eps_i < 1 fails for "
                      + name);
        }
      }
      for (Elem kappa : st.K) {
        for (Elem b : st.B.set) {
          inKB.set(b + kappa);
        }
      }
    }

    for (std::size_t s = 0; s < res.stages.size(); ++s) {
      StageRecord const& st = res.stages[s];
      FiniteSet          K  = inverse_set(G, st.K);
      // A-side: B_n misses K A, i.e. K_n B_n misses A
      for (Elem b : st.B.set) {
        for (Elem kappa : st.K) {
          if (inA.test(b + kappa)) {
            fail(st.n, "A-side: B_n meets K_n^-1 A at " + std::to_string(b));
          }
        }
      }
      certs.push_back({st.n, K, Side::A_side, st.B.set, st.B.witness, st.B.witness.gap_bound});
      // complement: A_n misses K (X \ A), i.e. K_n A_n inside A
      for (Elem a : st.A.set) {
        for (Elem kappa : st.K) {
          if (!inA.test(a + kappa)) {
            fail(st.n, "complement: K_n A_n leaves A at " + std::to_string(a + kappa));
          }
        }
      }
      certs.push_back(
          {st.n, K, Side::complement, st.A.set, st.A.witness, st.A.witness.gap_bound});
    }
    // every K_n B_n is outside A (the union of K_n A_n is contained in A)
    for (Elem x : res.A) {
      if (inKB.test(x)) {
        fail(0, "A meets the union of K_n B_n at " + std::to_string(x));
      }
    }
    return certs;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pullback along a homomorphism
  ////////////////////////////////////////////////////////////////////////

  struct PullbackResult {
    FiniteSet first;
    FiniteSet second;
    //! Finite source only, when k is given: k-meagerness of each piece in
    //! the source group acting on itself.
    std::optional<MeagerVerdict> first_verdict;
    std::optional<MeagerVerdict> second_verdict;
  };

  //! Preimages of a partition (P, Q) of the target universe.
  inline PullbackResult pullback(GroupHom const& h, FiniteSet const& P, FiniteSet const& Q,
                                 std::optional<std::size_t> k = std::nullopt,
                                 std::uint64_t budget = default_budget) {
    FiniteSet target = h.target_universe();
    if (!are_disjoint(P, Q) || set_union(P, Q) != target) {
      throw std::invalid_argument("the two sets do not partition the target");
    }
    PullbackResult r;
    r.first  = h.preimage(P);
    r.second = h.preimage(Q);
    if (!are_disjoint(r.first, r.second) || set_union(r.first, r.second) != h.source_universe()) {
      throw std::logic_error("preimages do not partition the source");
    }
    if (k && h.is_finite()) {
      GSpace X         = GSpace::regular(h.finite_repr().source);
      r.first_verdict  = is_k_meager(X, r.first, *k, budget);
      r.second_verdict = is_k_meager(X, r.second, *k, budget);
    }
    return r;
  }

}  // namespace syndetic

#endif  // SYNDETIC_PARTITION_HPP_
