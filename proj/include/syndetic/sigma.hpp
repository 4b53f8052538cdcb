#ifndef SYNDETIC_SIGMA_HPP_
#define SYNDETIC_SIGMA_HPP_

// The translate game behind sigma_H(A) = inf over mu on H of sup over y in
// G of mu(Ay). The minimizer picks h in H, the maximizer picks y in G, and
// the payoff is 1 iff h is in Ay, i.e. h y^-1 is in A.

#include <map>
#include <vector>

#include "finite_set.hpp"
#include "group.hpp"
#include "measure.hpp"
#include "rational.hpp"
#include "simplex.hpp"

namespace syndetic {

  inline constexpr std::size_t sigma_exact_cap = 128;

  class SigmaTooLarge : public Error {
   public:
    using Error::Error;
  };

  struct SigmaCertificate {
    Rational value;
    //! Measure on H with sup_y measure(Ay) = value.
    FiniteMeasure measure = FiniteMeasure::dirac(0);
    //! Distribution q on G with sum_y q(y) [h in Ay] >= value for every h
    //! in H, so no measure on H does better.
    FiniteMeasure dual = FiniteMeasure::dirac(0);
  };

  struct SigmaCheck {
    bool support   = false;  // measure lives on H, dual on G
    bool primal    = false;  // sup_y measure(Ay) == value
    bool dual      = false;  // every h pays at least value against q
    bool ok() const noexcept {
      return support && primal && dual;
    }
  };

  namespace detail {

    inline bool game_hit(FiniteGroup const& G, FiniteSet const& A, Elem h, Elem y) {
      return A.contains(G.mul(h, G.inv(y)));
    }

    // Payoff of pure h against the mixed maximizer q.
    inline Rational against(FiniteGroup const& G, FiniteSet const& A,
                            FiniteMeasure const& q, Elem h) {
      Rational v = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (game_hit(G, A, h, q.point(i))) {
          v += q.weights()[i];
        }
      }
      return v;
    }

    inline void check_sigma_inputs(FiniteGroup const& G, FiniteSet const& H,
                                   FiniteSet const& A) {
      if (!is_subgroup(G, H)) {
        throw std::invalid_argument("H is not a subgroup");
      }
      if (!A.empty() && (!G.contains(A.front()) || !G.contains(A.back()))) {
        throw std::invalid_argument("set is not inside the group");
      }
    }

    // Solve the game restricted to rows ys and columns hs. Returns
    // (value, measure on hs, distribution on ys).
    struct RestrictedGame {
      Rational      value;
      FiniteMeasure measure = FiniteMeasure::dirac(0);
      FiniteMeasure dual    = FiniteMeasure::dirac(0);
    };

    inline RestrictedGame solve_restricted(FiniteGroup const&       G,
                                           FiniteSet const&         A,
                                           std::vector<Elem> const& hs,
                                           std::vector<Elem> const& ys) {
      // identical payoff rows collapse; the first y keeps the weight
      std::map<std::vector<char>, std::size_t> seen;
      std::vector<std::vector<char>>           P;
      std::vector<Elem>                        rep;
      for (Elem y : ys) {
        std::vector<char> row(hs.size());
        for (std::size_t j = 0; j < hs.size(); ++j) {
          row[j] = game_hit(G, A, hs[j], y) ? 1 : 0;
        }
        if (seen.emplace(row, P.size()).second) {
          P.push_back(std::move(row));
          rep.push_back(y);
        }
      }
      RestrictedGame r;
      // a column no row hits means some h escapes every Ay: value 0
      for (std::size_t j = 0; j < hs.size(); ++j) {
        bool any = false;
        for (auto const& row : P) {
          any = any || row[j];
        }
        if (!any) {
          r.value   = 0;
          r.measure = FiniteMeasure::dirac(hs[j]);
          r.dual    = FiniteMeasure::dirac(ys.front());
          return r;
        }
      }
      PackingSolution          s = solve_packing(P);
      std::map<Elem, Rational> mu, q;
      for (std::size_t j = 0; j < hs.size(); ++j) {
        mu[hs[j]] = s.primal[j] / s.objective;
      }
      for (std::size_t i = 0; i < rep.size(); ++i) {
        q[rep[i]] = s.dual[i] / s.objective;
      }
      r.value   = 1 / s.objective;
      r.measure = FiniteMeasure(mu);
      r.dual    = FiniteMeasure(q);
      return r;
    }

  }  // namespace detail

  //! Re-checks a certificate from scratch against every y in G and h in H.
  inline SigmaCheck check_sigma(FiniteGroup const& G, FiniteSet const& H,
                                FiniteSet const& A, SigmaCertificate const& c) {
    SigmaCheck r;
    r.support = is_subset(c.measure.support(), H)
             && is_subset(c.dual.support(), G.elements());
    r.primal = sup_right_translates(G, c.measure, A) == c.value;
    r.dual   = true;
    for (Elem h : H) {
      if (detail::against(G, A, c.dual, h) < c.value) {
        r.dual = false;
        break;
      }
    }
    return r;
  }

  //! Exact value of the game by an exact simplex. Refuses groups above
  //! sigma_exact_cap; use sigma_estimate there.
  inline SigmaCertificate solecki_sigma(FiniteGroup const& G, FiniteSet const& H,
                                        FiniteSet const& A) {
    if (G.order() > sigma_exact_cap) {
      throw SigmaTooLarge("group order " + std::to_string(G.order())
                          + " exceeds the exact cap "
                          + std::to_string(sigma_exact_cap)
                          + "; use the iterative estimator");
    }
    detail::check_sigma_inputs(G, H, A);
    SigmaCertificate c;
    if (A.empty()) {
      c.value   = 0;
      c.measure = FiniteMeasure::dirac(G.identity());
      c.dual    = FiniteMeasure::dirac(G.identity());
    } else {
      auto g = detail::solve_restricted(G, A, H.members(), G.elements().members());
      c.value   = g.value;
      c.measure = std::move(g.measure);
      c.dual    = std::move(g.dual);
    }
    if (!check_sigma(G, H, A, c).ok()) {
      throw std::logic_error("sigma certificate failed its own replay");
    }
    return c;
  }

  struct SigmaInterval {
    Rational    lo;
    Rational    hi;
    std::size_t rounds = 0;
    //! Measure on H attaining hi.
    FiniteMeasure measure = FiniteMeasure::dirac(0);
    //! Distribution on G attaining lo.
    FiniteMeasure dual = FiniteMeasure::dirac(0);
  };

  //! Brackets the game value by double oracle: solve the game on the pure
  //! strategies seen so far, then add each side's best response to the
  //! other's restricted optimum. Every restricted optimum is feasible in the
  //! full game, so lo <= value <= hi after every round; the interval closes
  //! after at most |H| + |G| rounds.
  inline SigmaInterval sigma_estimate(FiniteGroup const& G, FiniteSet const& H,
                                      FiniteSet const& A, std::size_t rounds) {
    detail::check_sigma_inputs(G, H, A);
    SigmaInterval out;
    if (A.empty()) {
      out.lo = out.hi = 0;
      out.measure     = FiniteMeasure::dirac(G.identity());
      out.dual        = FiniteMeasure::dirac(G.identity());
      return out;
    }
    std::vector<Elem> hs{H.front()};
    std::vector<Elem> ys{G.identity()};
    FiniteSet         all = G.elements();
    out.lo                = 0;
    out.hi                = 1;
    out.measure           = FiniteMeasure::dirac(H.front());
    out.dual              = FiniteMeasure::dirac(G.identity());
    while (out.rounds < rounds && out.lo < out.hi) {
      ++out.rounds;
      auto g = detail::solve_restricted(G, A, hs, ys);

      // maximizer's best reply to the restricted measure gives an upper bound
      Rational best_y_val = -1;
      Elem     best_y     = 0;
      for (Elem y : all) {
        Rational v = 0;
        for (std::size_t i = 0; i < g.measure.size(); ++i) {
          if (detail::game_hit(G, A, g.measure.point(i), y)) {
            v += g.measure.weights()[i];
          }
        }
        if (v > best_y_val) {
          best_y_val = v;
          best_y     = y;
        }
      }
      // minimizer's best reply to the restricted dual gives a lower bound
      Rational best_h_val = 2;
      Elem     best_h     = 0;
      for (Elem h : H) {
        Rational v = detail::against(G, A, g.dual, h);
        if (v < best_h_val) {
          best_h_val = v;
          best_h     = h;
        }
      }
      if (best_y_val < out.hi) {
        out.hi      = best_y_val;
        out.measure = g.measure;
      }
      if (best_h_val > out.lo) {
        out.lo   = best_h_val;
        out.dual = g.dual;
      }
      if (std::find(ys.begin(), ys.end(), best_y) == ys.end()) {
        ys.push_back(best_y);
      }
      if (std::find(hs.begin(), hs.end(), best_h) == hs.end()) {
        hs.push_back(best_h);
      }
    }
    return out;
  }

}  // namespace syndetic

#endif  // SYNDETIC_SIGMA_HPP_
