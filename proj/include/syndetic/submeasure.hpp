#ifndef SYNDETIC_SUBMEASURE_HPP_
#define SYNDETIC_SUBMEASURE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covering.hpp"
#include "finite_set.hpp"
#include "gspace.hpp"
#include "rational.hpp"
#include "setcalc.hpp"
#include "windowed.hpp"

namespace syndetic {

  //! A small large subset of the complement, or the reason there is none.
  struct SyndeticOutcome {
    enum class Status { found, precondition_failed, none };

    Status                          status = Status::none;
    std::string                     message;
    FiniteSet                       L;
    std::optional<LargenessWitness> witness;
    Rational                        value;  // eval(L) when found

    bool found() const noexcept {
      return status == Status::found;
    }
  };

  inline char const* to_string(SyndeticOutcome::Status s) noexcept {
    switch (s) {
      case SyndeticOutcome::Status::found:
        return "found";
      case SyndeticOutcome::Status::precondition_failed:
        return "precondition-failed";
      default:
        return "none";
    }
  }

  //! The submeasure contract: eval is monotone, subadditive, invariant, 0 on
  //! the empty set and 1 on the universe. check_axioms() tests a concrete
  //! instance against it.
  class SubmeasureOracle {
   public:
    virtual ~SubmeasureOracle() = default;

    virtual Rational  eval(FiniteSet const& A) const = 0;
    virtual FiniteSet universe() const              = 0;
    //! gA, restricted to wherever the oracle lives.
    virtual FiniteSet translate(Elem g, FiniteSet const& A) const = 0;
    //! Whether eval(gA) = eval(A) is claimed for this pair. Finite spaces
    //! claim it always; windowed oracles only away from the window's edge.
    virtual bool translate_in_scope(Elem g, FiniteSet const& A) const = 0;
    //! L inside the complement of A with eval(L) < eps and L large.
    virtual SyndeticOutcome syndetic_witness(FiniteSet const& A, Rational const& eps) const = 0;
    //! Re-checks the largeness part of a witness.
    virtual bool replay_large(FiniteSet const& L, LargenessWitness const& w) const = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Counting measure on a finite G-space
  ////////////////////////////////////////////////////////////////////////

  //! mu(A) = |A| / |X|.
  class CountingMeasure final : public SubmeasureOracle {
   public:
    explicit CountingMeasure(GSpace X) : _X(std::move(X)), _orbits(orbits(_X)) {}

    GSpace const& space() const noexcept {
      return _X;
    }

    bool transitive() const noexcept {
      return _orbits.size() == 1;
    }

    Rational eval(FiniteSet const& A) const override {
      std::size_t inside = 0;
      for (Elem a : A) {
        inside += _X.contains(a) ? 1 : 0;
      }
      return make_rational(static_cast<std::int64_t>(inside),
                           static_cast<std::int64_t>(_X.size()));
    }

    FiniteSet universe() const override {
      return _X.points();
    }

    FiniteSet translate(Elem g, FiniteSet const& A) const override {
      return syndetic::translate(_X, g, A);
    }

    bool translate_in_scope(Elem, FiniteSet const&) const override {
      return true;
    }

    //! Needs eps > 1/|X| and eval(A) < 1. A large L must meet every orbit,
    //! so the smallest candidate is one point per orbit outside A: on a
    //! transitive space that is a singleton. When that candidate is not
    //! below eps, none exists and the outcome says so.
    SyndeticOutcome syndetic_witness(FiniteSet const& A, Rational const& eps) const override {
      SyndeticOutcome out;
      Rational        floor(1, static_cast<unsigned long>(_X.size()));
      if (eps <= floor) {
        out.status  = SyndeticOutcome::Status::precondition_failed;
        out.message = "eps must exceed 1/|X| = " + to_string(floor);
        return out;
      }
      if (eval(A) >= 1) {
        out.status  = SyndeticOutcome::Status::precondition_failed;
        out.message = "eval(A) must be below 1";
        return out;
      }
      std::vector<Elem> pick;
      for (auto const& o : _orbits) {
        FiniteSet rest = set_difference(o, A);
        if (rest.empty()) {
          out.status  = SyndeticOutcome::Status::none;
          out.message = "A contains the orbit of " + std::to_string(o.front())
                      + "; no large set avoids A";
          return out;
        }
        pick.push_back(rest.front());
      }
      FiniteSet L(std::move(pick));
      Rational  v = eval(L);
      if (v >= eps) {
        out.status  = SyndeticOutcome::Status::none;
        out.message = "every large set avoiding A meets all "
                    + std::to_string(_orbits.size()) + " orbits, so has measure >= "
                    + to_string(v);
        return out;
      }
      out.status  = SyndeticOutcome::Status::found;
      out.L       = std::move(L);
      out.witness = detail::complement_cover(_X, out.L);
      out.value   = v;
      return out;
    }

    bool replay_large(FiniteSet const& L, LargenessWitness const& w) const override {
      return replay(_X, L, w);
    }

   private:
    GSpace                 _X;
    std::vector<FiniteSet> _orbits;
  };

  inline CountingMeasure counting_measure(GSpace const& X) {
    return CountingMeasure(X);
  }

  ////////////////////////////////////////////////////////////////////////
  // Window density on Z at finite horizon
  ////////////////////////////////////////////////////////////////////////

  //! Max over x in the inner window of |B cap [x, x + L)|, counting only
  //! members inside the inner window. Divide by L for the density.
  inline std::int64_t window_max_count(FiniteSet const& B, std::int64_t L,
                                       std::int64_t inner_radius) {
    std::int64_t const lo = -inner_radius, hi = inner_radius;
    auto first = std::lower_bound(B.begin(), B.end(), lo);
    auto last  = std::upper_bound(B.begin(), B.end(), hi);
    // the window starting at B[j] holds B[j..i]
    std::int64_t best = 0;
    auto         j    = first;
    for (auto i = first; i != last; ++i) {
      while (*i - *j >= L) {
        ++j;
      }
      best = std::max<std::int64_t>(best, i - j + 1);
    }
    return best;
  }

  struct SyndeticWitnessZ {
    FiniteSet        B;
    NetCertificate   net;
    LargenessWitness witness;
    //! eval of B at the probe length, at most 1/|E| + 1/L < eps.
    Rational     density;
    Rational     eps;
    std::int64_t L        = 0;
    std::int64_t max_gap  = 0;
  };

  //! Precondition gaps for syndetic_witness_Z, empty when all hold.
  struct WitnessZPlan {
    std::int64_t E_len = 0;
    std::string  problem;
  };

  inline WitnessZPlan plan_witness_Z(Rational const& eps, std::int64_t L) {
    WitnessZPlan p;
    if (eps <= 0 || eps > 1) {
      p.problem = "eps must lie in (0, 1]";
      return p;
    }
    mpz_class e;
    mpz_cdiv_q(e.get_mpz_t(), mpz_class(2 * eps.get_den()).get_mpz_t(),
               eps.get_num().get_mpz_t());
    if (!e.fits_slong_p()) {
      p.problem = "eps too small";
      return p;
    }
    p.E_len = e.get_si();
    if (L < 2 * p.E_len) {
      p.problem = "probe length L = " + std::to_string(L) + " must be at least 2*ceil(2/eps) = "
                + std::to_string(2 * p.E_len);
      return p;
    }
    Rational slack = Rational(1, static_cast<unsigned long>(L))
                   + Rational(1, static_cast<unsigned long>(p.E_len));
    if (eps <= slack) {
      p.problem = "eps must exceed 1/L + 1/ceil(2/eps) = " + to_string(slack);
    }
    return p;
  }

  //! eval(B) = max over x of |B cap [x, x + L)| / L, the windows placed inside
  //! the inner window of the policy. One fixed L per instance.
  class WindowDensity final : public SubmeasureOracle {
   public:
    WindowDensity(WindowedGroup G, std::int64_t L, HorizonPolicy policy)
        : _G(std::move(G)), _L(L), _policy(policy) {
      _policy.check(_G);
      if (_G.dim() != 1) {
        throw std::invalid_argument("window density is defined on Z only");
      }
      if (L < 2) {
        throw std::invalid_argument("probe length must be at least 2");
      }
      if (4 * L > _policy.inner_length()) {
        throw std::invalid_argument("probe length " + std::to_string(L)
                                    + " exceeds a quarter of the inner window ("
                                    + std::to_string(_policy.inner_length()) + ")");
      }
    }

    WindowedGroup const& group() const noexcept {
      return _G;
    }

    HorizonPolicy const& policy() const noexcept {
      return _policy;
    }

    std::int64_t probe() const noexcept {
      return _L;
    }

    Rational eval(FiniteSet const& B) const override {
      return make_rational(window_max_count(B, _L, _policy.inner_radius()), _L);
    }

    FiniteSet universe() const override {
      return inner_window(_G, _policy);
    }

    FiniteSet translate(Elem g, FiniteSet const& A) const override {
      std::vector<Elem> out;
      for (Elem a : A) {
        if (auto s = _G.try_add(g, a, _G.horizon())) {
          out.push_back(*s);
        }
      }
      return FiniteSet::from_sorted(std::move(out));
    }

    //! Every window that could hold a point of A or gA must be admissible.
    bool translate_in_scope(Elem g, FiniteSet const& A) const override {
      if (A.empty()) {
        return true;
      }
      std::int64_t const edge = _policy.inner_radius() - _L + 1;
      auto inside = [&](Elem x) { return x >= -edge && x <= edge; };
      return inside(A.front()) && inside(A.back()) && inside(A.front() + g)
          && inside(A.back() + g);
    }

    SyndeticOutcome syndetic_witness(FiniteSet const& A, Rational const& eps) const override;

    bool replay_large(FiniteSet const& L, LargenessWitness const& w) const override {
      return replay(_G, _policy, L, w);
    }

   private:
    WindowedGroup _G;
    std::int64_t  _L;
    HorizonPolicy _policy;
  };

  inline WindowDensity window_density(WindowedGroup const& G, std::int64_t L,
                                      HorizonPolicy const& policy) {
    return WindowDensity(G, L, policy);
  }

  //! A maximal E-separated net B in the inner window minus A, E = [0, |E|)
  //! with |E| = ceil(2/eps). If every length-L window holds more than two
  //! points outside A, consecutive points of B are at most L + 2|E| apart,
  //! so B + [-t, t] covers the inner window for t about half that gap, and B
  //! has window density at most 1/|E| + 1/L < eps. All of it is re-checked
  //! before returning. Throws PreconditionFailed naming the bound that
  //! fails.
  inline SyndeticWitnessZ syndetic_witness_Z(WindowDensity const& mu, FiniteSet const& A,
                                             Rational const& eps) {
    WindowedGroup const& G      = mu.group();
    HorizonPolicy const& policy = mu.policy();
    std::int64_t const   L      = mu.probe();
    WitnessZPlan         plan   = plan_witness_Z(eps, L);
    if (!plan.problem.empty()) {
      throw PreconditionFailed(plan.problem);
    }
    Rational dA      = mu.eval(A);
    Rational ceiling = 1 - make_rational(2, L);
    if (dA >= ceiling) {
      throw PreconditionFailed("window density of A is " + to_string(dA)
                               + "; it must be below 1 - 2/L = " + to_string(ceiling));
    }
    std::int64_t const e = plan.E_len;
    if (e - 1 > policy.margin) {
      throw PreconditionFailed("margin " + std::to_string(policy.margin)
                               + " is smaller than |E| - 1 = " + std::to_string(e - 1));
    }
    std::int64_t const R = policy.inner_radius();
    FiniteSet          S = set_difference(FiniteSet::interval(-R, R), A);

    SyndeticWitnessZ out;
    out.eps = eps;
    out.L   = L;
    out.net = max_E_separated(G, FiniteSet::interval(0, e - 1), S);
    out.B   = out.net.B;
    FiniteSet const& B = out.B;

    std::int64_t gap = 0;
    for (std::size_t i = 1; i < B.size(); ++i) {
      gap = std::max(gap, B[i] - B[i - 1]);
    }
    out.max_gap = gap;
    if (gap > L + 2 * e) {
      throw std::logic_error("net gap " + std::to_string(gap) + " exceeds L + 2|E|");
    }
    // gap / 2 = ceil((gap - 1) / 2): each side of a gap covers half of it
    std::int64_t t = std::max({gap / 2, B.front() + R, R - B.back()});
    if (t > policy.margin) {
      throw PreconditionFailed("largeness radius " + std::to_string(t)
                               + " exceeds the margin " + std::to_string(policy.margin));
    }
    out.witness = LargenessWitness{FiniteSet::interval(-t, t),
                                   LargenessWitness::Relation::covers_inner_window,
                                   gap};
    out.density = mu.eval(B);
    Rational limit = Rational(1, static_cast<unsigned long>(e))
                   + Rational(1, static_cast<unsigned long>(L));
    if (out.density > limit || out.density >= eps || !are_disjoint(B, A)
        || !replay(G, policy, B, out.witness)) {
      throw std::logic_error("syndetic witness failed its own replay");
    }
    return out;
  }

  inline SyndeticOutcome WindowDensity::syndetic_witness(FiniteSet const& A,
                                                         Rational const& eps) const {
    SyndeticOutcome out;
    try {
      SyndeticWitnessZ w = syndetic_witness_Z(*this, A, eps);
      out.status         = SyndeticOutcome::Status::found;
      out.L              = std::move(w.B);
      out.witness        = std::move(w.witness);
      out.value          = w.density;
    } catch (PreconditionFailed const& e) {
      out.status  = SyndeticOutcome::Status::precondition_failed;
      out.message = e.what();
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Axiom harness
  ////////////////////////////////////////////////////////////////////////

  struct AxiomSamples {
    std::vector<FiniteSet>                         sets;
    std::vector<std::pair<FiniteSet, FiniteSet>>   pairs;
    std::vector<std::pair<Elem, FiniteSet>>        translates;
    //! (A, eps) probes for syndetic_witness.
    std::vector<std::pair<FiniteSet, Rational>>    probes;
  };

  struct AxiomViolation {
    enum class Kind { empty, full, range, monotone, subadditive, invariance, syndetic };

    Kind        kind;
    FiniteSet   A;
    FiniteSet   B;
    Elem        g = 0;
    std::string message;
  };

  inline char const* to_string(AxiomViolation::Kind k) noexcept {
    using K = AxiomViolation::Kind;
    switch (k) {
      case K::empty:
        return "empty";
      case K::full:
        return "full";
      case K::range:
        return "range";
      case K::monotone:
        return "monotone";
      case K::subadditive:
        return "subadditive";
      case K::invariance:
        return "invariance";
      default:
        return "syndetic";
    }
  }

  struct AxiomReport {
    std::vector<AxiomViolation> violations;
    std::size_t                 pairs_checked      = 0;
    std::size_t                 translates_checked = 0;
    std::size_t                 translates_skipped = 0;
    std::size_t                 probes_checked     = 0;

    bool clean() const noexcept {
      return violations.empty();
    }

    bool has(AxiomViolation::Kind k) const {
      return std::any_of(violations.begin(), violations.end(),
                         [k](auto const& v) { return v.kind == k; });
    }
  };

  //! Singletons joined to every sample set, on universes up to this size;
  //! larger universes use an evenly spaced subset of this many points.
  inline constexpr std::size_t axiom_singleton_cap = 4096;

  inline AxiomReport check_axioms(SubmeasureOracle const& mu, AxiomSamples const& s) {
    using K = AxiomViolation::Kind;
    AxiomReport r;
    FiniteSet   X = mu.universe();
    auto        add = [&](K k, FiniteSet A, FiniteSet B, Elem g, std::string msg) {
      r.violations.push_back({k, std::move(A), std::move(B), g, std::move(msg)});
    };
    if (Rational v = mu.eval(FiniteSet{}); v != 0) {
      add(K::empty, {}, {}, 0, "eval(empty) = " + to_string(v));
    }
    if (Rational v = mu.eval(X); v != 1) {
      add(K::full, X, {}, 0, "eval(X) = " + to_string(v));
    }

    std::vector<std::pair<FiniteSet, FiniteSet>> pairs = s.pairs;
    std::vector<Elem>                            points;
    std::size_t stride = std::max<std::size_t>(1, X.size() / axiom_singleton_cap);
    for (std::size_t i = 0; i < X.size(); i += stride) {
      points.push_back(X[i]);
    }
    for (FiniteSet const& A : s.sets) {
      for (Elem x : points) {
        pairs.emplace_back(A, FiniteSet{x});
      }
    }
    for (auto const& [A, B] : pairs) {
      ++r.pairs_checked;
      Rational a = mu.eval(A), b = mu.eval(B);
      Rational u = mu.eval(set_union(A, B));
      for (auto const& [S, v] : {std::pair{&A, a}, std::pair{&B, b}}) {
        if (v < 0 || v > 1) {
          add(K::range, *S, {}, 0, "eval = " + to_string(v));
        }
      }
      if (u < a || u < b) {
        add(K::monotone, A, B, 0,
            "eval(A u B) = " + to_string(u) + " below a part (" + to_string(a) + ", "
                + to_string(b) + ")");
      }
      if (u > a + b) {
        add(K::subadditive, A, B, 0,
            "eval(A u B) = " + to_string(u) + " > " + to_string(a) + " + " + to_string(b));
      }
    }
    for (auto const& [g, A] : s.translates) {
      if (!mu.translate_in_scope(g, A)) {
        ++r.translates_skipped;
        continue;
      }
      ++r.translates_checked;
      Rational a = mu.eval(A), ga = mu.eval(mu.translate(g, A));
      if (a != ga) {
        add(K::invariance, A, {}, g, "eval(gA) = " + to_string(ga) + " != " + to_string(a));
      }
    }
    for (auto const& [A, eps] : s.probes) {
      ++r.probes_checked;
      SyndeticOutcome out = mu.syndetic_witness(A, eps);
      if (out.status == SyndeticOutcome::Status::precondition_failed) {
        continue;
      }
      if (!out.found()) {
        add(K::syndetic, A, {}, 0, "no witness at eps " + to_string(eps) + ": " + out.message);
        continue;
      }
      if (!are_disjoint(out.L, A) || mu.eval(out.L) >= eps || !out.witness
          || !mu.replay_large(out.L, *out.witness)) {
        add(K::syndetic, A, out.L, 0, "witness does not replay");
      }
    }
    return r;
  }

}  // namespace syndetic

#endif  // SYNDETIC_SUBMEASURE_HPP_
