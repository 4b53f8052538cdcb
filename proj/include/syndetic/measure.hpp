#ifndef SYNDETIC_MEASURE_HPP_
#define SYNDETIC_MEASURE_HPP_

#include <map>
#include <vector>

#include "finite_set.hpp"
#include "rational.hpp"

namespace syndetic {

  //! A finitely supported probability measure with exact rational weights.
  //! Weights are positive, sum to exactly 1, and the support is exactly the
  //! set of positive-weight points.
  class FiniteMeasure {
   public:
    //! Zero weights are dropped; negative weights or a total other than 1
    //! throw std::invalid_argument.
    explicit FiniteMeasure(std::map<Elem, Rational> const& weights) {
      Rational total = 0;
      for (auto const& [x, w] : weights) {
        if (w < 0) {
          throw std::invalid_argument("negative weight at " + std::to_string(x));
        }
        if (w == 0) {
          continue;
        }
        _support.push_back(x);
        _weights.push_back(w);
        total += w;
      }
      if (total != 1) {
        throw std::invalid_argument("weights sum to " + to_string(total)
                                    + ", not 1");
      }
    }

    static FiniteMeasure dirac(Elem x) {
      return FiniteMeasure({{x, Rational(1)}});
    }

    static FiniteMeasure uniform(FiniteSet const& s) {
      if (s.empty()) {
        throw std::invalid_argument("uniform measure on the empty set");
      }
      std::map<Elem, Rational> w;
      Rational                 each(1, static_cast<unsigned long>(s.size()));
      for (Elem x : s) {
        w[x] = each;
      }
      return FiniteMeasure(w);
    }

    FiniteSet support() const {
      return FiniteSet::from_sorted(_support);
    }

    std::vector<Rational> const& weights() const noexcept {
      return _weights;
    }

    std::size_t size() const noexcept {
      return _support.size();
    }

    Elem point(std::size_t i) const {
      return _support[i];
    }

    Rational weight(Elem x) const {
      auto it = std::lower_bound(_support.begin(), _support.end(), x);
      if (it == _support.end() || *it != x) {
        return Rational(0);
      }
      return _weights[static_cast<std::size_t>(it - _support.begin())];
    }

    //! mu(S).
    Rational operator()(FiniteSet const& s) const {
      Rational total = 0;
      for (std::size_t i = 0; i < _support.size(); ++i) {
        if (s.contains(_support[i])) {
          total += _weights[i];
        }
      }
      return total;
    }

    friend bool operator==(FiniteMeasure const& a, FiniteMeasure const& b) {
      return a._support == b._support && a._weights == b._weights;
    }

   private:
    std::vector<Elem>     _support;
    std::vector<Rational> _weights;
  };

  //! (mu * nu)(z) = sum over xy = z of mu(x) nu(y).
  template <typename Group>
  FiniteMeasure convolve(Group const& G, FiniteMeasure const& mu, FiniteMeasure const& nu) {
    std::map<Elem, Rational> w;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      for (std::size_t j = 0; j < nu.size(); ++j) {
        w[G.mul(mu.point(i), nu.point(j))] += mu.weights()[i] * nu.weights()[j];
      }
    }
    return FiniteMeasure(w);
  }

  //! sum over the union of supports of |mu(x) - nu(x)| (the l1 norm).
  inline Rational tv_distance(FiniteMeasure const& mu, FiniteMeasure const& nu) {
    Rational  total = 0;
    FiniteSet both  = set_union(mu.support(), nu.support());
    for (Elem x : both) {
      Rational d = mu.weight(x) - nu.weight(x);
      total += abs(d);
    }
    return total;
  }

  //! sup over y in G of mu(Ay), for a finite group G.
  template <typename Group>
  Rational sup_right_translates(Group const& G, FiniteMeasure const& mu, FiniteSet const& A) {
    Rational best = 0;
    for (Elem y : G.elements()) {
      // mu(Ay) = sum of mu(x) over support points x with x y^-1 in A
      Rational v  = 0;
      Elem     yi = G.inv(y);
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (A.contains(G.mul(mu.point(i), yi))) {
          v += mu.weights()[i];
        }
      }
      if (v > best) {
        best = v;
      }
    }
    return best;
  }

}  // namespace syndetic

#endif  // SYNDETIC_MEASURE_HPP_
