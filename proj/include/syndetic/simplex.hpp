#ifndef SYNDETIC_SIMPLEX_HPP_
#define SYNDETIC_SIMPLEX_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace syndetic {

  //! Optimal primal/dual pair of the 0/1 packing program
  //!
  //!   max sum_j u_j   s.t.  sum_j P[i][j] u_j <= 1 (every i),  u >= 0
  //!   min sum_i w_i   s.t.  sum_i P[i][j] w_i >= 1 (every j),  w >= 0
  //!
  //! with equal objectives.
  struct PackingSolution {
    std::vector<Rational> primal;
    std::vector<Rational> dual;
    Rational              objective;
    std::size_t           pivots = 0;
  };

  namespace detail {

    inline bool packing_feasible(std::vector<std::vector<char>> const& P,
                                 PackingSolution const&               s) {
      std::size_t const m = P.size(), n = s.primal.size();
      Rational          pu = 0, dw = 0;
      for (Rational const& u : s.primal) {
        if (u < 0) {
          return false;
        }
        pu += u;
      }
      for (Rational const& w : s.dual) {
        if (w < 0) {
          return false;
        }
        dw += w;
      }
      for (std::size_t i = 0; i < m; ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (P[i][j]) {
            row += s.primal[j];
          }
        }
        if (row > 1) {
          return false;
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rational col = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (P[i][j]) {
            col += s.dual[i];
          }
        }
        if (col < 1) {
          return false;
        }
      }
      return pu == dw && pu == s.objective;
    }

  }  // namespace detail

  //! Dense exact simplex with Bland's rule, started from the slack basis.
  //! Every column of P must contain a 1 (otherwise the program is
  //! unbounded). The returned pair is checked for feasibility and equal
  //! objectives before it is returned.
  inline PackingSolution solve_packing(std::vector<std::vector<char>> const& P) {
    std::size_t const m = P.size();
    if (m == 0) {
      throw std::invalid_argument("packing program needs at least one row");
    }
    std::size_t const n = P.front().size();
    for (auto const& row : P) {
      if (row.size() != n) {
        throw std::invalid_argument("ragged packing matrix");
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < m && !any; ++i) {
        any = P[i][j] != 0;
      }
      if (!any) {
        throw std::invalid_argument("packing column " + std::to_string(j)
                                    + " is empty; program unbounded");
      }
    }

    // columns 0..n-1 decision, n..n+m-1 slack, last is the right-hand side;
    // obj holds z_j - c_j, so optimality is obj >= 0
    std::size_t const                  width = n + m + 1;
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(width));
    std::vector<Rational>              obj(width);
    std::vector<std::size_t>           basis(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        T[i][j] = P[i][j] ? 1 : 0;
      }
      T[i][n + i]     = 1;
      T[i][width - 1] = 1;
      basis[i]        = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) {
      obj[j] = -1;
    }

    PackingSolution s;
    while (true) {
      std::size_t enter = width;
      for (std::size_t j = 0; j + 1 < width; ++j) {
        if (sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width) {
        break;
      }
      std::size_t leave = m;
      Rational    best_ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(T[i][enter]) <= 0) {
          continue;
        }
        Rational ratio = T[i][width - 1] / T[i][enter];
        if (leave == m || ratio < best_ratio
            || (ratio == best_ratio && basis[i] < basis[leave])) {
          leave      = i;
          best_ratio = ratio;
        }
      }
      if (leave == m) {
        throw std::logic_error("packing program unbounded");
      }
      Rational pivot = T[leave][enter];
      for (Rational& x : T[leave]) {
        x /= pivot;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave || sgn(T[i][enter]) == 0) {
          continue;
        }
        Rational f = T[i][enter];
        for (std::size_t j = 0; j < width; ++j) {
          if (sgn(T[leave][j]) != 0) {
            T[i][j] -= f * T[leave][j];
          }
        }
      }
      if (sgn(obj[enter]) != 0) {
        Rational f = obj[enter];
        for (std::size_t j = 0; j < width; ++j) {
          if (sgn(T[leave][j]) != 0) {
            obj[j] -= f * T[leave][j];
          }
        }
      }
      basis[leave] = enter;
      ++s.pivots;
    }

    s.primal.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) {
        s.primal[basis[i]] = T[i][width - 1];
      }
    }
    s.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      s.dual[i] = obj[n + i];
    }
    s.objective = obj[width - 1];
    if (!detail::packing_feasible(P, s)) {
      throw std::logic_error("simplex produced an inconsistent primal/dual pair");
    }
    return s;
  }

}  // namespace syndetic

#endif  // SYNDETIC_SIMPLEX_HPP_
