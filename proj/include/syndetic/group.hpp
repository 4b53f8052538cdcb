#ifndef SYNDETIC_GROUP_HPP_
#define SYNDETIC_GROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"
#include "finite_set.hpp"

namespace syndetic {

  //! One violated group axiom, with the elements that witness it.
  struct Violation {
    enum class Kind {
      out_of_range,
      non_latin_row,
      non_latin_column,
      no_identity,
      no_inverse,
      non_associative
    };
    Kind              kind;
    std::vector<Elem> witness;
    std::string       message;
  };

  inline char const* to_string(Violation::Kind k) noexcept {
    switch (k) {
      case Violation::Kind::out_of_range:
        return "out-of-range";
      case Violation::Kind::non_latin_row:
        return "non-latin-row";
      case Violation::Kind::non_latin_column:
        return "non-latin-column";
      case Violation::Kind::no_identity:
        return "no-identity";
      case Violation::Kind::no_inverse:
        return "no-inverse";
      default:
        return "non-associative";
    }
  }

  struct ValidationReport {
    std::vector<Violation> violations;
    //! True when associativity was sampled rather than checked exhaustively.
    bool sampled_associativity = false;

    bool valid() const noexcept {
      return violations.empty();
    }
  };

  //! Tables up to this order get an exhaustive associativity scan.
  inline constexpr std::size_t exhaustive_associativity_limit = 64;

  //! Checks the group axioms on a square multiplication table. Throws
  //! std::invalid_argument for a non-square or empty table.
  inline ValidationReport
  validate_group(std::vector<std::vector<Elem>> const& table) {
    std::size_t const n = table.size();
    if (n == 0) {
      throw std::invalid_argument("empty multiplication table");
    }
    for (auto const& row : table) {
      if (row.size() != n) {
        throw std::invalid_argument("multiplication table is not square");
      }
    }
    ValidationReport report;
    auto             add = [&report](Violation::Kind k, std::vector<Elem> w,
                            std::string msg) {
      report.violations.push_back({k, std::move(w), std::move(msg)});
    };

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Elem v = table[i][j];
        if (v < 0 || static_cast<std::size_t>(v) >= n) {
          add(Violation::Kind::out_of_range,
              {static_cast<Elem>(i), static_cast<Elem>(j), v},
              "entry (" + std::to_string(i) + "," + std::to_string(j)
                  + ") out of range");
          return report;
        }
      }
    }

    std::vector<std::size_t> seen(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t j = 0; j < n; ++j) {
        auto v = static_cast<std::size_t>(table[i][j]);
        if (seen[v]++ == 1) {
          add(Violation::Kind::non_latin_row,
              {static_cast<Elem>(i), static_cast<Elem>(v)},
              "row " + std::to_string(i) + " repeats " + std::to_string(v));
          break;
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::size_t>(table[i][j]);
        if (seen[v]++ == 1) {
          add(Violation::Kind::non_latin_column,
              {static_cast<Elem>(j), static_cast<Elem>(v)},
              "column " + std::to_string(j) + " repeats " + std::to_string(v));
          break;
        }
      }
    }

    Elem identity = -1;
    for (std::size_t e = 0; e < n && identity < 0; ++e) {
      bool ok = true;
      for (std::size_t g = 0; g < n && ok; ++g) {
        ok = table[e][g] == static_cast<Elem>(g)
             && table[g][e] == static_cast<Elem>(g);
      }
      if (ok) {
        identity = static_cast<Elem>(e);
      }
    }
    if (identity < 0) {
      add(Violation::Kind::no_identity, {}, "no two-sided identity");
    } else {
      for (std::size_t g = 0; g < n; ++g) {
        bool found = false;
        for (std::size_t h = 0; h < n && !found; ++h) {
          found = table[g][h] == identity && table[h][g] == identity;
        }
        if (!found) {
          add(Violation::Kind::no_inverse, {static_cast<Elem>(g)},
              "element " + std::to_string(g) + " has no two-sided inverse");
        }
      }
    }

    auto mul = [&table](Elem a, Elem b) {
      return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    };
    auto check = [&](Elem g, Elem h, Elem k) {
      if (mul(mul(g, h), k) != mul(g, mul(h, k))) {
        add(Violation::Kind::non_associative, {g, h, k},
            "(" + std::to_string(g) + "*" + std::to_string(h) + ")*"
                + std::to_string(k) + " != " + std::to_string(g) + "*("
                + std::to_string(h) + "*" + std::to_string(k) + ")");
        return false;
      }
      return true;
    };
    auto const N = static_cast<Elem>(n);
    if (n <= exhaustive_associativity_limit) {
      for (Elem g = 0; g < N; ++g) {
        for (Elem h = 0; h < N; ++h) {
          for (Elem k = 0; k < N; ++k) {
            if (!check(g, h, k)) {
              return report;
            }
          }
        }
      }
    } else {
      report.sampled_associativity = true;
      std::mt19937_64                     rng(0x5eed5eedULL + n);
      std::uniform_int_distribution<Elem> pick(0, N - 1);
      for (std::size_t t = 0; t < 10 * n; ++t) {
        Elem g = pick(rng), h = pick(rng), k = pick(rng);
        if (!check(g, h, k)) {
          break;
        }
      }
    }
    return report;
  }

  class InvalidGroup : public Error {
   public:
    InvalidGroup(ValidationReport r)
        : Error("invalid group table: "
                + (r.violations.empty() ? std::string("?")
                                        : r.violations.front().message)),
          report(std::move(r)) {}
    ValidationReport report;
  };

  //! A finite group given by its Cayley table on ids 0..order-1.
  class FiniteGroup {
   public:
    //! Validates the table and throws InvalidGroup on any violation.
    static FiniteGroup from_table(std::vector<std::vector<Elem>> const& table) {
      ValidationReport r = validate_group(table);
      if (!r.valid()) {
        throw InvalidGroup(std::move(r));
      }
      FiniteGroup  g;
      std::size_t n = table.size();
      g._order      = n;
      g._mul.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          g._mul[i * n + j] = static_cast<std::uint32_t>(table[i][j]);
        }
      }
      g.finish();
      return g;
    }

    std::size_t order() const noexcept {
      return _order;
    }

    Elem identity() const noexcept {
      return _identity;
    }

    Elem mul(Elem a, Elem b) const noexcept {
      return _mul[static_cast<std::size_t>(a) * _order
                  + static_cast<std::size_t>(b)];
    }

    Elem inv(Elem a) const noexcept {
      return _inv[static_cast<std::size_t>(a)];
    }

    //! Left regular action, so a group is a G-space over itself.
    Elem act(Elem g, Elem x) const noexcept {
      return mul(g, x);
    }

    bool contains(Elem a) const noexcept {
      return a >= 0 && static_cast<std::size_t>(a) < _order;
    }

    FiniteSet elements() const {
      return FiniteSet::interval(0, static_cast<Elem>(_order) - 1);
    }

    //! Smallest k >= 1 with a^k = identity.
    std::size_t element_order(Elem a) const {
      std::size_t k = 1;
      for (Elem x = a; x != _identity; x = mul(x, a)) {
        ++k;
      }
      return k;
    }

    std::vector<std::vector<Elem>> table() const {
      std::vector<std::vector<Elem>> t(_order, std::vector<Elem>(_order));
      for (std::size_t i = 0; i < _order; ++i) {
        for (std::size_t j = 0; j < _order; ++j) {
          t[i][j] = _mul[i * _order + j];
        }
      }
      return t;
    }

    //! Canonical greedy order: ascending id.
    std::vector<Elem> canonical_order(FiniteSet const& s) const {
      return s.members();
    }

    friend bool operator==(FiniteGroup const& a, FiniteGroup const& b) {
      return a._mul == b._mul;
    }

   private:
    template <typename Mul>
    friend FiniteGroup make_group_unchecked(std::size_t n, Mul&& mul);

    void finish() {
      std::size_t n = _order;
      for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g) {
          ok = _mul[e * n + g] == g;
        }
        if (ok) {
          _identity = static_cast<Elem>(e);
          break;
        }
      }
      _inv.assign(n, 0);
      for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
          if (_mul[g * n + h] == static_cast<std::uint32_t>(_identity)) {
            _inv[g] = static_cast<Elem>(h);
            break;
          }
        }
      }
    }

    std::size_t                _order    = 0;
    Elem                       _identity = 0;
    std::vector<std::uint32_t> _mul;
    std::vector<Elem>          _inv;
  };

  // Builds a group from a multiplication rule known to satisfy the axioms.
  template <typename Mul>
  FiniteGroup make_group_unchecked(std::size_t n, Mul&& mul) {
    FiniteGroup g;
    g._order = n;
    g._mul.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        g._mul[i * n + j] = static_cast<std::uint32_t>(
            mul(static_cast<Elem>(i), static_cast<Elem>(j)));
      }
    }
    g.finish();
    return g;
  }

  inline constexpr std::size_t default_max_order = 4096;

  //! Z_n with addition mod n.
  inline FiniteGroup cyclic(std::size_t n) {
    if (n == 0) {
      throw std::invalid_argument("cyclic group of order 0");
    }
    if (n > default_max_order) {
      throw Error("cyclic(" + std::to_string(n) + ") exceeds max order");
    }
    auto N = static_cast<Elem>(n);
    return make_group_unchecked(n, [N](Elem a, Elem b) { return (a + b) % N; });
  }

  //! Direct product; the pair (g, h) gets id g * |H| + h.
  inline FiniteGroup product(FiniteGroup const& G,
                             FiniteGroup const& H,
                             std::size_t        max_order = default_max_order) {
    std::size_t n = G.order() * H.order();
    if (n > max_order) {
      throw Error("product order " + std::to_string(n) + " exceeds max order "
                  + std::to_string(max_order));
    }
    auto m = static_cast<Elem>(H.order());
    return make_group_unchecked(n, [&](Elem a, Elem b) {
      return G.mul(a / m, b / m) * m + H.mul(a % m, b % m);
    });
  }

  //! Dihedral group of order 2n. The element r^k s^e has id e * n + k, with
  //! s r s = r^-1.
  inline FiniteGroup dihedral(std::size_t n) {
    if (n == 0) {
      throw std::invalid_argument("dihedral group with n = 0");
    }
    auto N = static_cast<Elem>(n);
    return make_group_unchecked(2 * n, [N](Elem a, Elem b) {
      Elem sa = a / N, ka = a % N, sb = b / N, kb = b % N;
      // (r^ka s^sa)(r^kb s^sb) = r^(ka + (-1)^sa kb) s^(sa+sb)
      Elem k = sa == 0 ? ka + kb : ka - kb;
      k      = ((k % N) + N) % N;
      return ((sa + sb) % 2) * N + k;
    });
  }

  //! Quaternion group Q8 on ids {1, i, j, k, -1, -i, -j, -k} = 0..7.
  inline FiniteGroup quaternion() {
    // unit index u in {0:1, 1:i, 2:j, 3:k}, sign bit s
    static constexpr int unit_mul[4][4]  = {{0, 1, 2, 3},
                                                {1, 0, 3, 2},
                                                {2, 3, 0, 1},
                                                {3, 2, 1, 0}};
    static constexpr int sign_mul[4][4]  = {{0, 0, 0, 0},
                                                {0, 1, 0, 1},
                                                {0, 1, 1, 0},
                                                {0, 0, 1, 1}};
    return make_group_unchecked(8, [](Elem a, Elem b) {
      int ua = static_cast<int>(a % 4), ub = static_cast<int>(b % 4);
      int s  = static_cast<int>(a / 4 + b / 4) + sign_mul[ua][ub];
      return static_cast<Elem>((s % 2) * 4 + unit_mul[ua][ub]);
    });
  }

  inline bool is_subgroup(FiniteGroup const& G, FiniteSet const& H) {
    if (H.empty() || !G.contains(H.front()) || !G.contains(H.back())) {
      return false;
    }
    if (!H.contains(G.identity())) {
      return false;
    }
    for (Elem a : H) {
      if (!H.contains(G.inv(a))) {
        return false;
      }
      for (Elem b : H) {
        if (!H.contains(G.mul(a, b))) {
          return false;
        }
      }
    }
    return true;
  }

  inline bool is_normal_subgroup(FiniteGroup const& G, FiniteSet const& H) {
    if (!is_subgroup(G, H)) {
      return false;
    }
    for (Elem x : G.elements()) {
      for (Elem h : H) {
        if (!H.contains(G.mul(G.mul(x, h), G.inv(x)))) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace syndetic

#endif  // SYNDETIC_GROUP_HPP_
