#ifndef SYNDETIC_GSPACE_HPP_
#define SYNDETIC_GSPACE_HPP_

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "finite_set.hpp"
#include "group.hpp"
#include "windowed.hpp"

namespace syndetic {

  //! A left action of a finite group on the points 0..size-1.
  class GSpace {
   public:
    //! Validates action(identity, x) = x and action(gh, x) = action(g,
    //! action(h, x)); `action[g][x]` is the image of point x under g.
    GSpace(std::shared_ptr<FiniteGroup const>   group,
           std::size_t                          points,
           std::vector<std::vector<Elem>> const& action)
        : _group(std::move(group)), _points(points) {
      std::size_t n = _group->order();
      if (points == 0) {
        throw std::invalid_argument("G-space needs at least one point");
      }
      if (action.size() != n) {
        throw std::invalid_argument("action table needs one row per element");
      }
      _act.resize(n * points);
      for (std::size_t g = 0; g < n; ++g) {
        if (action[g].size() != points) {
          throw std::invalid_argument("action row " + std::to_string(g)
                                      + " has wrong length");
        }
        for (std::size_t x = 0; x < points; ++x) {
          Elem y = action[g][x];
          if (y < 0 || static_cast<std::size_t>(y) >= points) {
            throw std::invalid_argument("action entry out of range");
          }
          _act[g * points + x] = static_cast<std::uint32_t>(y);
        }
      }
      FiniteGroup const& G = *_group;
      for (std::size_t x = 0; x < points; ++x) {
        if (act(G.identity(), static_cast<Elem>(x)) != static_cast<Elem>(x)) {
          throw std::invalid_argument("identity moves point "
                                      + std::to_string(x));
        }
      }
      for (Elem g = 0; g < static_cast<Elem>(n); ++g) {
        for (Elem h = 0; h < static_cast<Elem>(n); ++h) {
          for (Elem x = 0; x < static_cast<Elem>(points); ++x) {
            if (act(G.mul(g, h), x) != act(g, act(h, x))) {
              throw std::invalid_argument(
                  "not an action: (gh)x != g(hx) at g=" + std::to_string(g)
                  + " h=" + std::to_string(h) + " x=" + std::to_string(x));
            }
          }
        }
      }
    }

    //! The group acting on itself by left multiplication.
    static GSpace regular(std::shared_ptr<FiniteGroup const> group) {
      GSpace s;
      s._group  = std::move(group);
      std::size_t n = s._group->order();
      s._points = n;
      s._act.resize(n * n);
      for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t x = 0; x < n; ++x) {
          s._act[g * n + x] = static_cast<std::uint32_t>(
              s._group->mul(static_cast<Elem>(g), static_cast<Elem>(x)));
        }
      }
      return s;
    }

    static GSpace regular(FiniteGroup const& group) {
      return regular(std::make_shared<FiniteGroup const>(group));
    }

    FiniteGroup const& group() const noexcept {
      return *_group;
    }

    std::shared_ptr<FiniteGroup const> const& group_ptr() const noexcept {
      return _group;
    }

    std::size_t size() const noexcept {
      return _points;
    }

    Elem act(Elem g, Elem x) const noexcept {
      return _act[static_cast<std::size_t>(g) * _points
                  + static_cast<std::size_t>(x)];
    }

    bool contains(Elem x) const noexcept {
      return x >= 0 && static_cast<std::size_t>(x) < _points;
    }

    FiniteSet points() const {
      return FiniteSet::interval(0, static_cast<Elem>(_points) - 1);
    }

    detail::Bitmap bitmap(FiniteSet const& s) const {
      return detail::Bitmap(0, _points, s);
    }

    detail::Bitmap bitmap() const {
      return detail::Bitmap(0, _points);
    }

   private:
    GSpace() = default;

    std::shared_ptr<FiniteGroup const> _group;
    std::size_t                        _points = 0;
    std::vector<std::uint32_t>         _act;
  };

  //! Orbits in order of their smallest point.
  inline std::vector<FiniteSet> orbits(GSpace const& X) {
    std::vector<int>       orbit_of(X.size(), -1);
    std::vector<FiniteSet> out;
    auto                   n = static_cast<Elem>(X.group().order());
    for (Elem x = 0; x < static_cast<Elem>(X.size()); ++x) {
      if (orbit_of[static_cast<std::size_t>(x)] >= 0) {
        continue;
      }
      std::vector<Elem> orb;
      for (Elem g = 0; g < n; ++g) {
        orb.push_back(X.act(g, x));
      }
      FiniteSet o(std::move(orb));
      for (Elem y : o) {
        orbit_of[static_cast<std::size_t>(y)] = static_cast<int>(out.size());
      }
      out.push_back(std::move(o));
    }
    return out;
  }

  inline bool is_transitive(GSpace const& X) {
    return orbits(X).size() == 1;
  }

  //! FA = {f a}; for a G-space the product is the action. Windowed groups
  //! throw WindowOverflow when a product leaves the horizon.
  template <typename Space>
  FiniteSet set_product(Space const& X, FiniteSet const& F, FiniteSet const& A) {
    std::vector<Elem> out;
    out.reserve(F.size() * A.size());
    for (Elem f : F) {
      for (Elem a : A) {
        out.push_back(X.act(f, a));
      }
    }
    return FiniteSet(std::move(out));
  }

  //! gA for a single element g.
  template <typename Space>
  FiniteSet translate(Space const& X, Elem g, FiniteSet const& A) {
    return set_product(X, FiniteSet{g}, A);
  }

  //! Ag = {a g}: right translate inside a group.
  template <typename Group>
  FiniteSet right_translate(Group const& G, FiniteSet const& A, Elem g) {
    std::vector<Elem> out;
    out.reserve(A.size());
    for (Elem a : A) {
      out.push_back(G.mul(a, g));
    }
    return FiniteSet(std::move(out));
  }

  template <typename Group>
  FiniteSet inverse_set(Group const& G, FiniteSet const& A) {
    std::vector<Elem> out;
    out.reserve(A.size());
    for (Elem a : A) {
      out.push_back(G.inv(a));
    }
    return FiniteSet(std::move(out));
  }

  // X \ A for a finite space (a group or G-space).
  template <typename Space>
  FiniteSet complement(Space const& X, FiniteSet const& A) {
    return set_difference(X.points(), A);
  }

  inline FiniteSet complement(FiniteGroup const& G, FiniteSet const& A) {
    return set_difference(G.elements(), A);
  }

}  // namespace syndetic

#endif  // SYNDETIC_GSPACE_HPP_
