#ifndef SYNDETIC_WINDOWED_HPP_
#define SYNDETIC_WINDOWED_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"
#include "finite_set.hpp"

namespace syndetic {

  //! Z^d restricted to the sup-norm ball of radius `horizon`.
  //!
  //! A vector v is encoded as sum_i v_i * W^(d-1-i) with W = 2H+1 (balanced
  //! digits), so the code is linear in v, the code of 0 is 0, code order is
  //! lexicographic order, and for d = 1 the code is the integer itself. Any
  //! arithmetic that would leave the ball throws WindowOverflow.
  class WindowedGroup {
   public:
    static constexpr int max_dim = 3;
    using Vec                    = std::array<std::int64_t, max_dim>;

    WindowedGroup(int dim, std::int64_t horizon) : _dim(dim), _horizon(horizon) {
      if (dim < 1 || dim > max_dim) {
        throw std::invalid_argument("windowed dimension must be 1.."
                                    + std::to_string(max_dim));
      }
      if (horizon < 1) {
        throw std::invalid_argument("horizon must be positive");
      }
      _width  = 2 * horizon + 1;
      __int128 total = 1;
      for (int i = 0; i < dim; ++i) {
        total *= _width;
      }
      if (total > (static_cast<__int128>(1) << 62)) {
        throw std::invalid_argument("window too large to encode");
      }
      _max_code = static_cast<Elem>((total - 1) / 2);
    }

    int dim() const noexcept {
      return _dim;
    }

    std::int64_t horizon() const noexcept {
      return _horizon;
    }

    //! Number of elements in the window.
    std::size_t size() const noexcept {
      return static_cast<std::size_t>(2 * _max_code + 1);
    }

    Elem min_code() const noexcept {
      return -_max_code;
    }

    Elem identity() const noexcept {
      return 0;
    }

    bool contains(Elem code) const noexcept {
      return code >= -_max_code && code <= _max_code;
    }

    Elem encode(std::span<std::int64_t const> v) const {
      if (static_cast<int>(v.size()) != _dim) {
        throw std::invalid_argument("vector dimension mismatch");
      }
      Elem code = 0;
      for (int i = 0; i < _dim; ++i) {
        if (std::llabs(v[i]) > _horizon) {
          throw WindowOverflow("vector leaves the horizon "
                               + std::to_string(_horizon));
        }
        code = code * _width + v[i];
      }
      return code;
    }

    Elem encode(std::initializer_list<std::int64_t> v) const {
      return encode(std::span<std::int64_t const>(v.begin(), v.size()));
    }

    Vec decode(Elem code) const {
      Vec v{};
      for (int i = _dim - 1; i >= 0; --i) {
        std::int64_t r = code % _width;
        code /= _width;
        if (r > _horizon) {
          r -= _width;
          ++code;
        } else if (r < -_horizon) {
          r += _width;
          --code;
        }
        v[static_cast<std::size_t>(i)] = r;
      }
      return v;
    }

    std::int64_t sup_norm(Elem code) const {
      if (_dim == 1) {
        return std::llabs(code);
      }
      Vec          v = decode(code);
      std::int64_t m = 0;
      for (int i = 0; i < _dim; ++i) {
        m = std::max<std::int64_t>(m, std::llabs(v[static_cast<std::size_t>(i)]));
      }
      return m;
    }

    //! a + b if it stays inside the ball of radius `radius`.
    std::optional<Elem> try_add(Elem a, Elem b, std::int64_t radius) const {
      if (_dim == 1) {
        Elem s = a + b;
        return std::llabs(s) <= radius ? std::optional<Elem>(s) : std::nullopt;
      }
      Vec va = decode(a), vb = decode(b);
      for (int i = 0; i < _dim; ++i) {
        auto j = static_cast<std::size_t>(i);
        if (std::llabs(va[j] + vb[j]) > radius) {
          return std::nullopt;
        }
      }
      return a + b;
    }

    Elem mul(Elem a, Elem b) const {
      auto s = try_add(a, b, _horizon);
      if (!s) {
        throw WindowOverflow("sum leaves the horizon "
                             + std::to_string(_horizon));
      }
      return *s;
    }

    Elem inv(Elem a) const noexcept {
      return -a;
    }

    Elem act(Elem g, Elem x) const {
      return mul(g, x);
    }

    //! All codes with sup-norm <= r, ascending.
    FiniteSet ball(std::int64_t r) const {
      r = std::min(r, _horizon);
      if (_dim == 1) {
        return FiniteSet::interval(-r, r);
      }
      std::vector<Elem> out;
      Vec               v;
      v.fill(-r);
      while (true) {
        out.push_back(encode(std::span<std::int64_t const>(v.data(),
                                                           static_cast<std::size_t>(_dim))));
        int i = _dim - 1;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == r) {
          v[static_cast<std::size_t>(i)] = -r;
          --i;
        }
        if (i < 0) {
          break;
        }
        ++v[static_cast<std::size_t>(i)];
      }
      return FiniteSet::from_sorted(std::move(out));
    }

    FiniteSet elements() const {
      return ball(_horizon);
    }

    //! Center-out order: by sup-norm, then by code. Greedy constructions use
    //! this so that their restriction to a ball does not depend on how far
    //! the window extends.
    std::vector<Elem> canonical_order(FiniteSet const& s) const {
      std::vector<std::pair<std::int64_t, Elem>> keyed;
      keyed.reserve(s.size());
      for (Elem x : s) {
        keyed.emplace_back(sup_norm(x), x);
      }
      std::sort(keyed.begin(), keyed.end());
      std::vector<Elem> out;
      out.reserve(keyed.size());
      for (auto const& kv : keyed) {
        out.push_back(kv.second);
      }
      return out;
    }

    detail::Bitmap bitmap(FiniteSet const& s) const {
      return detail::Bitmap(min_code(), size(), s);
    }

    detail::Bitmap bitmap() const {
      return detail::Bitmap(min_code(), size());
    }

    friend bool operator==(WindowedGroup const& a, WindowedGroup const& b) {
      return a._dim == b._dim && a._horizon == b._horizon;
    }

   private:
    int          _dim;
    std::int64_t _horizon;
    std::int64_t _width;
    Elem         _max_code;
  };

  //! Finite-horizon semantics for infinite-group notions: patterns and
  //! translates are drawn from the ball of radius `margin`, coverage and
  //! placements target the inner window of radius horizon - margin.
  struct HorizonPolicy {
    std::int64_t horizon = 0;
    std::int64_t margin  = 0;

    HorizonPolicy() = default;

    HorizonPolicy(std::int64_t h, std::int64_t r) : horizon(h), margin(r) {
      if (h < 1 || r < 0 || r >= h) {
        throw std::invalid_argument("horizon policy needs 0 <= margin < horizon");
      }
    }

    std::int64_t inner_radius() const noexcept {
      return horizon - margin;
    }

    //! Number of integers in the inner window of Z.
    std::int64_t inner_length() const noexcept {
      return 2 * inner_radius() + 1;
    }

    void check(WindowedGroup const& g) const {
      if (g.horizon() != horizon) {
        throw std::invalid_argument("policy horizon " + std::to_string(horizon)
                                    + " does not match group horizon "
                                    + std::to_string(g.horizon()));
      }
    }

    friend bool operator==(HorizonPolicy const&, HorizonPolicy const&) = default;
  };

  inline FiniteSet inner_window(WindowedGroup const& g, HorizonPolicy const& p) {
    p.check(g);
    return g.ball(p.inner_radius());
  }

}  // namespace syndetic

#endif  // SYNDETIC_WINDOWED_HPP_
