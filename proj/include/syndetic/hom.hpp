#ifndef SYNDETIC_HOM_HPP_
#define SYNDETIC_HOM_HPP_

#include <memory>
#include <numeric>
#include <variant>
#include <vector>

#include "finite_set.hpp"
#include "group.hpp"
#include "windowed.hpp"

namespace syndetic {

  //! A homomorphism between finite groups (image table) or between windowed
  //! groups Z^d -> Z^e (integer matrix, e rows by d columns).
  class GroupHom {
   public:
    struct Finite {
      std::shared_ptr<FiniteGroup const> source;
      std::shared_ptr<FiniteGroup const> target;
      std::vector<Elem>                  images;
    };

    struct Linear {
      WindowedGroup                          source;
      WindowedGroup                          target;
      std::vector<std::vector<std::int64_t>> matrix;
    };

    //! Checks h(gg') = h(g)h(g') on all pairs.
    static GroupHom finite(std::shared_ptr<FiniteGroup const> source,
                           std::shared_ptr<FiniteGroup const> target,
                           std::vector<Elem>                  images) {
      if (images.size() != source->order()) {
        throw std::invalid_argument("image table needs one entry per element");
      }
      for (Elem y : images) {
        if (!target->contains(y)) {
          throw std::invalid_argument("image outside target group");
        }
      }
      auto n = static_cast<Elem>(source->order());
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          Elem lhs = images[static_cast<std::size_t>(source->mul(a, b))];
          Elem rhs = target->mul(images[static_cast<std::size_t>(a)],
                                 images[static_cast<std::size_t>(b)]);
          if (lhs != rhs) {
            throw std::invalid_argument("not a homomorphism at ("
                                        + std::to_string(a) + ","
                                        + std::to_string(b) + ")");
          }
        }
      }
      FiniteSet image(images);
      bool      onto = image.size() == target->order();
      return GroupHom(Finite{std::move(source), std::move(target), std::move(images)},
                      onto);
    }

    //! Homomorphism property holds by linearity.
    static GroupHom linear(WindowedGroup                          source,
                           WindowedGroup                          target,
                           std::vector<std::vector<std::int64_t>> matrix) {
      if (matrix.size() != static_cast<std::size_t>(target.dim())) {
        throw std::invalid_argument("matrix needs one row per target coordinate");
      }
      for (auto const& row : matrix) {
        if (row.size() != static_cast<std::size_t>(source.dim())) {
          throw std::invalid_argument("matrix row has wrong length");
        }
      }
      bool onto = surjective_over_z(matrix, source.dim(), target.dim());
      return GroupHom(Linear{std::move(source), std::move(target), std::move(matrix)},
                      onto);
    }

    //! Z_{mn} -> Z_n, x -> c x mod n (every homomorphism between these
    //! cyclic groups has this form).
    static GroupHom cyclic_map(std::size_t mn, std::size_t n, Elem c) {
      if (n == 0 || mn % n != 0) {
        throw std::invalid_argument("target order must divide source order");
      }
      auto              src = std::make_shared<FiniteGroup const>(cyclic(mn));
      auto              tgt = std::make_shared<FiniteGroup const>(cyclic(n));
      std::vector<Elem> img(mn);
      auto              N = static_cast<Elem>(n);
      for (std::size_t x = 0; x < mn; ++x) {
        img[x] = (((c % N) + N) % N * static_cast<Elem>(x)) % N;
      }
      return finite(std::move(src), std::move(tgt), std::move(img));
    }

    bool is_finite() const noexcept {
      return std::holds_alternative<Finite>(_repr);
    }

    bool surjective() const noexcept {
      return _surjective;
    }

    Finite const& finite_repr() const {
      return std::get<Finite>(_repr);
    }

    Linear const& linear_repr() const {
      return std::get<Linear>(_repr);
    }

    //! Throws WindowOverflow if a linear image leaves the target window.
    Elem apply(Elem x) const {
      if (auto f = std::get_if<Finite>(&_repr)) {
        return f->images.at(static_cast<std::size_t>(x));
      }
      auto const& l = std::get<Linear>(_repr);
      auto        v = l.source.decode(x);
      std::vector<std::int64_t> w(static_cast<std::size_t>(l.target.dim()), 0);
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (int j = 0; j < l.source.dim(); ++j) {
          w[i] += l.matrix[i][static_cast<std::size_t>(j)]
                  * v[static_cast<std::size_t>(j)];
        }
      }
      return l.target.encode(w);
    }

    FiniteSet source_universe() const {
      if (auto f = std::get_if<Finite>(&_repr)) {
        return f->source->elements();
      }
      return std::get<Linear>(_repr).source.elements();
    }

    FiniteSet target_universe() const {
      if (auto f = std::get_if<Finite>(&_repr)) {
        return f->target->elements();
      }
      return std::get<Linear>(_repr).target.elements();
    }

    FiniteSet image(FiniteSet const& s) const {
      std::vector<Elem> out;
      out.reserve(s.size());
      for (Elem x : s) {
        out.push_back(apply(x));
      }
      return FiniteSet(std::move(out));
    }

    //! Preimage inside the source universe.
    FiniteSet preimage(FiniteSet const& s) const {
      std::vector<Elem> out;
      for (Elem x : source_universe()) {
        if (s.contains(apply(x))) {
          out.push_back(x);
        }
      }
      return FiniteSet::from_sorted(std::move(out));
    }

   private:
    GroupHom(std::variant<Finite, Linear> r, bool onto)
        : _repr(std::move(r)), _surjective(onto) {}

    // Z^d -> Z^e given by M is onto iff the gcd of the e x e minors is 1.
    static bool surjective_over_z(std::vector<std::vector<std::int64_t>> const& m,
                                  int d,
                                  int e) {
      if (e > d) {
        return false;
      }
      std::int64_t     g = 0;
      std::vector<int> cols(static_cast<std::size_t>(e));
      std::iota(cols.begin(), cols.end(), 0);
      while (true) {
        g = std::gcd(g, det(m, cols));
        int i = e - 1;
        while (i >= 0 && cols[static_cast<std::size_t>(i)] == d - e + i) {
          --i;
        }
        if (i < 0) {
          break;
        }
        ++cols[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < e; ++j) {
          cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
      return g == 1;
    }

    static std::int64_t det(std::vector<std::vector<std::int64_t>> const& m,
                            std::vector<int> const&                       cols) {
      auto at = [&](std::size_t i, std::size_t j) {
        return m[i][static_cast<std::size_t>(cols[j])];
      };
      switch (cols.size()) {
        case 1:
          return at(0, 0);
        case 2:
          return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        default:
          return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
                 - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
                 + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
      }
    }

    std::variant<Finite, Linear> _repr;
    bool                         _surjective;
  };

}  // namespace syndetic

#endif  // SYNDETIC_HOM_HPP_
