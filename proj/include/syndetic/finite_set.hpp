#ifndef SYNDETIC_FINITE_SET_HPP_
#define SYNDETIC_FINITE_SET_HPP_

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <iterator>
#include <ostream>
#include <vector>

#include "core.hpp"

namespace syndetic {

  //! A finite subset of a group or G-space, stored as a sorted duplicate-free
  //! list of ids. Set equality is list equality.
  //!
  //! The carrier is not stored; operations take the group or space they act
  //! in and check membership there.
  class FiniteSet {
   public:
    using const_iterator = std::vector<Elem>::const_iterator;

    FiniteSet() = default;

    FiniteSet(std::initializer_list<Elem> init) : _members(init) {
      normalize();
    }

    explicit FiniteSet(std::vector<Elem> members) : _members(std::move(members)) {
      normalize();
    }

    //! Adopts an already sorted, duplicate-free vector.
    static FiniteSet from_sorted(std::vector<Elem> members) {
      assert(std::adjacent_find(members.begin(), members.end(),
                                [](Elem a, Elem b) { return a >= b; })
             == members.end());
      FiniteSet s;
      s._members = std::move(members);
      return s;
    }

    //! {lo, lo+1, ..., hi}; empty when hi < lo.
    static FiniteSet interval(Elem lo, Elem hi) {
      std::vector<Elem> v;
      if (hi >= lo) {
        v.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (Elem x = lo; x <= hi; ++x) {
          v.push_back(x);
        }
      }
      return from_sorted(std::move(v));
    }

    std::vector<Elem> const& members() const noexcept {
      return _members;
    }

    std::size_t size() const noexcept {
      return _members.size();
    }

    bool empty() const noexcept {
      return _members.empty();
    }

    bool contains(Elem x) const {
      return std::binary_search(_members.begin(), _members.end(), x);
    }

    const_iterator begin() const noexcept {
      return _members.begin();
    }

    const_iterator end() const noexcept {
      return _members.end();
    }

    Elem front() const {
      return _members.front();
    }

    Elem back() const {
      return _members.back();
    }

    Elem operator[](std::size_t i) const {
      return _members[i];
    }

    friend bool operator==(FiniteSet const&, FiniteSet const&) = default;

    friend auto operator<=>(FiniteSet const& a, FiniteSet const& b) {
      return a._members <=> b._members;
    }

   private:
    void normalize() {
      std::sort(_members.begin(), _members.end());
      _members.erase(std::unique(_members.begin(), _members.end()),
                     _members.end());
    }

    std::vector<Elem> _members;
  };

  inline FiniteSet set_union(FiniteSet const& a, FiniteSet const& b) {
    std::vector<Elem> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return FiniteSet::from_sorted(std::move(out));
  }

  inline FiniteSet set_intersection(FiniteSet const& a, FiniteSet const& b) {
    std::vector<Elem> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return FiniteSet::from_sorted(std::move(out));
  }

  inline FiniteSet set_difference(FiniteSet const& a, FiniteSet const& b) {
    std::vector<Elem> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
    return FiniteSet::from_sorted(std::move(out));
  }

  inline bool is_subset(FiniteSet const& a, FiniteSet const& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  inline bool are_disjoint(FiniteSet const& a, FiniteSet const& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i == *j) {
        return false;
      }
      if (*i < *j) {
        ++i;
      } else {
        ++j;
      }
    }
    return true;
  }

  inline std::ostream& operator<<(std::ostream& os, FiniteSet const& s) {
    os << '{';
    bool first = true;
    for (Elem x : s) {
      os << (first ? "" : ", ") << x;
      first = false;
    }
    return os << '}';
  }

  namespace detail {
    // Dense membership bitmap over ids in [lo, lo + width).
    class Bitmap {
     public:
      Bitmap(Elem lo, std::size_t width) : _lo(lo), _bits(width, 0) {}

      Bitmap(Elem lo, std::size_t width, FiniteSet const& s) : Bitmap(lo, width) {
        for (Elem x : s) {
          set(x);
        }
      }

      bool in_range(Elem x) const noexcept {
        return x >= _lo && static_cast<std::size_t>(x - _lo) < _bits.size();
      }

      bool test(Elem x) const noexcept {
        return in_range(x) && _bits[static_cast<std::size_t>(x - _lo)] != 0;
      }

      void set(Elem x) {
        assert(in_range(x));
        _bits[static_cast<std::size_t>(x - _lo)] = 1;
      }

      void reset(Elem x) {
        assert(in_range(x));
        _bits[static_cast<std::size_t>(x - _lo)] = 0;
      }

      FiniteSet to_set() const {
        std::vector<Elem> v;
        for (std::size_t i = 0; i < _bits.size(); ++i) {
          if (_bits[i]) {
            v.push_back(_lo + static_cast<Elem>(i));
          }
        }
        return FiniteSet::from_sorted(std::move(v));
      }

     private:
      Elem                      _lo;
      std::vector<std::uint8_t> _bits;
    };
  }  // namespace detail

}  // namespace syndetic

#endif  // SYNDETIC_FINITE_SET_HPP_
