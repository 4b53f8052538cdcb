#ifndef SYNDETIC_CORE_HPP_
#define SYNDETIC_CORE_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace syndetic {

  //! Dense element/point id. Finite groups use 0..order-1; windowed groups
  //! use a balanced mixed-radix code of the coordinate vector (for Z the
  //! code is the integer itself).
  using Elem = std::int64_t;

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Raised whenever a windowed computation would leave the horizon.
  class WindowOverflow : public Error {
   public:
    using Error::Error;
  };

  //! A documented precondition of an operation does not hold; the message
  //! names the violated bound.
  class PreconditionFailed : public Error {
   public:
    using Error::Error;
  };

  //! Three-valued outcome of a bounded search.
  enum class Decision { yes, no, undecided };

  inline char const* to_string(Decision d) noexcept {
    switch (d) {
      case Decision::yes:
        return "yes";
      case Decision::no:
        return "no";
      default:
        return "undecided";
    }
  }

  //! Default cap on candidate sets examined by a single classifier query.
  inline constexpr std::uint64_t default_budget = 2'000'000;

  namespace detail {
    // Saturating binomial coefficient.
    inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
      if (k > n) {
        return 0;
      }
      k = std::min(k, n - k);
      // result grows monotonically in the loop; saturate at max
      unsigned __int128 r = 1;
      for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) {
          return std::numeric_limits<std::uint64_t>::max();
        }
      }
      return static_cast<std::uint64_t>(r);
    }

    inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
      std::uint64_t r = a + b;
      return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
    }

    inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
      unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
      return r > std::numeric_limits<std::uint64_t>::max()
                 ? std::numeric_limits<std::uint64_t>::max()
                 : static_cast<std::uint64_t>(r);
    }

    // Number of nonempty subsets of size <= m of an n-set.
    inline std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t m) {
      std::uint64_t total = 0;
      for (std::uint64_t s = 1; s <= m && s <= n; ++s) {
        total = saturating_add(total, binomial(n, s));
      }
      return total;
    }
  }  // namespace detail

}  // namespace syndetic

#endif  // SYNDETIC_CORE_HPP_
