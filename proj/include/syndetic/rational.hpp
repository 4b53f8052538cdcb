#ifndef SYNDETIC_RATIONAL_HPP_
#define SYNDETIC_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace syndetic {

  using Rational = mpq_class;

  inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) {
      throw std::invalid_argument("rational with zero denominator");
    }
    // mpz from long is exact on LP64
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
  }

  //! Always "p/q", including integers ("1/1", "0/1").
  inline std::string to_string(Rational const& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
  }

  //! Accepts "p/q" or an integer "p".
  inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(mpz_class(s, 10));
      }
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      if (den == 0) {
        throw std::invalid_argument("zero denominator");
      }
      Rational r(num, den);
      r.canonicalize();
      return r;
    } catch (std::invalid_argument const&) {
      throw std::invalid_argument("not a rational: '" + s + "'");
    }
  }

  //! Informational only; never used in certificate comparisons.
  inline double to_double(Rational const& r) {
    return r.get_d();
  }

}  // namespace syndetic

#endif  // SYNDETIC_RATIONAL_HPP_
