#ifndef SYNDETIC_IO_HPP_
#define SYNDETIC_IO_HPP_

// Input formats.
//
// Group files are a small TOML subset: `key = value` lines, values being
// integers, "strings", booleans or (nested, possibly multi-line) arrays,
// with # comments. Recognized kinds:
//
//   kind = "cyclic"      n = 12
//   kind = "product"     factors = [2, 3]  or  ["a.toml", "b.toml"]
//   kind = "table"       table = [[0, 1], [1, 0]]
//   kind = "dihedral"    n = 4
//   kind = "quaternion"
//   kind = "windowed-Z"  d = 1  horizon = 1000  (margin = 10 optional)
//   kind = "gspace"      group = "z2.toml"  points = 3  action = [[...], ...]
//
// A group argument that is not a file may also be written inline:
// cyclic(12), product(2,3), dihedral(4), quaternion, Z(1,1000).
//
// Sets are expressions:
//
//   {1, 2, 5}            explicit members ((x, y) tuples in Z^d, d > 1)
//   [a, b]               interval
//   ap(start, step)      every universe element congruent to start
//   ap(start, step, n)   start, start + step, ..., n terms
//   complement(S)  union(S, T, ...)  intersect(S, T, ...)
//   full  empty

#include <cctype>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "finite_set.hpp"
#include "group.hpp"
#include "gspace.hpp"
#include "windowed.hpp"

namespace syndetic {

  class ParseError : public Error {
   public:
    using Error::Error;
  };

  inline std::string read_file(std::filesystem::path const& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
      throw Error("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  namespace detail {

    class Cursor {
     public:
      explicit Cursor(std::string_view s) : _s(s) {}

      void skip_space() {
        while (_i < _s.size()) {
          if (std::isspace(static_cast<unsigned char>(_s[_i]))) {
            ++_i;
          } else if (_s[_i] == '#') {
            while (_i < _s.size() && _s[_i] != '\n') {
              ++_i;
            }
          } else {
            break;
          }
        }
      }

      bool done() {
        skip_space();
        return _i >= _s.size();
      }

      char peek() {
        skip_space();
        return _i < _s.size() ? _s[_i] : '\0';
      }

      bool accept(char c) {
        if (peek() == c) {
          ++_i;
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          fail(std::string("expected '") + c + "'");
        }
      }

      std::int64_t integer() {
        skip_space();
        std::size_t start = _i;
        if (_i < _s.size() && (_s[_i] == '-' || _s[_i] == '+')) {
          ++_i;
        }
        while (_i < _s.size() && (std::isdigit(static_cast<unsigned char>(_s[_i])) || _s[_i] == '_')) {
          ++_i;
        }
        std::string digits;
        for (std::size_t k = start; k < _i; ++k) {
          if (_s[k] != '_') {
            digits += _s[k];
          }
        }
        if (digits.empty() || digits == "-" || digits == "+") {
          fail("expected an integer");
        }
        try {
          return std::stoll(digits);
        } catch (std::exception const&) {
          fail("integer out of range");
        }
      }

      std::string word() {
        skip_space();
        std::size_t start = _i;
        while (_i < _s.size()
               && (std::isalnum(static_cast<unsigned char>(_s[_i])) || _s[_i] == '_'
                   || _s[_i] == '-')) {
          ++_i;
        }
        if (start == _i) {
          fail("expected a name");
        }
        return std::string(_s.substr(start, _i - start));
      }

      std::string quoted() {
        expect('"');
        std::string out;
        while (_i < _s.size() && _s[_i] != '"') {
          if (_s[_i] == '\\' && _i + 1 < _s.size()) {
            ++_i;
          }
          out += _s[_i++];
        }
        if (_i >= _s.size()) {
          fail("unterminated string");
        }
        ++_i;
        return out;
      }

      [[noreturn]] void fail(std::string const& what) const {
        std::size_t line = 1;
        for (std::size_t k = 0; k < _i && k < _s.size(); ++k) {
          line += _s[k] == '\n' ? 1 : 0;
        }
        throw ParseError(what + " at line " + std::to_string(line));
      }

      std::size_t pos() const noexcept {
        return _i;
      }

     private:
      std::string_view _s;
      std::size_t      _i = 0;
    };

    inline nlohmann::json toml_value(Cursor& c) {
      char ch = c.peek();
      if (ch == '"') {
        return c.quoted();
      }
      if (ch == '[') {
        c.expect('[');
        nlohmann::json arr = nlohmann::json::array();
        while (!c.accept(']')) {
          arr.push_back(toml_value(c));
          if (!c.accept(',')) {
            c.expect(']');
            break;
          }
        }
        return arr;
      }
      if (ch == 't' || ch == 'f') {
        std::string w = c.word();
        if (w != "true" && w != "false") {
          c.fail("unexpected '" + w + "'");
        }
        return w == "true";
      }
      return c.integer();
    }

  }  // namespace detail

  //! Parses the TOML subset into a flat JSON object.
  inline nlohmann::json parse_toml_subset(std::string_view text) {
    detail::Cursor c(text);
    nlohmann::json out = nlohmann::json::object();
    while (!c.done()) {
      std::string key = c.word();
      c.expect('=');
      if (out.contains(key)) {
        c.fail("duplicate key '" + key + "'");
      }
      out[key] = detail::toml_value(c);
    }
    return out;
  }

  //! Canonical group descriptor (self-contained, file references resolved).
  inline nlohmann::json group_descriptor(nlohmann::json const& raw,
                                         std::filesystem::path const& base);

  inline nlohmann::json group_descriptor_from_arg(std::string const& arg,
                                                  std::filesystem::path const& base = ".");

  namespace detail {

    inline nlohmann::json factor_descriptor(nlohmann::json const& f,
                                            std::filesystem::path const& base) {
      if (f.is_number_integer()) {
        return {{"kind", "cyclic"}, {"n", f.get<std::int64_t>()}};
      }
      if (f.is_string()) {
        return group_descriptor_from_arg(f.get<std::string>(), base);
      }
      if (f.is_object()) {
        return group_descriptor(f, base);
      }
      throw ParseError("product factor must be an order, a file or a descriptor");
    }

    inline nlohmann::json inline_group(std::string const& arg) {
      Cursor      c(arg);
      std::string name = c.word();
      std::vector<std::int64_t> args;
      if (c.accept('(')) {
        while (!c.accept(')')) {
          args.push_back(c.integer());
          if (!c.accept(',')) {
            c.expect(')');
            break;
          }
        }
      }
      if (!c.done()) {
        c.fail("trailing input in group expression");
      }
      auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
          throw ParseError("wrong number of arguments to " + name);
        }
      };
      if (name == "cyclic") {
        need(1, 1);
        return {{"kind", "cyclic"}, {"n", args[0]}};
      }
      if (name == "dihedral") {
        need(1, 1);
        return {{"kind", "dihedral"}, {"n", args[0]}};
      }
      if (name == "quaternion") {
        need(0, 0);
        return {{"kind", "quaternion"}};
      }
      if (name == "product") {
        need(1, 16);
        nlohmann::json factors = nlohmann::json::array();
        for (auto n : args) {
          factors.push_back({{"kind", "cyclic"}, {"n", n}});
        }
        return {{"kind", "product"}, {"factors", factors}};
      }
      if (name == "Z" || name == "windowed-Z") {
        need(2, 3);
        nlohmann::json j{{"kind", "windowed-Z"}, {"d", args[0]}, {"horizon", args[1]}};
        if (args.size() == 3) {
          j["margin"] = args[2];
        }
        return j;
      }
      throw ParseError("unknown group '" + name + "'");
    }

  }  // namespace detail

  inline nlohmann::json group_descriptor(nlohmann::json const& raw,
                                         std::filesystem::path const& base) {
    if (!raw.contains("kind") || !raw["kind"].is_string()) {
      throw ParseError("group description needs a string 'kind'");
    }
    std::string    kind = raw["kind"].get<std::string>();
    nlohmann::json d{{"kind", kind}};
    auto int_field = [&](char const* key) {
      if (!raw.contains(key) || !raw[key].is_number_integer()) {
        throw ParseError(kind + " group needs integer '" + key + "'");
      }
      return raw[key].get<std::int64_t>();
    };
    if (kind == "cyclic" || kind == "dihedral") {
      d["n"] = int_field("n");
    } else if (kind == "quaternion") {
    } else if (kind == "product") {
      if (!raw.contains("factors") || !raw["factors"].is_array() || raw["factors"].empty()) {
        throw ParseError("product group needs a nonempty 'factors' array");
      }
      d["factors"] = nlohmann::json::array();
      for (auto const& f : raw["factors"]) {
        d["factors"].push_back(detail::factor_descriptor(f, base));
      }
    } else if (kind == "table") {
      if (!raw.contains("table") || !raw["table"].is_array()) {
        throw ParseError("table group needs a 'table' array");
      }
      d["table"] = raw["table"].get<std::vector<std::vector<Elem>>>();
    } else if (kind == "windowed-Z") {
      d["d"]       = int_field("d");
      d["horizon"] = int_field("horizon");
      if (raw.contains("margin")) {
        d["margin"] = int_field("margin");
      }
    } else if (kind == "gspace") {
      if (!raw.contains("group")) {
        throw ParseError("gspace needs a 'group'");
      }
      d["group"]  = detail::factor_descriptor(raw["group"], base);
      d["points"] = int_field("points");
      if (!raw.contains("action") || !raw["action"].is_array()) {
        throw ParseError("gspace needs an 'action' table");
      }
      d["action"] = raw["action"].get<std::vector<std::vector<Elem>>>();
    } else {
      throw ParseError("unknown group kind '" + kind + "'");
    }
    return d;
  }

  //! A path to a group file, or an inline group expression.
  inline nlohmann::json group_descriptor_from_arg(std::string const& arg,
                                                  std::filesystem::path const& base) {
    std::filesystem::path p = std::filesystem::path(arg).is_absolute() ? std::filesystem::path(arg) : base / arg;
    if (std::filesystem::is_regular_file(p)) {
      return group_descriptor(parse_toml_subset(read_file(p)), p.parent_path());
    }
    return detail::inline_group(arg);
  }

  //! The object a group descriptor names: a finite group (acting on itself),
  //! a G-space, or a windowed Z^d.
  class Ambient {
   public:
    static Ambient build(nlohmann::json const& d) {
      Ambient     a;
      a._desc          = d;
      std::string kind = d.at("kind").get<std::string>();
      if (kind == "windowed-Z") {
        a._window = WindowedGroup(static_cast<int>(d.at("d").get<std::int64_t>()),
                                  d.at("horizon").get<std::int64_t>());
        if (d.contains("margin")) {
          a._margin = d["margin"].get<std::int64_t>();
        }
        return a;
      }
      if (kind == "gspace") {
        auto G   = std::make_shared<FiniteGroup const>(finite_group(d.at("group")));
        a._space = std::make_shared<GSpace const>(
            G, d.at("points").get<std::size_t>(),
            d.at("action").get<std::vector<std::vector<Elem>>>());
        a._is_space = true;
        return a;
      }
      a._space = std::make_shared<GSpace const>(
          GSpace::regular(std::make_shared<FiniteGroup const>(finite_group(d))));
      return a;
    }

    static FiniteGroup finite_group(nlohmann::json const& d) {
      std::string kind = d.at("kind").get<std::string>();
      auto        pos  = [&](char const* key) {
        auto n = d.at(key).get<std::int64_t>();
        if (n <= 0) {
          throw std::invalid_argument(kind + " needs a positive '" + key + "'");
        }
        return static_cast<std::size_t>(n);
      };
      if (kind == "cyclic") {
        return cyclic(pos("n"));
      }
      if (kind == "dihedral") {
        return dihedral(pos("n"));
      }
      if (kind == "quaternion") {
        return quaternion();
      }
      if (kind == "table") {
        return FiniteGroup::from_table(d.at("table").get<std::vector<std::vector<Elem>>>());
      }
      if (kind == "product") {
        auto const& fs  = d.at("factors");
        FiniteGroup acc = finite_group(fs.at(0));
        for (std::size_t i = 1; i < fs.size(); ++i) {
          acc = product(acc, finite_group(fs[i]));
        }
        return acc;
      }
      throw std::invalid_argument("'" + kind + "' is not a finite group");
    }

    nlohmann::json const& descriptor() const noexcept {
      return _desc;
    }

    bool windowed() const noexcept {
      return _window.has_value();
    }

    //! True for an explicit G-space file (not a group acting on itself).
    bool is_space() const noexcept {
      return _is_space;
    }

    WindowedGroup const& window() const {
      if (!_window) {
        throw std::invalid_argument("this command needs a windowed group");
      }
      return *_window;
    }

    std::optional<std::int64_t> margin() const noexcept {
      return _margin;
    }

    GSpace const& space() const {
      if (!_space) {
        throw std::invalid_argument("this command needs a finite group or G-space");
      }
      return *_space;
    }

    FiniteGroup const& group() const {
      return space().group();
    }

    //! Universe for sets of points.
    FiniteSet points() const {
      return _window ? _window->elements() : _space->points();
    }

    //! Universe for sets of group elements.
    FiniteSet elements() const {
      return _window ? _window->elements() : _space->group().elements();
    }

   private:
    nlohmann::json                _desc;
    std::optional<WindowedGroup>  _window;
    std::optional<std::int64_t>   _margin;
    std::shared_ptr<GSpace const> _space;
    bool                          _is_space = false;
  };

  ////////////////////////////////////////////////////////////////////////
  // Set expressions
  ////////////////////////////////////////////////////////////////////////

  struct SetContext {
    FiniteSet                    universe;
    //! For (x, y, ...) tuples.
    std::optional<WindowedGroup> window;
  };

  namespace detail {

    inline FiniteSet set_expr(Cursor& c, SetContext const& ctx);

    inline std::vector<FiniteSet> set_args(Cursor& c, SetContext const& ctx) {
      std::vector<FiniteSet> out;
      c.expect('(');
      while (!c.accept(')')) {
        out.push_back(set_expr(c, ctx));
        if (!c.accept(',')) {
          c.expect(')');
          break;
        }
      }
      return out;
    }

    inline Elem member(Cursor& c, SetContext const& ctx) {
      if (c.accept('(')) {
        std::vector<std::int64_t> v;
        while (!c.accept(')')) {
          v.push_back(c.integer());
          if (!c.accept(',')) {
            c.expect(')');
            break;
          }
        }
        if (!ctx.window) {
          c.fail("tuples need a windowed group");
        }
        return ctx.window->encode(std::span<std::int64_t const>(v.data(), v.size()));
      }
      return c.integer();
    }

    inline FiniteSet set_expr(Cursor& c, SetContext const& ctx) {
      char ch = c.peek();
      if (ch == '{') {
        c.expect('{');
        std::vector<Elem> xs;
        while (!c.accept('}')) {
          xs.push_back(member(c, ctx));
          if (!c.accept(',')) {
            c.expect('}');
            break;
          }
        }
        return FiniteSet(std::move(xs));
      }
      if (ch == '[') {
        c.expect('[');
        Elem a = c.integer();
        c.expect(',');
        Elem b = c.integer();
        c.expect(']');
        if (b < a) {
          return FiniteSet{};
        }
        return FiniteSet::interval(a, b);
      }
      std::string name = c.word();
      if (name == "full") {
        return ctx.universe;
      }
      if (name == "empty") {
        return FiniteSet{};
      }
      if (name == "ap") {
        c.expect('(');
        Elem start = c.integer();
        c.expect(',');
        Elem step = c.integer();
        std::optional<Elem> count;
        if (c.accept(',')) {
          count = c.integer();
        }
        c.expect(')');
        if (step <= 0) {
          c.fail("ap step must be positive");
        }
        std::vector<Elem> xs;
        if (count) {
          for (Elem i = 0; i < *count; ++i) {
            xs.push_back(start + i * step);
          }
        } else {
          for (Elem x : ctx.universe) {
            if (((x - start) % step + step) % step == 0) {
              xs.push_back(x);
            }
          }
        }
        return FiniteSet(std::move(xs));
      }
      if (name == "complement") {
        auto args = set_args(c, ctx);
        if (args.size() != 1) {
          c.fail("complement takes one set");
        }
        return set_difference(ctx.universe, args[0]);
      }
      if (name == "union" || name == "intersect") {
        auto args = set_args(c, ctx);
        if (args.empty()) {
          c.fail(name + " needs at least one set");
        }
        FiniteSet acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) {
          acc = name == "union" ? set_union(acc, args[i]) : set_intersection(acc, args[i]);
        }
        return acc;
      }
      c.fail("unknown set form '" + name + "'");
    }

  }  // namespace detail

  //! Parses one set expression; members outside the universe are rejected.
  inline FiniteSet parse_set(std::string_view text, SetContext const& ctx) {
    detail::Cursor c(text);
    FiniteSet      s = detail::set_expr(c, ctx);
    if (!c.done()) {
      c.fail("trailing input after set expression");
    }
    if (!is_subset(s, ctx.universe)) {
      throw ParseError("set has members outside its universe");
    }
    return s;
  }

}  // namespace syndetic

#endif  // SYNDETIC_IO_HPP_
