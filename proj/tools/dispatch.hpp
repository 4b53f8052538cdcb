#ifndef SYNDETIC_TOOLS_DISPATCH_HPP_
#define SYNDETIC_TOOLS_DISPATCH_HPP_

// The `syndetic` command line. Every subcommand turns its arguments into a
// self-contained `inputs` object (group descriptors plus set source text),
// computes from that object alone, and prints a JSON report:
//
//   {tool, version, schema, subcommand, inputs, digests, status, message,
//    result, timing}
//
// `verify` reruns a report from its embedded inputs and compares results;
// partition results are additionally replayed by the independent checker.
// Exit codes: 0 ok, 1 error, 2 undecided, 3 precondition failed.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <syndetic/io.hpp>
#include <syndetic/serialize.hpp>
#include <syndetic/syndetic.hpp>

namespace syndetic::cli {

  inline constexpr char tool_version[] = "0.1.0";

  enum class Status { ok, undecided, precondition_failed, error };

  inline char const* to_string(Status s) noexcept {
    switch (s) {
      case Status::ok:
        return "ok";
      case Status::undecided:
        return "undecided";
      case Status::precondition_failed:
        return "precondition-failed";
      default:
        return "error";
    }
  }

  using syndetic::to_string;

  inline int exit_code(Status s) noexcept {
    switch (s) {
      case Status::ok:
        return 0;
      case Status::undecided:
        return 2;
      case Status::precondition_failed:
        return 3;
      default:
        return 1;
    }
  }

  inline Status status_from_string(std::string const& s) {
    for (Status t : {Status::ok, Status::undecided, Status::precondition_failed, Status::error}) {
      if (s == to_string(t)) {
        return t;
      }
    }
    throw std::invalid_argument("unknown status '" + s + "'");
  }

  struct Outcome {
    int         exit_code = 1;
    std::string out;
    std::string err;
  };

  inline std::string sha256_hex(std::string const& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int  len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
      throw Error("SHA-256 failed");
    }
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) {
      os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
  }

  //! The text of a set argument: file contents if it names a file,
  //! otherwise the argument itself.
  inline std::string set_source(std::string const& arg) {
    if (std::filesystem::is_regular_file(arg)) {
      return read_file(arg);
    }
    return arg;
  }

  //! Result of one computation.
  struct Computed {
    Status      status = Status::ok;
    std::string message;
    json        result = json::object();
  };

  namespace detail {

    inline Status decided(Decision d) {
      return d == Decision::undecided ? Status::undecided : Status::ok;
    }

    inline SetContext points_ctx(Ambient const& a) {
      return {a.points(), a.windowed() ? std::optional<WindowedGroup>(a.window()) : std::nullopt};
    }

    inline SetContext elements_ctx(Ambient const& a) {
      return {a.elements(), a.windowed() ? std::optional<WindowedGroup>(a.window()) : std::nullopt};
    }

    inline HorizonPolicy policy_of(Ambient const& a, json const& in) {
      return HorizonPolicy(a.window().horizon(), in.at("margin").get<std::int64_t>());
    }

    inline SetContext window_ctx(std::int64_t horizon) {
      return {FiniteSet::interval(-horizon, horizon), std::nullopt};
    }

    inline Computed run_classify(json const& in) {
      Ambient       a      = Ambient::build(in.at("group"));
      auto const&   q      = in.at("query");
      std::string   kind   = q.at("kind").get<std::string>();
      std::uint64_t budget = in.at("budget").get<std::uint64_t>();
      FiniteSet     A      = parse_set(in.at("set").get<std::string>(), points_ctx(a));
      Computed      c;
      auto          num = [&](char const* key) { return q.at(key).get<std::size_t>(); };
      if (kind == "m-large") {
        LargenessResult r = a.windowed()
                                ? is_m_large(a.window(), A, num("m"), policy_of(a, in), budget)
                                : is_m_large(a.space(), A, num("m"), budget);
        c.status = decided(r.decision);
        c.result = to_json_value(r);
      } else if (kind == "m-thick") {
        ThicknessVerdict r = a.windowed()
                                 ? is_m_thick(a.window(), A, num("m"), policy_of(a, in), budget)
                                 : is_m_thick(a.space(), A, num("m"), budget);
        c.status = decided(r.decision);
        c.result = to_json_value(r);
      } else if (kind == "prethick") {
        PrethickResult r =
            a.windowed()
                ? is_k_m_prethick(a.window(), A, num("k"), num("m"), policy_of(a, in), budget)
                : is_k_m_prethick(a.space(), A, num("k"), num("m"), budget);
        c.status = decided(r.decision);
        c.result = to_json_value(r);
      } else if (kind == "k-meager") {
        MeagerVerdict r = a.windowed()
                              ? is_k_meager(a.window(), A, num("k"), policy_of(a, in), budget)
                              : is_k_meager(a.space(), A, num("k"), budget);
        c.status = decided(r.decision);
        c.result = to_json_value(r);
      } else {
        throw std::invalid_argument("unknown query '" + kind + "'");
      }
      if (a.windowed()) {
        c.result["caveat"] = horizon_caveat;
      }
      return c;
    }

    inline Computed run_cover(json const& in) {
      Ambient   a = Ambient::build(in.at("group"));
      FiniteSet A = parse_set(in.at("set").get<std::string>(), elements_ctx(a));
      auto      c = greedy_cover(a.group(), A);
      if (!replay(a.group(), c)) {
        throw std::logic_error("cover certificate does not replay");
      }
      return {Status::ok, "", to_json_value(c)};
    }

    inline Computed run_net(json const& in) {
      Ambient   a = Ambient::build(in.at("group"));
      FiniteSet E = parse_set(in.at("E").get<std::string>(), elements_ctx(a));
      FiniteSet S = parse_set(in.at("S").get<std::string>(), elements_ctx(a));
      Computed  c;
      if (a.windowed()) {
        HorizonPolicy p = policy_of(a, in);
        S               = set_intersection(S, inner_window(a.window(), p));
        auto net        = max_E_separated(a.window(), E, S);
        c.result        = to_json_value(net);
        c.result["caveat"] = horizon_caveat;
      } else {
        c.result = to_json_value(max_E_separated(a.group(), E, S));
      }
      return c;
    }

    inline Computed run_prethick(json const& in) {
      Ambient                a = Ambient::build(in.at("group"));
      std::vector<FiniteSet> cells;
      for (auto const& s : in.at("cells")) {
        cells.push_back(parse_set(s.get<std::string>(), points_ctx(a)));
      }
      auto r = prethick_cell(a.space(), cells, in.at("m").get<std::size_t>(),
                             in.at("budget").get<std::uint64_t>());
      return {decided(r.decision), "", to_json_value(r)};
    }

    inline Computed run_sigma(json const& in) {
      Ambient   a = Ambient::build(in.at("group"));
      FiniteSet H = parse_set(in.at("H").get<std::string>(), elements_ctx(a));
      FiniteSet A = parse_set(in.at("set").get<std::string>(), elements_ctx(a));
      if (in.at("mode").get<std::string>() == "exact") {
        try {
          return {Status::ok, "", to_json_value(solecki_sigma(a.group(), H, A))};
        } catch (SigmaTooLarge const& e) {
          return {Status::precondition_failed, e.what(), json::object()};
        }
      }
      auto r = sigma_estimate(a.group(), H, A, in.at("rounds").get<std::size_t>());
      return {Status::ok, "", to_json_value(r)};
    }

    inline WindowDensity density_oracle(json const& in) {
      std::int64_t H = in.at("horizon").get<std::int64_t>();
      return WindowDensity(WindowedGroup(1, H), in.at("L").get<std::int64_t>(),
                           HorizonPolicy(H, in.at("margin").get<std::int64_t>()));
    }

    inline Computed run_density(json const& in) {
      WindowDensity mu = density_oracle(in);
      FiniteSet     A  = parse_set(in.at("set").get<std::string>(),
                                   window_ctx(in.at("horizon").get<std::int64_t>()));
      Rational      v  = mu.eval(A);
      return {Status::ok, "",
              json{{"eval", to_string(v)}, {"L", mu.probe()}, {"caveat", horizon_caveat}}};
    }

    inline Computed run_witness(json const& in) {
      WindowDensity mu  = density_oracle(in);
      FiniteSet     A   = parse_set(in.at("set").get<std::string>(),
                                    window_ctx(in.at("horizon").get<std::int64_t>()));
      Rational      eps = parse_rational(in.at("eps").get<std::string>());
      try {
        json r      = to_json_value(syndetic_witness_Z(mu, A, eps));
        r["caveat"] = horizon_caveat;
        return {Status::ok, "", r};
      } catch (PreconditionFailed const& e) {
        return {Status::precondition_failed, e.what(), json::object()};
      }
    }

    inline Computed run_partition(json const& in) {
      std::optional<std::int64_t> margin;
      if (in.contains("margin") && !in["margin"].is_null()) {
        margin = in["margin"].get<std::int64_t>();
      }
      try {
        auto r = build_meager_partition(in.at("k").get<std::size_t>(),
                                        in.at("stages").get<std::size_t>(),
                                        in.at("horizon").get<std::int64_t>(), margin);
        auto certs = verify_meagerness(r);
        json j     = to_json_value(r);
        json cj    = json::array();
        for (auto const& c : certs) {
          cj.push_back(to_json_value(c));
        }
        j["certificates"] = std::move(cj);
        return {Status::ok, "", j};
      } catch (PreconditionFailed const& e) {
        return {Status::precondition_failed, e.what(), json::object()};
      }
    }

    inline Computed run_validate(json const& in) {
      json const& d = in.at("group");
      Computed    c;
      if (d.at("kind") == "table") {
        auto report = validate_group(d.at("table").get<std::vector<std::vector<Elem>>>());
        json v      = json::array();
        for (auto const& x : report.violations) {
          v.push_back({{"kind", syndetic::to_string(x.kind)},
                       {"witness", x.witness},
                       {"message", x.message}});
        }
        c.result = {{"valid", report.valid()},
                    {"sampled_associativity", report.sampled_associativity},
                    {"violations", std::move(v)}};
        if (!report.valid()) {
          c.status  = Status::precondition_failed;
          c.message = "the table violates the group axioms";
        }
        return c;
      }
      // other kinds are valid by construction once they build; G-space
      // actions are validated when built
      Ambient a = Ambient::build(d);
      c.result  = {{"valid", true}, {"violations", json::array()}};
      if (!a.windowed()) {
        c.result["order"]  = a.group().order();
        c.result["points"] = a.space().size();
        c.result["orbits"] = orbits(a.space()).size();
      }
      return c;
    }

    inline Computed run(std::string const& sub, json const& in) {
      if (sub == "classify") return run_classify(in);
      if (sub == "cover") return run_cover(in);
      if (sub == "net") return run_net(in);
      if (sub == "prethick") return run_prethick(in);
      if (sub == "sigma") return run_sigma(in);
      if (sub == "density") return run_density(in);
      if (sub == "witness") return run_witness(in);
      if (sub == "partition") return run_partition(in);
      if (sub == "validate") return run_validate(in);
      throw std::invalid_argument("cannot rerun subcommand '" + sub + "'");
    }

    // Runs and classifies failures; never throws.
    inline Computed run_guarded(std::string const& sub, json const& in) {
      try {
        return run(sub, in);
      } catch (PreconditionFailed const& e) {
        return {Status::precondition_failed, e.what(), json::object()};
      } catch (std::exception const& e) {
        return {Status::error, e.what(), json::object()};
      }
    }

    inline json make_report(std::string const& sub, json const& inputs, Computed const& c,
                            double elapsed_ms) {
      json digests = json::object();
      for (auto const& [key, value] : inputs.items()) {
        digests[key] = sha256_hex(value.dump());
      }
      json report{{"tool", "syndetic"},
                  {"version", tool_version},
                  {"schema", schema_version},
                  {"subcommand", sub},
                  {"inputs", inputs},
                  {"digests", std::move(digests)},
                  {"status", to_string(c.status)},
                  {"result", c.result},
                  {"timing", {{"elapsed_ms", elapsed_ms}}}};
      report["message"] = c.message.empty() ? json(nullptr) : json(c.message);
      return report;
    }

    // verify: rerun from embedded inputs, replay partitions independently.
    inline Computed run_verify(json const& doc, bool rebuild) {
      Computed c;
      if (doc.contains("format") && doc["format"] == partition_format) {
        auto certs = verify_meagerness(partition_from_json(doc));
        c.result   = {{"verified", "partition"}, {"certificates", certs.size()}, {"replayed", true}};
        return c;
      }
      std::string sub = doc.at("subcommand").get<std::string>();
      json const& in  = doc.at("inputs");
      Status      recorded = status_from_string(doc.at("status").get<std::string>());
      c.result            = {{"verified", sub}};
      if (sub == "partition" && recorded == Status::ok) {
        auto r     = partition_from_json(doc.at("result"));
        auto certs = verify_meagerness(r);
        c.result["certificates"] = certs.size();
        c.result["replayed"]     = true;
        if (doc["result"].contains("certificates")
            && doc["result"]["certificates"].size() != certs.size()) {
          throw Error("certificate count differs from the report");
        }
        if (!rebuild) {
          return c;
        }
      }
      Computed again = run_guarded(sub, in);
      if (again.status != recorded) {
        throw Error(std::string("rerun status ") + to_string(again.status)
                    + " differs from recorded " + to_string(recorded));
      }
      if (again.result != doc.at("result")) {
        throw Error("rerun result differs from the report");
      }
      c.result["replayed"] = true;
      c.result["matches"]  = true;
      return c;
    }

    inline std::string usage() {
      return "usage: syndetic <classify|cover|net|prethick|sigma|density|witness|partition|"
             "verify|validate> [options]\n       syndetic <subcommand> --help\n";
    }

  }  // namespace detail

  //! Runs one command line (without the program name).
  inline Outcome dispatch(std::vector<std::string> const& args) {
    namespace d = detail;
    Outcome     o;
    CLI::App    app{"Certified combinatorics of syndetic and thick sets", "syndetic"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::string group, set, query, E, S, Hset = "full", eps, in_file, out_file;
    std::vector<std::string> cells;
    std::size_t              m = 2, k = 1, stages = 1, rounds = 500;
    std::int64_t             L = 40, horizon = 10000;
    std::optional<std::int64_t> margin;
    std::uint64_t            budget = default_budget;
    bool                     exact = false, rebuild = false;

    auto add_budget = [&](CLI::App* s) {
      s->add_option("--budget", budget, "cap on candidate sets per query");
    };
    auto* classify = app.add_subcommand("classify", "largeness / thickness / prethickness / meagerness");
    classify->add_option("--group", group, "group or G-space file, or inline group")->required();
    classify->add_option("--set", set, "set file or expression")->required();
    classify->add_option("--query", query, "m-large=M | m-thick=M | prethick=K,M | k-meager=K")
        ->required();
    classify->add_option("--margin", margin, "windowed groups: margin radius");
    add_budget(classify);

    auto* cover = app.add_subcommand("cover", "greedy translate cover");
    cover->add_option("--group", group)->required();
    cover->add_option("--set", set)->required();

    auto* net = app.add_subcommand("net", "maximal E-separated net");
    net->add_option("--group", group)->required();
    net->add_option("--E", E)->required();
    net->add_option("--S", S)->required();
    net->add_option("--margin", margin, "windowed groups: restrict S to the inner window");

    auto* prethick = app.add_subcommand("prethick", "prethick cell of a cover");
    prethick->add_option("--group", group)->required();
    prethick->add_option("--cells", cells)->required()->expected(1, -1);
    prethick->add_option("--m", m);
    add_budget(prethick);

    auto* sigma = app.add_subcommand("sigma", "translate-game value sigma_H(A)");
    sigma->add_option("--group", group)->required();
    sigma->add_option("--H", Hset, "subgroup (default full)");
    sigma->add_option("--set", set)->required();
    auto* exact_flag = sigma->add_flag("--exact", exact, "exact simplex (default)");
    sigma->add_option("--rounds", rounds, "iterative bracketing instead")->excludes(exact_flag);

    auto* density = app.add_subcommand("density", "window density on Z");
    density->add_option("--set", set)->required();
    density->add_option("--L", L);
    density->add_option("--horizon", horizon);
    density->add_option("--margin", margin);

    auto* witness = app.add_subcommand("witness", "small large set avoiding A in Z");
    witness->add_option("--set", set)->required();
    witness->add_option("--eps", eps)->required();
    witness->add_option("--L", L);
    witness->add_option("--horizon", horizon);
    witness->add_option("--margin", margin);

    auto* partition = app.add_subcommand("partition", "two k-meager pieces of windowed Z");
    partition->add_option("--k", k);
    partition->add_option("--stages", stages);
    partition->add_option("--horizon", horizon);
    partition->add_option("--margin", margin);
    partition->add_option("--out", out_file, "write the full report here");

    auto* verify = app.add_subcommand("verify", "rerun or replay a report");
    verify->add_option("--in", in_file)->required();
    verify->add_flag("--rebuild", rebuild, "partition reports: also rebuild and compare");

    auto* validate = app.add_subcommand("validate", "check a group or G-space file");
    validate->add_option("--group", group)->required();

    std::ostringstream out, err;
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (CLI::CallForHelp const& e) {
      o.exit_code = app.exit(e, out, err);
      o.out       = out.str();
      return o;
    } catch (CLI::CallForVersion const& e) {
      o.exit_code = app.exit(e, out, err);
      o.out       = out.str();
      return o;
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      o.exit_code = 1;
      o.err       = err.str() + d::usage();
      return o;
    }

    auto const   start = std::chrono::steady_clock::now();
    std::string  sub   = app.get_subcommands().front()->get_name();
    json         inputs;
    Computed     c;
    try {
      if (sub == "verify") {
        std::string text = read_file(in_file);
        inputs           = {{"in", sha256_hex(text)}};
        try {
          c = d::run_verify(json::parse(text), rebuild);
        } catch (std::exception const& e) {
          c = {Status::error, std::string("verification failed: ") + e.what(), json::object()};
        }
      } else {
        if (sub == "classify" || sub == "cover" || sub == "net" || sub == "prethick"
            || sub == "sigma" || sub == "validate") {
          inputs["group"] = group_descriptor_from_arg(group);
        }
        auto window_margin = [&]() -> std::int64_t {
          Ambient a = Ambient::build(inputs["group"]);
          if (margin) return *margin;
          if (a.margin()) return *a.margin();
          return std::max<std::int64_t>(1, a.window().horizon() / 4);
        };
        if (sub == "classify") {
          inputs["set"] = set_source(set);
          std::string   key = query.substr(0, query.find('='));
          std::string   val = query.find('=') == std::string::npos ? "" : query.substr(query.find('=') + 1);
          json          q{{"kind", key}};
          std::vector<std::size_t> nums;
          std::stringstream        ss(val);
          for (std::string part; std::getline(ss, part, ',');) {
            nums.push_back(std::stoul(part));
          }
          std::size_t want = key == "prethick" ? 2 : 1;
          if (nums.size() != want) {
            throw std::invalid_argument("query '" + query + "' needs " + std::to_string(want)
                                        + " parameter(s)");
          }
          if (key == "m-large" || key == "m-thick") {
            q["m"] = nums[0];
          } else if (key == "k-meager") {
            q["k"] = nums[0];
          } else if (key == "prethick") {
            q["k"] = nums[0];
            q["m"] = nums[1];
          } else {
            throw std::invalid_argument("unknown query '" + key + "'");
          }
          inputs["query"]  = q;
          inputs["budget"] = budget;
          if (inputs["group"]["kind"] == "windowed-Z") {
            inputs["margin"] = window_margin();
          }
        } else if (sub == "cover") {
          inputs["set"] = set_source(set);
        } else if (sub == "net") {
          inputs["E"] = set_source(E);
          inputs["S"] = set_source(S);
          if (inputs["group"]["kind"] == "windowed-Z") {
            inputs["margin"] = window_margin();
          }
        } else if (sub == "prethick") {
          inputs["cells"] = json::array();
          for (auto const& cell : cells) {
            inputs["cells"].push_back(set_source(cell));
          }
          inputs["m"]      = m;
          inputs["budget"] = budget;
        } else if (sub == "sigma") {
          inputs["H"]    = set_source(Hset);
          inputs["set"]  = set_source(set);
          inputs["mode"] = sigma->count("--rounds") > 0 ? "estimate" : "exact";
          if (inputs["mode"] == "estimate") {
            inputs["rounds"] = rounds;
          }
        } else if (sub == "density" || sub == "witness") {
          inputs["set"]     = set_source(set);
          inputs["L"]       = L;
          inputs["horizon"] = horizon;
          if (sub == "witness") {
            inputs["eps"] = to_string(parse_rational(eps));
            auto plan     = plan_witness_Z(parse_rational(eps), L);
            inputs["margin"] =
                margin ? *margin : std::min<std::int64_t>(horizon - 1, L + 2 * plan.E_len + 1);
          } else {
            inputs["margin"] = margin ? *margin : 0;
          }
        } else if (sub == "partition") {
          inputs["k"]       = k;
          inputs["stages"]  = stages;
          inputs["horizon"] = horizon;
          inputs["margin"]  = margin ? json(*margin) : json(nullptr);
        }
        c = d::run_guarded(sub, inputs);
      }
    } catch (std::exception const& e) {
      c = {Status::error, e.what(), json::object()};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    json report = d::make_report(sub, inputs, c, ms);
    if (sub == "partition" && !out_file.empty()) {
      std::ofstream f(out_file, std::ios::binary);
      f << report.dump() << '\n';
      if (!f) {
        c.status          = Status::error;
        report["status"]  = to_string(c.status);
        report["message"] = "cannot write " + out_file;
      } else if (report["result"].contains("stages")) {
        json summary{{"written_to", out_file},
                     {"stages", report["result"]["stages"].size()},
                     {"A_size", set_from_json(report["result"]["A"]).size()},
                     {"certificates", report["result"]["certificates"].size()},
                     {"caveat", horizon_caveat}};
        report["result"] = std::move(summary);
      }
    }
    o.out       = report.dump(2) + "\n";
    o.exit_code = exit_code(c.status);
    if (c.status != Status::ok && !c.message.empty()) {
      o.err = c.message + "\n";
    }
    return o;
  }

}  // namespace syndetic::cli

#endif  // SYNDETIC_TOOLS_DISPATCH_HPP_
