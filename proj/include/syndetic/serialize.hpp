#ifndef SYNDETIC_SERIALIZE_HPP_
#define SYNDETIC_SERIALIZE_HPP_

// JSON forms of sets, witnesses and certificates. Rationals are "p/q"
// strings; large sets are delta-encoded as {"delta": [x0, x1 - x0, ...]}.

#include <json.hpp>

#include "covering.hpp"
#include "measure.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "setcalc.hpp"
#include "sigma.hpp"
#include "submeasure.hpp"

namespace syndetic {

  using json = nlohmann::json;

  inline constexpr int         schema_version   = 1;
  inline constexpr std::size_t delta_threshold  = 32;
  inline constexpr char        partition_format[] = "syndetic-partition";

  inline json to_json_value(Rational const& r) {
    return to_string(r);
  }

  inline Rational rational_from_json(json const& j) {
    if (j.is_number_integer()) {
      return make_rational(j.get<std::int64_t>());
    }
    return parse_rational(j.get<std::string>());
  }

  inline json to_json_value(FiniteSet const& s) {
    if (s.size() <= delta_threshold) {
      return json(s.members());
    }
    std::vector<Elem> d;
    d.reserve(s.size());
    Elem prev = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      d.push_back(i == 0 ? s[i] : s[i] - prev);
      prev = s[i];
    }
    return json{{"delta", std::move(d)}};
  }

  inline FiniteSet set_from_json(json const& j) {
    if (j.is_array()) {
      return FiniteSet(j.get<std::vector<Elem>>());
    }
    auto d = j.at("delta").get<std::vector<Elem>>();
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i] <= 0) {
        throw std::invalid_argument("delta-encoded set is not increasing");
      }
      d[i] += d[i - 1];
    }
    return FiniteSet::from_sorted(std::move(d));
  }

  inline json to_json_value(FiniteMeasure const& m) {
    json w = json::array();
    for (auto const& x : m.weights()) {
      w.push_back(to_string(x));
    }
    return json{{"support", to_json_value(m.support())}, {"weights", std::move(w)}};
  }

  inline FiniteMeasure measure_from_json(json const& j) {
    FiniteSet                s = set_from_json(j.at("support"));
    auto const&              w = j.at("weights");
    std::map<Elem, Rational> m;
    if (w.size() != s.size()) {
      throw std::invalid_argument("measure weights do not match its support");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      m[s[i]] = rational_from_json(w[i]);
    }
    return FiniteMeasure(m);
  }

  inline json to_json_value(LargenessWitness const& w) {
    json j{{"F", to_json_value(w.F)}, {"relation", to_string(w.relation)}};
    j["gap_bound"] = w.gap_bound ? json(*w.gap_bound) : json(nullptr);
    return j;
  }

  inline LargenessWitness witness_from_json(json const& j) {
    LargenessWitness w;
    w.F              = set_from_json(j.at("F"));
    auto rel         = j.at("relation").get<std::string>();
    w.relation       = rel == to_string(LargenessWitness::Relation::covers_space)
                           ? LargenessWitness::Relation::covers_space
                           : LargenessWitness::Relation::covers_inner_window;
    if (rel != to_string(w.relation)) {
      throw std::invalid_argument("unknown largeness relation '" + rel + "'");
    }
    if (j.contains("gap_bound") && !j["gap_bound"].is_null()) {
      w.gap_bound = j["gap_bound"].get<std::int64_t>();
    }
    return w;
  }

  inline json to_json_value(LargenessResult const& r) {
    json j{{"decision", to_string(r.decision)},
           {"horizon_relative", r.horizon_relative},
           {"candidates", r.candidates}};
    j["witness"] = r.witness ? to_json_value(*r.witness) : json(nullptr);
    return j;
  }

  inline json to_json_value(ThicknessVerdict const& v) {
    json placements = json::array();
    for (auto const& [F, x] : v.placements) {
      placements.push_back({{"F", to_json_value(F)}, {"x", x}});
    }
    json j{{"decision", to_string(v.decision)},
           {"horizon_relative", v.horizon_relative},
           {"candidates", v.candidates},
           {"placements", std::move(placements)}};
    j["failing"] = v.failing ? to_json_value(*v.failing) : json(nullptr);
    return j;
  }

  inline json to_json_value(PrethickResult const& r) {
    json j{{"decision", to_string(r.decision)},
           {"horizon_relative", r.horizon_relative},
           {"candidates", r.candidates},
           {"verdict", to_json_value(r.verdict)}};
    j["K"] = r.K ? to_json_value(*r.K) : json(nullptr);
    return j;
  }

  inline json to_json_value(MeagerVerdict const& v) {
    json certs = json::array();
    for (auto const& c : v.certificates) {
      json e{{"K", to_json_value(c.K)}, {"pattern", to_json_value(c.pattern)}};
      e["complement_witness"] =
          c.complement_witness ? to_json_value(*c.complement_witness) : json(nullptr);
      e["run_bound"] = c.run_bound ? json(*c.run_bound) : json(nullptr);
      certs.push_back(std::move(e));
    }
    json j{{"decision", to_string(v.decision)},
           {"horizon_relative", v.horizon_relative},
           {"candidates", v.candidates},
           {"certificates", std::move(certs)}};
    j["thick_K"]     = v.thick_K ? to_json_value(*v.thick_K) : json(nullptr);
    j["thick_point"] = v.thick_point ? json(*v.thick_point) : json(nullptr);
    return j;
  }

  inline json to_json_value(CoverCertificate const& c) {
    return json{{"B", to_json_value(c.B)},
                {"cell", to_json_value(c.cell)},
                {"size", c.B.size()},
                {"group_order", c.group_order},
                {"bound_ceil", c.bound_ceil},
                {"bound_informational_float", c.bound}};
  }

  inline json to_json_value(NetCertificate const& c) {
    return json{{"E", to_json_value(c.E)},
                {"S", to_json_value(c.S)},
                {"B", to_json_value(c.B)},
                {"nu", to_json_value(c.nu)},
                {"sup_nu", to_string(c.sup_nu)}};
  }

  inline json to_json_value(PrethickCellResult const& r) {
    json trace = json::array();
    for (auto const& F : r.trace) {
      trace.push_back(to_json_value(F));
    }
    return json{{"decision", to_string(r.decision)},
                {"cell", r.cell},
                {"K", to_json_value(r.K)},
                {"verdict", to_json_value(r.verdict)},
                {"trace", std::move(trace)}};
  }

  inline json to_json_value(SigmaCertificate const& c) {
    return json{{"value", to_string(c.value)},
                {"measure", to_json_value(c.measure)},
                {"dual", to_json_value(c.dual)}};
  }

  inline json to_json_value(SigmaInterval const& s) {
    return json{{"lo", to_string(s.lo)},
                {"hi", to_string(s.hi)},
                {"rounds", s.rounds},
                {"measure", to_json_value(s.measure)},
                {"dual", to_json_value(s.dual)}};
  }

  inline json to_json_value(SyndeticWitnessZ const& w) {
    return json{{"B", to_json_value(w.B)},
                {"E_len", w.net.E.size()},
                {"witness", to_json_value(w.witness)},
                {"density", to_string(w.density)},
                {"eps", to_string(w.eps)},
                {"L", w.L},
                {"max_gap", w.max_gap},
                {"net_sup_nu", to_string(w.net.sup_nu)}};
  }

  inline json to_json_value(MeagernessCertificate const& c) {
    json j{{"stage", c.stage},
           {"K", to_json_value(c.K)},
           {"side", to_string(c.side)},
           {"guard_size", c.guard.size()},
           {"witness", to_json_value(c.witness)}};
    j["gap_bound"] = c.gap_bound ? json(*c.gap_bound) : json(nullptr);
    return j;
  }

  inline json to_json_value(AxiomReport const& r) {
    json v = json::array();
    for (auto const& x : r.violations) {
      v.push_back({{"kind", to_string(x.kind)},
                   {"A", to_json_value(x.A)},
                   {"B", to_json_value(x.B)},
                   {"g", x.g},
                   {"message", x.message}});
    }
    return json{{"clean", r.clean()},
                {"violations", std::move(v)},
                {"pairs_checked", r.pairs_checked},
                {"translates_checked", r.translates_checked},
                {"translates_skipped", r.translates_skipped},
                {"probes_checked", r.probes_checked}};
  }

  // Partition results round-trip exactly.

  inline json to_json_value(StageSide const& s) {
    return json{{"set", to_json_value(s.set)},
                {"witness", to_json_value(s.witness)},
                {"E_len", s.E_len},
                {"eval", to_string(s.eval)},
                {"forbidden_size", s.forbidden_size},
                {"forbidden_eval", to_string(s.forbidden_eval)},
                {"subadditive_sum", to_string(s.subadditive_sum)},
                {"bound_sum", to_string(s.bound_sum)}};
  }

  inline StageSide stage_side_from_json(json const& j) {
    StageSide s;
    s.set             = set_from_json(j.at("set"));
    s.witness         = witness_from_json(j.at("witness"));
    s.E_len           = j.at("E_len").get<std::int64_t>();
    s.eval            = rational_from_json(j.at("eval"));
    s.forbidden_size  = j.at("forbidden_size").get<std::size_t>();
    s.forbidden_eval  = rational_from_json(j.at("forbidden_eval"));
    s.subadditive_sum = rational_from_json(j.at("subadditive_sum"));
    s.bound_sum       = rational_from_json(j.at("bound_sum"));
    return s;
  }

  inline json to_json_value(PartitionResult const& r) {
    json stages = json::array();
    for (auto const& st : r.stages) {
      stages.push_back({{"n", st.n},
                        {"K", to_json_value(st.K)},
                        {"bound", to_string(st.bound)},
                        {"A", to_json_value(st.A)},
                        {"B", to_json_value(st.B)}});
    }
    return json{{"format", partition_format},
                {"version", schema_version},
                {"k", r.k},
                {"L", r.L},
                {"horizon", r.policy.horizon},
                {"margin", r.policy.margin},
                {"stages", std::move(stages)},
                {"A", to_json_value(r.A)},
                {"caveat", horizon_caveat}};
  }

  inline PartitionResult partition_from_json(json const& j) {
    if (j.at("format").get<std::string>() != partition_format) {
      throw std::invalid_argument("not a partition result");
    }
    if (j.at("version").get<int>() != schema_version) {
      throw std::invalid_argument("unsupported partition schema version");
    }
    PartitionResult r;
    r.k      = j.at("k").get<std::size_t>();
    r.L      = j.at("L").get<std::int64_t>();
    r.policy = HorizonPolicy(j.at("horizon").get<std::int64_t>(),
                             j.at("margin").get<std::int64_t>());
    for (auto const& s : j.at("stages")) {
      StageRecord st;
      st.n     = s.at("n").get<std::size_t>();
      st.K     = set_from_json(s.at("K"));
      st.bound = rational_from_json(s.at("bound"));
      st.A     = stage_side_from_json(s.at("A"));
      st.B     = stage_side_from_json(s.at("B"));
      r.stages.push_back(std::move(st));
    }
    r.A = set_from_json(j.at("A"));
    return r;
  }

}  // namespace syndetic

#endif  // SYNDETIC_SERIALIZE_HPP_
