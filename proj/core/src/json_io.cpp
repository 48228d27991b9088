#include "lobound/json_io.hpp"

#include <json.hpp>
#include <ostream>

namespace lobound {
namespace {

using Json = nlohmann::ordered_json;

Json box_obj(const NSBox& box) {
  Json j;
  const auto v = box.values();
  for (std::size_t i = 0; i < kNumVars; ++i) {
    j[var_name(static_cast<Var>(i))] = v[i];
  }
  return j;
}

Json polynomial_obj(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    Json t;
    t["coefficient"] = coeff;
    Json exps = Json::array();
    for (auto e : mono) exps.push_back(static_cast<int>(e));
    t["exponents"] = exps;
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  j["text"] = p.to_string();
  return j;
}

Json opt_result_obj(const OptResult& r, bool include_timing) {
  Json j;
  j["preset"] = r.preset;
  j["value"] = r.value;
  j["point"] = box_obj(r.point);
  j["feasibility"] = r.feasibility;
  j["feasible"] = r.feasible;
  j["starts"] = r.starts_used;
  j["seed"] = r.seed;
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string json_box(const NSBox& box) { return dump(box_obj(box)); }

NSBox box_from_json_text(const std::string& text) {
  const Json j = Json::parse(text);
  NSBox box;
  auto values = box.values();
  for (std::size_t i = 0; i < kNumVars; ++i) {
    values[i] = j.at(var_name(static_cast<Var>(i))).get<double>();
  }
  return NSBox{values[0], values[1], values[2], values[3],
               values[4], values[5], values[6], values[7]};
}

std::string json_table(const ProbabilityTable& table) {
  Json j;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const std::string xy = {static_cast<char>('0' + x),
                              static_cast<char>('0' + y)};
      Json row;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const std::string ab = {static_cast<char>('0' + a),
                                  static_cast<char>('0' + b)};
          row[ab] = table(x, y, a, b);
        }
      }
      j[xy] = row;
    }
  }
  return dump(j);
}

std::string json_ml_report(const MLReport& report) {
  Json j;
  j["d"] = {{report.d[0][0], report.d[0][1]},
            {report.d[1][0], report.d[1][1]}};
  j["functional"] = report.functional;
  j["satisfied"] = report.satisfied;
  return dump(j);
}

std::string json_opt_result(const OptResult& result, bool include_timing) {
  return dump(opt_result_obj(result, include_timing));
}

std::string json_quantum_result(const QuantumOptResult& result,
                                bool include_timing) {
  Json j = opt_result_obj(result.result, include_timing);
  Json q;
  Json amps = Json::array();
  for (const auto& a : result.state.amplitudes) {
    amps.push_back({a.real(), a.imag()});
  }
  q["amplitudes"] = amps;
  Json ms = Json::array();
  for (const auto& m : result.measurements) {
    Json mj;
    mj["theta"] = m.theta;
    mj["phi"] = m.phi;
    ms.push_back(mj);
  }
  q["measurements"] = ms;
  q["chart"] = result.chart;
  j["quantum_point"] = q;
  return dump(j);
}

std::string json_appendix_report(const AppendixReport& report) {
  Json j;
  j["scenario"] = scenario_name(report.scenario);
  j["substitution"] = report.substitution_note;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json cj;
    cj["clique"] = c.clique_id;
    cj["inequality"] = c.inequality_id;
    switch (c.clique_status) {
      case CliqueStatus::MaximalClique:
        cj["clique_status"] = "maximal clique";
        break;
      case CliqueStatus::Clique:
        cj["clique_status"] = "clique, not maximal";
        break;
      case CliqueStatus::Absent:
        cj["clique_status"] = "not a clique";
        break;
    }
    cj["polynomial_match"] = c.polynomial_match;
    if (!c.polynomial_match) cj["residual"] = c.residual.to_string();
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["all_pass"] = report.all_pass();
  return dump(j);
}

std::string json_graph(const OrthoGraph& g) {
  Json j;
  j["vertex_count"] = g.size();
  j["edge_count"] = g.edge_count();
  Json verts = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    verts.push_back(g.vertex(i).label());
  }
  j["vertices"] = verts;
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t k = i + 1; k < g.size(); ++k) {
      if (g.adjacent(i, k)) {
        edges.push_back({g.vertex(i).label(), g.vertex(k).label()});
      }
    }
  }
  j["edges"] = edges;
  return dump(j);
}

std::string json_inequality(const LOInequality& ineq) {
  Json j;
  Json clique = Json::array();
  for (const auto& e : ineq.events) clique.push_back(e.label());
  j["clique"] = clique;
  j["maximal"] = ineq.clique.maximal;
  Json subs;
  for (const auto& [v, p] : ineq.substitutions) {
    subs[var_name(v)] = p.to_string();
  }
  j["substitutions"] = subs;
  j["polynomial"] = polynomial_obj(ineq.polynomial);
  j["reduced"] = polynomial_obj(ineq.reduced);
  return dump(j);
}

std::string json_constraints(const ConstraintMatrix& m) {
  Json j;
  j["cliques_seen"] = m.cliques_seen();
  j["count"] = m.size();
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows.push_back(polynomial_obj(m.polynomial(i)));
  }
  j["inequalities"] = rows;
  return dump(j);
}

void write_cliques_json(std::ostream& os, const OrthoGraph& g,
                        const CliqueList& cliques) {
  os << "{\n  \"count\": " << cliques.size() << ",\n  \"cliques\": [";
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    os << (i == 0 ? "\n" : ",\n") << "    [";
    const auto members = cliques[i];
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k) os << ", ";
      os << '"' << g.vertex(members[k]).label() << '"';
    }
    os << "]";
  }
  os << "\n  ]\n}\n";
}

}  // namespace lobound
