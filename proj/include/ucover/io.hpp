#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucover/common.hpp"
#include "ucover/distribution.hpp"
#include "ucover/edgecover.hpp"
#include "ucover/facility.hpp"
#include "ucover/instance.hpp"
#include "ucover/multicut.hpp"
#include "ucover/setcover.hpp"

// JSON readers and writers for every on-disk format. Output objects keep
// insertion order so serialization is reproducible byte for byte.

namespace ucover {

using Json = nlohmann::ordered_json;

namespace io {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

inline std::vector<int> int_list(const Json& j) {
  std::vector<int> out;
  for (const auto& v : j) out.push_back(v.get<int>());
  return out;
}

}  // namespace io

// Instance: {"n": int, "sets": [{"id", "cost", "elements"}], "requirements": [int]?}
inline Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.n = j.at("n").get<int>();
  for (const auto& js : j.at("sets")) {
    CoverSet s;
    s.id = js.at("id").get<std::string>();
    s.cost = js.at("cost").get<double>();
    s.elements = ElemSet::of(inst.n, io::int_list(js.at("elements")));
    inst.sets.push_back(std::move(s));
  }
  if (j.contains("requirements")) inst.requirements = io::int_list(j.at("requirements"));
  inst.validate();
  return inst;
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.n;
  j["sets"] = Json::array();
  for (const auto& s : inst.sets) {
    Json js;
    js["id"] = s.id;
    js["cost"] = s.cost;
    js["elements"] = s.elements.to_vector();
    j["sets"].push_back(std::move(js));
  }
  if (!inst.requirements.empty()) j["requirements"] = inst.requirements;
  return j;
}

// Distribution: {"type": "scenario"|"independent", ...}
inline Distribution distribution_from_json(const Json& j, int universe) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "scenario") {
    std::vector<Scenario> scs;
    for (const auto& js : j.at("scenarios")) {
      Scenario sc;
      sc.prob = js.at("prob").get<double>();
      sc.elements = ElemSet::of(universe, io::int_list(js.at("elements")));
      scs.push_back(std::move(sc));
    }
    return Distribution::scenarios(universe, std::move(scs));
  }
  if (type == "independent") {
    std::vector<double> probs;
    for (const auto& v : j.at("probs")) probs.push_back(v.get<double>());
    if (static_cast<int>(probs.size()) != universe)
      throw ValidationError("independent distribution length differs from universe");
    return Distribution::independent(std::move(probs));
  }
  throw ValidationError("unknown distribution type: " + type);
}

inline Json distribution_to_json(const Distribution& dist) {
  Json j;
  switch (dist.kind()) {
    case Distribution::Kind::scenario: {
      j["type"] = "scenario";
      j["scenarios"] = Json::array();
      for (const auto& sc : dist.scenario_list()) {
        Json js;
        js["prob"] = sc.prob;
        js["elements"] = sc.elements.to_vector();
        j["scenarios"].push_back(std::move(js));
      }
      break;
    }
    case Distribution::Kind::independent:
      j["type"] = "independent";
      j["probs"] = dist.activation_probs();
      break;
    case Distribution::Kind::sampler:
      throw ValidationError("sampler distributions have no file form");
  }
  return j;
}

// Mapping: {"assignment": {"<element>": ["<set_id>", ...]}}
inline Json mapping_to_json(const Instance& inst, const Mapping& phi) {
  Json j;
  Json assignment = Json::object();
  for (int u = 0; u < inst.n; ++u) {
    Json ids = Json::array();
    for (int s : phi.sets_of[u]) ids.push_back(inst.sets[s].id);
    assignment[std::to_string(u)] = std::move(ids);
  }
  j["assignment"] = std::move(assignment);
  return j;
}

inline Mapping mapping_from_json(const Instance& inst, const Json& j) {
  Mapping phi;
  phi.sets_of.assign(inst.n, {});
  const auto& assignment = j.at("assignment");
  for (auto it = assignment.begin(); it != assignment.end(); ++it) {
    int u = std::stoi(it.key());
    if (u < 0 || u >= inst.n) throw ValidationError("mapping element out of range");
    for (const auto& sid : it.value()) {
      int s = inst.set_index(sid.get<std::string>());
      if (s < 0) throw ValidationError("mapping names unknown set: " +
                                       sid.get<std::string>());
      phi.sets_of[u].push_back(s);
    }
  }
  return phi;
}

// FractionalCover dump: {"value", "columns": [{"set","B","y"}], "duals"}
inline Json fractional_to_json(const Instance& inst, const FractionalCover& frac) {
  Json j;
  j["value"] = frac.value;
  j["columns"] = Json::array();
  for (const auto& col : frac.columns) {
    Json jc;
    jc["set"] = inst.sets[col.set].id;
    jc["B"] = col.subset.to_vector();
    jc["y"] = col.y;
    j["columns"].push_back(std::move(jc));
  }
  j["duals"] = frac.duals;
  return j;
}

// Facility instance: {"clients":[{"p"}], "facilities":[{"id","open_cost"}],
//                     "dist": [[..]], "metric": bool}
inline FlInstance fl_from_json(const Json& j) {
  FlInstance inst;
  for (const auto& jc : j.at("clients")) inst.client_probs.push_back(jc.at("p").get<double>());
  for (const auto& jf : j.at("facilities"))
    inst.facilities.push_back(
        {jf.at("id").get<std::string>(), jf.at("open_cost").get<double>()});
  for (const auto& row : j.at("dist")) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.get<double>());
    inst.dist.push_back(std::move(r));
  }
  inst.metric = j.value("metric", false);
  inst.validate();
  return inst;
}

inline Json fl_to_json(const FlInstance& inst) {
  Json j;
  j["clients"] = Json::array();
  for (double p : inst.client_probs) j["clients"].push_back(Json{{"p", p}});
  j["facilities"] = Json::array();
  for (const auto& f : inst.facilities)
    j["facilities"].push_back(Json{{"id", f.id}, {"open_cost", f.open_cost}});
  j["dist"] = inst.dist;
  j["metric"] = inst.metric;
  return j;
}

inline Json fl_mapping_to_json(const FlInstance& inst, const FlMapping& phi) {
  Json assignment = Json::object();
  for (int c = 0; c < inst.num_clients(); ++c)
    assignment[std::to_string(c)] = inst.facilities[phi.facility_of[c]].id;
  return Json{{"assignment", std::move(assignment)}};
}

inline FlMapping fl_mapping_from_json(const FlInstance& inst, const Json& j) {
  FlMapping phi;
  phi.facility_of.assign(inst.num_clients(), -1);
  const auto& assignment = j.at("assignment");
  for (auto it = assignment.begin(); it != assignment.end(); ++it) {
    int c = std::stoi(it.key());
    if (c < 0 || c >= inst.num_clients())
      throw ValidationError("facility mapping client out of range");
    int f = inst.facility_index(it.value().get<std::string>());
    if (f < 0) throw ValidationError("facility mapping names unknown facility");
    phi.facility_of[c] = f;
  }
  return phi;
}

// Multicut instance: {"nodes", "edges":[{"u","v","cost"}], "pairs":[{"s","t","p"}]}
inline McTreeInstance mc_from_json(const Json& j) {
  McTreeInstance inst;
  inst.nodes = j.at("nodes").get<int>();
  for (const auto& je : j.at("edges"))
    inst.edges.push_back(
        {je.at("u").get<int>(), je.at("v").get<int>(), je.at("cost").get<double>()});
  for (const auto& jp : j.at("pairs"))
    inst.pairs.push_back(
        {jp.at("s").get<int>(), jp.at("t").get<int>(), jp.at("p").get<double>()});
  inst.validate();
  return inst;
}

inline Json mc_to_json(const McTreeInstance& inst) {
  Json j;
  j["nodes"] = inst.nodes;
  j["edges"] = Json::array();
  for (const auto& e : inst.edges)
    j["edges"].push_back(Json{{"u", e.u}, {"v", e.v}, {"cost", e.cost}});
  j["pairs"] = Json::array();
  for (const auto& p : inst.pairs)
    j["pairs"].push_back(Json{{"s", p.s}, {"t", p.t}, {"p", p.prob}});
  return j;
}

// Multicut output: {"cuts": {"<pair index>": [[u, v], ...]}}
inline Json mc_mapping_to_json(const McTreeInstance& inst, const McMapping& phi) {
  Json cuts = Json::object();
  for (int c = 0; c < inst.num_pairs(); ++c) {
    Json list = Json::array();
    for (int e : phi.cut_edges[c])
      list.push_back(Json::array({inst.edges[e].u, inst.edges[e].v}));
    cuts[std::to_string(c)] = std::move(list);
  }
  return Json{{"cuts", std::move(cuts)}};
}

inline McMapping mc_mapping_from_json(const McTreeInstance& inst, const Json& j) {
  McMapping phi;
  phi.cut_edges.assign(inst.num_pairs(), {});
  const auto& cuts = j.at("cuts");
  for (auto it = cuts.begin(); it != cuts.end(); ++it) {
    int c = std::stoi(it.key());
    if (c < 0 || c >= inst.num_pairs())
      throw ValidationError("multicut mapping pair index out of range");
    for (const auto& uv : it.value()) {
      int u = uv.at(0).get<int>(), v = uv.at(1).get<int>();
      int found = -1;
      for (int e = 0; e < inst.num_edges(); ++e) {
        if ((inst.edges[e].u == u && inst.edges[e].v == v) ||
            (inst.edges[e].u == v && inst.edges[e].v == u))
          found = e;
      }
      if (found < 0) throw ValidationError("multicut mapping names unknown edge");
      phi.cut_edges[c].push_back(found);
    }
  }
  return phi;
}

// Graph (vertex/edge cover): multicut shape minus pairs; vertex costs are
// optional and used by the vertex-cover lowering.
inline GraphInstance graph_from_json(const Json& j) {
  GraphInstance g;
  g.nodes = j.at("nodes").get<int>();
  for (const auto& je : j.at("edges"))
    g.edges.push_back(
        {je.at("u").get<int>(), je.at("v").get<int>(), je.at("cost").get<double>()});
  g.validate();
  return g;
}

inline std::vector<double> vertex_costs_from_json(const Json& j, int nodes) {
  if (!j.contains("vertex_costs")) return std::vector<double>(nodes, 1.0);
  std::vector<double> costs;
  for (const auto& v : j.at("vertex_costs")) costs.push_back(v.get<double>());
  if (static_cast<int>(costs.size()) != nodes)
    throw ValidationError("vertex_costs length differs from node count");
  return costs;
}

}  // namespace ucover
