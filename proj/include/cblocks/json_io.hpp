#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cblocks/cocycle.hpp"
#include "cblocks/graph.hpp"

namespace cblocks {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

// {"vertices":["v1",...],"edges":[{"id":"f1","ends":["v1","v2"]},...],"legs":[...]}
inline Graph graph_from_json(const json& j) {
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges")) {
      const auto& ends = e.at("ends");
      if (!ends.is_array() || ends.size() != 2)
        throw input_error("edge needs exactly two ends");
      edges.push_back({e.at("id").get<std::string>(), ends[0].get<std::string>(),
                       ends[1].get<std::string>()});
    }
    std::vector<std::string> legs;
    if (j.contains("legs")) legs = j.at("legs").get<std::vector<std::string>>();
    return Graph::make(std::move(vertices), std::move(edges), std::move(legs));
  } catch (const json::exception& e) {
    throw input_error(std::string("bad graph JSON: ") + e.what());
  }
}

inline json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = g.vertex_ids();
  j["edges"] = json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"id", e.id}, {"ends", {g.vertex_ids()[e.u], g.vertex_ids()[e.v]}}});
  json legs = json::array();
  for (int e : g.legs()) legs.push_back(g.edge(e).id);
  j["legs"] = legs;
  return j;
}

// {"v1":["f1+","f2+","f3+"],...} where +/- names the two ends of an edge.
inline RotationSystem rotation_from_json(const Graph& g, const json& j) {
  RotationSystem rot;
  rot.darts.resize(g.vertex_count());
  try {
    for (const auto& [vid, arr] : j.items()) {
      int v = g.vertex_index(vid);
      for (const auto& tok : arr) {
        std::string s = tok.get<std::string>();
        if (s.size() < 2 || (s.back() != '+' && s.back() != '-'))
          throw input_error("rotation entry must be '<edge>+' or '<edge>-': " + s);
        int end = s.back() == '+' ? 0 : 1;
        int e = g.edge_index(s.substr(0, s.size() - 1));
        rot.darts[v].push_back(2 * e + end);
      }
    }
  } catch (const json::exception& e) {
    throw input_error(std::string("bad rotation JSON: ") + e.what());
  }
  validate_rotation(g, rot);
  return rot;
}

inline json rotation_to_json(const Graph& g, const RotationSystem& rot) {
  json j;
  for (int v = 0; v < g.vertex_count(); ++v) {
    json arr = json::array();
    for (int d : rot.darts[v]) arr.push_back(g.edge(d >> 1).id + ((d & 1) ? "-" : "+"));
    j[g.vertex_ids()[v]] = arr;
  }
  return j;
}

// {"basis":[["f3","f4","f5","f6"],...],"coeffs":[{"f1":1,"f8":-1},...]}
inline CocycleSpec cocycle_from_json(const Graph& g, const json& j) {
  try {
    std::vector<Bits> basis;
    for (const auto& cyc : j.at("basis"))
      basis.push_back(g.edge_set(cyc.get<std::vector<std::string>>()));
    std::vector<std::vector<int>> coeffs;
    for (const auto& row : j.at("coeffs")) {
      std::vector<int> c(g.edge_count(), 0);
      for (const auto& [id, val] : row.items()) c[g.edge_index(id)] = val.get<int>();
      coeffs.push_back(std::move(c));
    }
    return CocycleSpec::make(g, std::move(basis), std::move(coeffs));
  } catch (const json::exception& e) {
    throw input_error(std::string("bad cocycle JSON: ") + e.what());
  }
}

inline json cocycle_to_json(const Graph& g, const CocycleSpec& spec) {
  if (spec.table_backed())
    throw input_error("value-table cocycles have no coefficient JSON form");
  json j;
  j["basis"] = json::array();
  for (Bits b : spec.basis()) j["basis"].push_back(g.edge_ids(b));
  j["coeffs"] = json::array();
  for (const auto& row : spec.coeffs()) {
    json o = json::object();
    for (int l = 0; l < g.edge_count(); ++l)
      if (row[l] != 0) o[g.edge(l).id] = row[l];
    j["coeffs"].push_back(o);
  }
  return j;
}

}  // namespace cblocks
