/* Copyright 2026 The HIO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "hio/scenario_io.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace hio {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename T>
T get_field(const json& node, const char* key, const std::string& where) {
  auto it = node.find(key);
  if (it == node.end()) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": bad field '" + key + "': " + e.what());
  }
}

const json& section(const json& root, const char* key) {
  auto it = root.find(key);
  if (it == root.end()) throw ParseError(std::string("missing section '") + key + "'");
  return *it;
}

// Entries carry explicit ids; order them by id before use so file order
// does not matter.
std::vector<json> sorted_by_id(const json& list, const char* what) {
  if (!list.is_array()) throw ParseError(std::string("section '") + what + "' must be a list");
  std::vector<json> items(list.begin(), list.end());
  for (const auto& item : items) {
    if (!item.is_object() || !item.contains("id"))
      throw ParseError(std::string(what) + ": every entry needs an 'id'");
  }
  std::stable_sort(items.begin(), items.end(), [](const json& a, const json& b) {
    return a.at("id").get<int>() < b.at("id").get<int>();
  });
  return items;
}

json to_json(const Scenario& s) {
  json root;
  root["schema_version"] = kSchemaVersion;
  root["name"] = s.name;
  root["mode"] = mode_name(s.mode);
  root["client_accuracy_factor"] = s.accuracy.client_factor;

  json models = json::array();
  for (const auto& m : s.models) {
    json j;
    j["id"] = m.id;
    j["memory_bytes"] = m.memory_bytes;
    j["client_memory_bytes"] = m.client_memory_bytes;
    j["compute_per_query"] = m.compute_per_query;
    j["supported_tasks"] = m.supported_tasks;
    if (!m.setup_cost.empty()) j["setup_cost"] = m.setup_cost;
    models.push_back(j);
  }
  root["models"] = models;

  json tasks = json::array();
  for (const auto& t : s.tasks) tasks.push_back({{"id", t.id}, {"input_bytes", t.input_bytes}});
  root["tasks"] = tasks;

  json clients = json::array();
  for (int c = 0; c < s.num_clients(); ++c) {
    const auto& b = s.topology.clients[c];
    clients.push_back({{"id", c},
                       {"edge", s.topology.assignment[c]},
                       {"memory_bytes", b.memory_bytes},
                       {"compute_capacity", b.compute_capacity}});
  }
  root["clients"] = clients;

  json edges = json::array();
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& b = s.topology.edges[e];
    edges.push_back({{"id", e},
                     {"memory_bytes", b.memory_bytes},
                     {"compute_capacity", b.compute_capacity},
                     {"uplink", s.topology.edge_uplink[e]},
                     {"accuracy", s.accuracy.per_edge[e]}});
  }
  root["edges"] = edges;
  root["cloud"] = {{"uplink", s.topology.cloud_uplink}, {"accuracy", s.accuracy.cloud}};
  root["workload"] = {{"rates", s.workload.rates}};
  if (s.batch_interval) root["batching"] = {{"interval", *s.batch_interval}};
  return root;
}

Scenario from_json(const json& root) {
  if (!root.is_object()) throw ParseError("scenario root must be an object");
  int version = get_field<int>(root, "schema_version", "scenario");
  if (version != kSchemaVersion)
    throw ParseError("unsupported schema_version " + std::to_string(version));

  Scenario s;
  s.name = root.value("name", std::string());
  s.mode = parse_mode(root.value("mode", std::string("plain")));
  s.accuracy.client_factor = root.value("client_accuracy_factor", 0.9);

  for (const json& j : sorted_by_id(section(root, "models"), "models")) {
    ModelProfile m;
    m.id = get_field<int>(j, "id", "model");
    const std::string where = "model " + std::to_string(m.id);
    m.memory_bytes = get_field<double>(j, "memory_bytes", where);
    m.client_memory_bytes = j.contains("client_memory_bytes")
                                ? get_field<double>(j, "client_memory_bytes", where)
                                : m.memory_bytes;
    m.compute_per_query = get_field<double>(j, "compute_per_query", where);
    m.supported_tasks = get_field<std::vector<int>>(j, "supported_tasks", where);
    std::sort(m.supported_tasks.begin(), m.supported_tasks.end());
    if (j.contains("setup_cost")) m.setup_cost = get_field<std::vector<double>>(j, "setup_cost", where);
    s.models.push_back(std::move(m));
  }

  for (const json& j : sorted_by_id(section(root, "tasks"), "tasks")) {
    TaskProfile t;
    t.id = get_field<int>(j, "id", "task");
    t.input_bytes = get_field<double>(j, "input_bytes", "task " + std::to_string(t.id));
    s.tasks.push_back(t);
  }

  for (const json& j : sorted_by_id(section(root, "clients"), "clients")) {
    int id = get_field<int>(j, "id", "client");
    if (id != static_cast<int>(s.topology.clients.size()))
      throw ValidationError("client ids must be 0..C-1");
    const std::string where = "client " + std::to_string(id);
    s.topology.assignment.push_back(get_field<int>(j, "edge", where));
    s.topology.clients.push_back({get_field<double>(j, "memory_bytes", where),
                                  get_field<double>(j, "compute_capacity", where)});
  }

  for (const json& j : sorted_by_id(section(root, "edges"), "edges")) {
    int id = get_field<int>(j, "id", "edge");
    if (id != static_cast<int>(s.topology.edges.size()))
      throw ValidationError("edge ids must be 0..E-1");
    const std::string where = "edge " + std::to_string(id);
    s.topology.edges.push_back({get_field<double>(j, "memory_bytes", where),
                                get_field<double>(j, "compute_capacity", where)});
    s.topology.edge_uplink.push_back(get_field<double>(j, "uplink", where));
    s.accuracy.per_edge.push_back(
        get_field<std::vector<std::vector<double>>>(j, "accuracy", where));
  }

  const json& cloud = section(root, "cloud");
  s.topology.cloud_uplink = get_field<double>(cloud, "uplink", "cloud");
  s.accuracy.cloud = get_field<std::vector<double>>(cloud, "accuracy", "cloud");

  s.workload.rates =
      get_field<std::vector<std::vector<double>>>(section(root, "workload"), "rates", "workload");

  if (auto it = root.find("batching"); it != root.end() && !it->is_null()) {
    if (it->contains("interval")) s.batch_interval = get_field<double>(*it, "interval", "batching");
  }
  s.validate();
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F fmt) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt(values[i]);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string model_token(int m) { return m == kNullModel ? "-" : std::to_string(m); }

int parse_model_token(const std::string& tok) {
  if (tok == "-") return kNullModel;
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw ParseError("bad model id '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad model id '" + tok + "'");
  }
}

double parse_double_token(const std::string& tok) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw ParseError("bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + tok + "'");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  return from_json(root);
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string serialize_scenario(const Scenario& s, int indent) { return to_json(s).dump(indent); }

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_scenario(s) << "\n";
}

std::string canonical_hash(const Scenario& s) {
  // nlohmann::json keeps object keys sorted and prints doubles round-trip exact.
  const std::string canonical = to_json(s).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string serialize_plan(const Plan& p) {
  std::ostringstream out;
  write_plan(p, out);
  return out.str();
}

void write_plan(const Plan& p, std::ostream& out) {
  const auto& on = p.onload;
  auto ids = [](int m) { return std::to_string(m); };
  out << "plan_version = 1\n";
  out << "clients = " << on.client_models.size() << "\n";
  out << "edges = " << on.edge_models.size() << "\n";
  for (size_t c = 0; c < on.client_models.size(); ++c) {
    out << "client." << c << ".models = " << join(on.client_models[c], ids) << "\n";
    out << "client." << c << ".assign = " << join(on.client_assign[c], model_token) << "\n";
    out << "client." << c << ".to_edge = " << join(p.offload.to_edge[c], format_double) << "\n";
    out << "client." << c << ".to_cloud = " << join(p.offload.to_cloud[c], format_double) << "\n";
  }
  for (size_t e = 0; e < on.edge_models.size(); ++e) {
    out << "edge." << e << ".models = " << join(on.edge_models[e], ids) << "\n";
    out << "edge." << e << ".assign = " << join(on.edge_assign[e], model_token) << "\n";
  }
}

Plan parse_plan(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("plan line " + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("plan: missing key '" + key + "'");
    return it->second;
  };
  if (get("plan_version") != "1") throw ParseError("plan: unsupported plan_version");
  const int C = static_cast<int>(parse_double_token(get("clients")));
  const int E = static_cast<int>(parse_double_token(get("edges")));
  if (C < 0 || E < 0) throw ParseError("plan: negative node count");

  auto models = [&](const std::string& key) {
    std::vector<int> out;
    for (const auto& tok : split(get(key), ',')) out.push_back(parse_model_token(trim(tok)));
    return out;
  };
  auto fractions = [&](const std::string& key) {
    std::vector<double> out;
    for (const auto& tok : split(get(key), ',')) out.push_back(parse_double_token(trim(tok)));
    return out;
  };

  Plan p;
  for (int c = 0; c < C; ++c) {
    const std::string base = "client." + std::to_string(c);
    p.onload.client_models.push_back(models(base + ".models"));
    p.onload.client_assign.push_back(models(base + ".assign"));
    p.offload.to_edge.push_back(fractions(base + ".to_edge"));
    p.offload.to_cloud.push_back(fractions(base + ".to_cloud"));
  }
  for (int e = 0; e < E; ++e) {
    const std::string base = "edge." + std::to_string(e);
    p.onload.edge_models.push_back(models(base + ".models"));
    p.onload.edge_assign.push_back(models(base + ".assign"));
  }
  return p;
}

Plan load_plan(const std::string& path) { return parse_plan(read_file(path)); }

}  // namespace hio
