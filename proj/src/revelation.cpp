#include "evdeg/revelation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evdeg/errors.hpp"

namespace evdeg {

bool Revelation::has(int v) const { return index_of(v) >= 0; }

int Revelation::index_of(int v) const {
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) return int(it - a.begin());
  return -1;
}

int Revelation::deg_in_h(int v) const {
  int d = 0;
  for (auto [x, y] : h)
    if (x == v || y == v) ++d;
  return d;
}

void Revelation::validate(int n) const {
  if (!std::is_sorted(a.begin(), a.end()) ||
      std::adjacent_find(a.begin(), a.end()) != a.end())
    throw InputError("revelation: A must be strictly ascending");
  if (!a.empty() && (a.front() < 0 || a.back() >= n))
    throw InputError("revelation: A not within 0..n-1");
  if (degParity.size() != a.size())
    throw InputError("revelation: degree-parity table must align with A");
  for (auto [u, v] : h) {
    if (u >= v) throw InputError("revelation: H edges must have u < v");
    if (!has(u) || !has(v)) throw InputError("revelation: H edge endpoint outside A");
  }
  for (uint8_t b : degParity)
    if (b > 1) throw InputError("revelation: parity bits must be 0 or 1");
  if (edgeParity > 1) throw InputError("revelation: edge parity must be 0 or 1");
}

bool verify_revelation(const Graph& g, const Revelation& rev) {
  rev.validate(g.vertex_count());
  // G[A] == H
  for (size_t i = 0; i < rev.a.size(); ++i)
    for (size_t j = i + 1; j < rev.a.size(); ++j) {
      bool inH = std::find(rev.h.begin(), rev.h.end(),
                           std::make_pair(rev.a[i], rev.a[j])) != rev.h.end();
      if (g.has_edge(rev.a[i], rev.a[j]) != inH) return false;
    }
  for (size_t i = 0; i < rev.a.size(); ++i)
    if ((g.degree(rev.a[i]) & 1) != rev.degParity[i]) return false;
  return (g.edge_count() & 1) == rev.edgeParity;
}

std::string revelation_to_json(const Revelation& rev) {
  nlohmann::json j;
  j["A"] = rev.a;
  auto& h = j["H"] = nlohmann::json::array();
  for (auto [u, v] : rev.h) h.push_back({u, v});
  auto& dp = j["deg_parity"] = nlohmann::json::object();
  for (size_t i = 0; i < rev.a.size(); ++i) dp[std::to_string(rev.a[i])] = int(rev.degParity[i]);
  j["edge_parity"] = int(rev.edgeParity);
  j["alpha"] = rev.alpha;
  return j.dump(2) + "\n";
}

Revelation revelation_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("revelation JSON: ") + e.what());
  }
  Revelation rev;
  try {
    rev.a = j.at("A").get<std::vector<int>>();
    for (const auto& e : j.at("H")) rev.h.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    rev.degParity.resize(rev.a.size(), 0);
    const auto& dp = j.at("deg_parity");
    for (size_t i = 0; i < rev.a.size(); ++i)
      rev.degParity[i] = uint8_t(dp.at(std::to_string(rev.a[i])).get<int>());
    rev.edgeParity = uint8_t(j.at("edge_parity").get<int>());
    rev.alpha = j.value("alpha", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("revelation JSON: ") + e.what());
  }
  for (auto& [u, v] : rev.h)
    if (u > v) std::swap(u, v);
  std::sort(rev.h.begin(), rev.h.end());
  return rev;
}

Revelation read_revelation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open revelation file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return revelation_from_json(ss.str());
}

}  // namespace evdeg
