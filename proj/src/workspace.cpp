#include "topos/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace topos {

namespace {

using nlohmann::json;

CatPtr parse_category(const json& j, const Budget& budget) {
  if (j.contains("builtin")) {
    const std::string key = j.at("builtin").get<std::string>();
    if (key == "parallel_pair") return builtin_parallel_pair();
    if (key == "interval") return builtin_interval();
    if (key == "discrete") return builtin_discrete(j.at("n").get<int>());
    if (key == "poset") {
      std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
      std::vector<std::pair<std::string, std::string>> le;
      for (const auto& pair : j.at("le"))
        le.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
      return builtin_poset(elements, le);
    }
    if (key == "one_object_group") {
      return builtin_one_object_group(j.at("elements").get<std::vector<std::string>>(),
                                      j.at("table").get<std::vector<std::vector<int>>>());
    }
    fail(errc::unknown_catalog_key, "no builtin '" + key + "'");
  }
  RawCategory raw;
  if (j.contains("objects")) raw.objects = j.at("objects").get<std::vector<std::string>>();
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms"))
      raw.morphisms.push_back({m.at("name").get<std::string>(), m.at("dom").get<std::string>(),
                               m.at("cod").get<std::string>()});
  if (j.contains("composition"))
    for (const auto& t : j.at("composition"))
      raw.composition.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(),
                                 t.at(2).get<std::string>()});
  return build_category(raw, budget);
}

Presheaf parse_presheaf(const CatPtr& cat, const json& j) {
  const FinCategory& k = *cat;
  std::vector<std::vector<std::string>> elems(k.objects.size());
  for (const auto& [obj, list] : j.at("carrier").items())
    elems[k.object_index(obj)] = list.get<std::vector<std::string>>();
  for (auto& e : elems) std::sort(e.begin(), e.end());

  std::vector<std::vector<int>> act(k.morphisms.size());
  for (size_t o = 0; o < k.objects.size(); ++o) {
    act[k.identity[o]].resize(elems[o].size());
    for (size_t i = 0; i < elems[o].size(); ++i) act[k.identity[o]][i] = static_cast<int>(i);
  }
  auto eindex = [&](int o, const std::string& id) {
    auto it = std::lower_bound(elems[o].begin(), elems[o].end(), id);
    if (it == elems[o].end() || *it != id)
      fail(errc::parse_error, "unknown element '" + id + "'");
    return static_cast<int>(it - elems[o].begin());
  };
  if (j.contains("action"))
    for (const auto& [name, table] : j.at("action").items()) {
      int m = k.morphism_index(name);
      act[m].assign(elems[k.morphisms[m].cod].size(), -1);
      for (const auto& [from, to] : table.items())
        act[m][eindex(k.morphisms[m].cod, from)] =
            eindex(k.morphisms[m].dom, to.get<std::string>());
      for (int v : act[m])
        if (v < 0) fail(errc::parse_error, "action of '" + name + "' is partial");
    }
  return make_presheaf(cat, std::move(elems), std::move(act));
}

FinGroup parse_group(const json& j, const Budget& budget) {
  std::string name = j.value("name", std::string("G"));
  if (j.contains("table"))
    return group_from_table(name, j.at("elements").get<std::vector<std::string>>(),
                            j.at("table").get<std::vector<std::vector<int>>>());
  if (j.contains("generators"))
    return group_from_generators(name, j.at("degree").get<int>(),
                                 j.at("generators").get<std::vector<std::vector<int>>>(),
                                 budget);
  fail(errc::parse_error, "group needs a table or generators");
}

}  // namespace

Workspace load_workspace(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse_error, e.what());
  }
  try {
    Workspace ws;
    if (j.contains("budgets")) {
      const auto& b = j.at("budgets");
      ws.budget.max_objects = b.value("max_objects", ws.budget.max_objects);
      ws.budget.max_morphisms = b.value("max_morphisms", ws.budget.max_morphisms);
      ws.budget.max_carrier = b.value("max_carrier", ws.budget.max_carrier);
      ws.budget.max_enumeration = b.value("max_enumeration", ws.budget.max_enumeration);
      ws.budget.max_group_order = b.value("max_group_order", ws.budget.max_group_order);
      ws.budget.max_generic_group = b.value("max_generic_group", ws.budget.max_generic_group);
      ws.budget.max_topology_group =
          b.value("max_topology_group", ws.budget.max_topology_group);
      ws.budget.max_hom_fiber = b.value("max_hom_fiber", ws.budget.max_hom_fiber);
      ws.budget.max_closure_object =
          b.value("max_closure_object", ws.budget.max_closure_object);
      if (ws.budget.max_objects <= 0 || ws.budget.max_morphisms <= 0 ||
          ws.budget.max_carrier == 0 || ws.budget.max_enumeration == 0 ||
          ws.budget.max_group_order <= 0 || ws.budget.max_generic_group <= 0 ||
          ws.budget.max_topology_group <= 0 || ws.budget.max_hom_fiber <= 0 ||
          ws.budget.max_closure_object <= 0)
        fail(errc::parse_error, "budgets must be positive");
    }
    if (j.contains("category")) ws.cat = parse_category(j.at("category"), ws.budget);
    if (j.contains("presheaves")) {
      if (!ws.cat) fail(errc::parse_error, "presheaves need a category section");
      for (const auto& [name, pj] : j.at("presheaves").items())
        ws.presheaves.emplace_back(name, parse_presheaf(ws.cat, pj));
      std::sort(ws.presheaves.begin(), ws.presheaves.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    if (j.contains("group")) ws.group = parse_group(j.at("group"), ws.budget);
    if (j.contains("site")) {
      if (!ws.cat) fail(errc::parse_error, "a site needs a category section");
      std::vector<std::vector<std::vector<std::string>>> gens(ws.cat->objects.size());
      if (j.at("site").contains("covers"))
        for (const auto& [obj, families] : j.at("site").at("covers").items())
          for (const auto& family : families)
            gens[ws.cat->object_index(obj)].push_back(
                family.get<std::vector<std::string>>());
      ws.site = validate_topology(ws.cat, gens, ws.budget);
    }
    return ws;
  } catch (const json::exception& e) {
    fail(errc::parse_error, e.what());
  }
}

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_workspace(buf.str());
}

}  // namespace topos
