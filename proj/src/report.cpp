#include "topos/report.hpp"

#include <algorithm>
#include <future>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "topos/classifiers.hpp"
#include "topos/hyperquot.hpp"

namespace topos {

namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

std::string render(const Rows& rows, Format fmt) {
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : rows) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& [k, v] : rows) {
    if (fmt == Format::tsv)
      out << k << "\t" << v << "\n";
    else
      out << k << ": " << v << "\n";
  }
  return out.str();
}

std::string fiber_sizes(const FinCategory& cat, const Presheaf& p) {
  std::ostringstream out;
  for (size_t c = 0; c < cat.objects.size(); ++c) {
    if (c) out << " ";
    out << cat.objects[c] << ":" << p.elems[c].size();
  }
  return out.str();
}

std::string state_list(const FinCategory& cat, const Presheaf& carrier,
                       const Subpresheaf& sub) {
  std::ostringstream out;
  for (size_t c = 0; c < cat.objects.size(); ++c) {
    if (c) out << " ";
    out << cat.objects[c] << ":{";
    bool first = true;
    for (size_t i = 0; i < sub.mask[c].size(); ++i)
      if (sub.mask[c][i]) {
        if (!first) out << ", ";
        out << carrier.elems[c][i];
        first = false;
      }
    out << "}";
  }
  return out.str();
}

// category section if present, else the one-object category of the group
CatPtr workspace_category(const Workspace& ws) {
  if (ws.cat) return ws.cat;
  if (ws.group) return group_category(*ws.group);
  fail(errc::parse_error, "this command needs a category or group section");
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "tsv") return Format::tsv;
  if (name == "dot") return Format::dot;
  fail(errc::parse_error, "unknown format '" + name + "'");
}

std::string report_omega(const Workspace& ws, Format fmt) {
  CatPtr cat = workspace_category(ws);
  OmegaObject om = subobject_classifier(cat, ws.budget);
  if (fmt == Format::dot) {
    std::string out;
    for (size_t c = 0; c < cat->objects.size(); ++c)
      out += fiber_hasse_dot(om.sl, static_cast<int>(c), "omega_" + cat->objects[c]);
    return out;
  }
  Rows rows;
  rows.emplace_back("Ω fibers", fiber_sizes(*cat, om.omega()));
  for (size_t c = 0; c < cat->objects.size(); ++c) {
    std::ostringstream line;
    for (size_t i = 0; i < om.omega().elems[c].size(); ++i)
      line << (i ? " " : "") << om.omega().elems[c][i];
    rows.emplace_back("sieves on " + cat->objects[c], line.str());
  }
  return render(rows, fmt);
}

std::string report_lsc(const Workspace& ws, Format fmt) {
  CatPtr cat = workspace_category(ws);
  XiObject xi = local_state_classifier(cat, ws.budget);
  if (fmt == Format::dot) {
    std::string out;
    for (size_t c = 0; c < cat->objects.size(); ++c)
      out += fiber_hasse_dot(xi.sl, static_cast<int>(c), "xi_" + cat->objects[c]);
    return out;
  }
  Rows rows;
  rows.emplace_back("Ξ fibers", fiber_sizes(*cat, xi.xi()));
  rows.emplace_back("terminal", xi_is_terminal(xi) ? "yes" : "no");
  for (size_t c = 0; c < cat->objects.size(); ++c) {
    std::ostringstream line;
    for (size_t i = 0; i < xi.xi().elems[c].size(); ++i)
      line << (i ? " " : "") << xi.xi().elems[c][i];
    rows.emplace_back("states at " + cat->objects[c], line.str());
  }
  for (const auto& [name, p] : ws.presheaves) {
    NatTrans st = xi_component(xi, p);
    std::ostringstream line;
    bool first = true;
    for (size_t c = 0; c < cat->objects.size(); ++c)
      for (size_t i = 0; i < p.elems[c].size(); ++i) {
        if (!first) line << " ";
        line << p.elems[c][i] << "→" << xi.xi().elems[c][st.comp[c][i]];
        first = false;
      }
    rows.emplace_back("states of " + name, line.str());
  }
  return render(rows, fmt);
}

std::string report_filters(const Workspace& ws, Format fmt) {
  CatPtr cat = workspace_category(ws);
  XiObject xi = local_state_classifier(cat, ws.budget);
  auto filters = enumerate_filters(xi.sl, ws.budget);
  Rows rows;
  rows.emplace_back("internal filters", std::to_string(filters.size()));
  for (size_t i = 0; i < filters.size(); ++i)
    rows.emplace_back("filter " + std::to_string(i),
                      state_list(*cat, xi.xi(), filters[i].sub));
  return render(rows, fmt);
}

std::string report_quotients(const Workspace& ws, Format fmt) {
  CatPtr cat = workspace_category(ws);
  auto xi = std::make_shared<const XiObject>(local_state_classifier(cat, ws.budget));
  auto quotients = enumerate_quotients(xi, ws.budget);
  if (fmt == Format::dot) {
    std::ostringstream out;
    out << "digraph quotients {\n  rankdir=LR;\n";
    for (size_t q = 0; q < quotients.size(); ++q)
      out << "  q" << q << " [shape=box,label=\"Q" << q << "\"];\n";
    for (size_t p = 0; p < ws.presheaves.size(); ++p)
      out << "  p" << p << " [label=\"" << ws.presheaves[p].first << "\"];\n";
    for (size_t q = 0; q < quotients.size(); ++q)
      for (size_t p = 0; p < ws.presheaves.size(); ++p)
        if (membership(quotients[q], ws.presheaves[p].second))
          out << "  q" << q << " -> p" << p << ";\n";
    out << "}\n";
    return out.str();
  }
  Rows rows;
  rows.emplace_back("hyperconnected quotients", std::to_string(quotients.size()));
  if (is_boolean(cat, ws.budget))
    rows.emplace_back("boolean", "yes: the enumeration classifies all quotients");
  for (size_t q = 0; q < quotients.size(); ++q)
    rows.emplace_back("Q" + std::to_string(q) + " filter",
                      state_list(*cat, xi->xi(), quotients[q].filter.sub));
  for (const auto& [name, p] : ws.presheaves) {
    std::ostringstream line;
    for (size_t q = 0; q < quotients.size(); ++q)
      line << (q ? " " : "") << "Q" << q << ":"
           << (membership(quotients[q], p) ? "member" : "non-member");
    rows.emplace_back(name, line.str());
  }
  return render(rows, fmt);
}

std::string report_coreflect(const Workspace& ws, Format fmt) {
  CatPtr cat = workspace_category(ws);
  auto xi = std::make_shared<const XiObject>(local_state_classifier(cat, ws.budget));
  auto quotients = enumerate_quotients(xi, ws.budget);
  Rows rows;
  for (size_t q = 0; q < quotients.size(); ++q)
    for (const auto& [name, p] : ws.presheaves) {
      Coreflection co = coreflect(quotients[q], p);
      rows.emplace_back("Q" + std::to_string(q) + " coreflection of " + name,
                        state_list(*cat, p, co.sub));
    }
  return render(rows, fmt);
}

std::string report_group(const Workspace& ws, Format fmt) {
  if (!ws.group) fail(errc::parse_error, "this command needs a group section");
  const FinGroup& g = *ws.group;
  SubgroupLattice lat = subgroup_lattice(g, ws.budget);
  if (fmt == Format::dot) return subgroup_lattice_dot(g, lat, "sub_" + g.name);
  Rows rows;
  rows.emplace_back("group", g.name);
  rows.emplace_back("order", std::to_string(g.size()));
  rows.emplace_back("subgroups", std::to_string(lat.subgroups.size()));
  auto normals = normal_subgroups(g, lat);
  rows.emplace_back("normal subgroups", std::to_string(normals.size()));
  auto ccf = conjugate_closed_filters(lat);
  rows.emplace_back("conjugate closed filters", std::to_string(ccf.size()));
  rows.emplace_back("quotients of the action topos", std::to_string(ccf.size()));
  if (g.size() <= ws.budget.max_topology_group) {
    bool round = true;
    for (const auto& f : ccf)
      round = round && topology_to_filter(g, lat, filter_to_topology(g, lat, f, ws.budget)) == f;
    rows.emplace_back("topology round trip", round ? "ok" : "FAILED");
  }
  if (g.size() <= ws.budget.max_generic_group) {
    CrosscheckReport cc = crosscheck_generic(g, ws.budget);
    rows.emplace_back("generic crosscheck",
                      cc.ok ? "ok (" + std::to_string(cc.checks.size()) + " checks)"
                            : "FAILED: " + cc.witness);
  }
  return render(rows, fmt);
}

std::string report_species(int max_degree, Format fmt, const Budget& budget) {
  auto counts = species_quotient_counts(max_degree, budget);
  std::ostringstream line;
  for (size_t i = 0; i < counts.size(); ++i) line << (i ? " " : "") << counts[i];
  Rows rows;
  rows.emplace_back("per-degree quotient counts", line.str());
  return render(rows, fmt);
}

std::string report_site_lsc(const Workspace& ws, Format fmt) {
  CatPtr cat = workspace_category(ws);
  GrothendieckTopology topo = ws.site ? *ws.site : trivial_topology(cat, ws.budget);
  SiteXi sx = lsc_of_site(cat, topo, ws.budget);
  Rows rows;
  rows.emplace_back("Ξ fibers", fiber_sizes(*cat, sx.xi.sheaf));
  rows.emplace_back("terminal", site_xi_is_terminal(sx) ? "yes" : "no");
  std::ostringstream covers;
  for (size_t c = 0; c < cat->objects.size(); ++c)
    covers << (c ? " " : "") << cat->objects[c] << ":" << topo.covers[c].size();
  rows.emplace_back("covering sieves", covers.str());
  return render(rows, fmt);
}

// ---- the bundled verification corpus ----

namespace {

Presheaf coset_presheaf(const CatPtr& cat, const FinGroup& g, const std::vector<int>& sub,
                        const std::string& label) {
  std::vector<int> to_g(cat->morphisms.size());
  for (size_t m = 0; m < cat->morphisms.size(); ++m) {
    for (int e = 0; e < g.size(); ++e)
      if (g.elems[e] == cat->morphisms[m].id) to_g[m] = e;
  }
  std::vector<int> coset_of(g.size(), -1), reps;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_of[x] != -1) continue;
    int c = static_cast<int>(reps.size());
    for (int s : sub) coset_of[g.mult(s, x)] = c;
    reps.push_back(x);
  }
  Presheaf p;
  p.cat = cat;
  p.elems.resize(1);
  for (size_t r = 0; r < reps.size(); ++r)
    p.elems[0].push_back(label + std::to_string(r));
  p.act.resize(cat->morphisms.size());
  for (size_t m = 0; m < cat->morphisms.size(); ++m)
    for (int r : reps) p.act[m].push_back(coset_of[g.mult(r, to_g[m])]);
  validate_presheaf(p);
  return p;
}

CorpusEntry group_entry(const std::string& name, const FinGroup& g) {
  CorpusEntry e;
  e.name = name;
  e.cat = group_category(g);
  e.objects.push_back(yoneda(e.cat, 0));
  e.objects.push_back(terminal_presheaf(e.cat));
  SubgroupLattice lat = subgroup_lattice(g);
  // one coset action per proper nontrivial subgroup class representative
  for (size_t h = 1; h + 1 < lat.subgroups.size(); ++h) {
    bool least_conjugate = true;
    for (int a = 0; a < g.size(); ++a)
      least_conjugate = least_conjugate && lat.conj[h][a] >= static_cast<int>(h);
    if (least_conjugate)
      e.objects.push_back(
          coset_presheaf(e.cat, g, lat.subgroups[h], "c" + std::to_string(h) + "_"));
  }
  return e;
}

Presheaf graph_presheaf(const CatPtr& par, std::vector<std::string> vs,
                        std::vector<std::array<std::string, 3>> edges) {
  const int oE = par->object_index("E"), oV = par->object_index("V");
  std::vector<std::vector<std::string>> elems(2);
  elems[oV] = std::move(vs);
  std::vector<std::vector<int>> act(par->morphisms.size());
  const int ms = par->morphism_index("s"), mt = par->morphism_index("t");
  auto vidx = [&](const std::string& v) {
    for (size_t i = 0; i < elems[oV].size(); ++i)
      if (elems[oV][i] == v) return static_cast<int>(i);
    fail(errc::internal_error, "bad vertex");
  };
  for (const auto& e : edges) {
    elems[oE].push_back(e[0]);
    act[ms].push_back(vidx(e[1]));
    act[mt].push_back(vidx(e[2]));
  }
  for (size_t i = 0; i < elems[oV].size(); ++i) act[par->identity[oV]].push_back(i);
  for (size_t i = 0; i < elems[oE].size(); ++i) act[par->identity[oE]].push_back(i);
  return make_presheaf(par, std::move(elems), std::move(act));
}

}  // namespace

std::vector<CorpusEntry> bundled_corpus() {
  std::vector<CorpusEntry> out;

  {
    CorpusEntry e;
    e.name = "terminal";
    e.cat = builtin_discrete(1);
    e.objects.push_back(terminal_presheaf(e.cat));
    e.objects.push_back(make_presheaf(e.cat, {{"a", "b"}}, {{0, 1}}));
    e.objects.push_back(initial_presheaf(e.cat));
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "parallel_pair";
    e.cat = builtin_parallel_pair();
    e.objects.push_back(graph_presheaf(e.cat, {"x"}, {}));
    e.objects.push_back(graph_presheaf(e.cat, {"v"}, {{{"l", "v", "v"}}}));
    e.objects.push_back(graph_presheaf(e.cat, {"v1", "v2"}, {{{"a", "v1", "v2"}}}));
    e.objects.push_back(graph_presheaf(
        e.cat, {"v1", "v2", "v3"},
        {{{"a", "v1", "v2"}, {"b", "v2", "v3"}, {"c", "v3", "v3"}}}));
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "interval";
    e.cat = builtin_interval();
    e.objects.push_back(yoneda(e.cat, 0));
    e.objects.push_back(yoneda(e.cat, 1));
    e.objects.push_back(terminal_presheaf(e.cat));
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "chain3";
    e.cat = builtin_poset({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}});
    for (int c = 0; c < 3; ++c) e.objects.push_back(yoneda(e.cat, c));
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "diamond";
    e.cat = builtin_poset({"b", "l", "r", "t"},
                          {{"b", "l"}, {"b", "r"}, {"l", "t"}, {"r", "t"}});
    for (int c = 0; c < 4; ++c) e.objects.push_back(yoneda(e.cat, c));
    out.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.name = "discrete2";
    e.cat = builtin_discrete(2);
    e.objects.push_back(terminal_presheaf(e.cat));
    e.objects.push_back(make_presheaf(e.cat, {{"a", "b"}, {"c"}}, {{0, 1}, {0}}));
    out.push_back(std::move(e));
  }

  std::vector<int> c2{1, 0}, c3{1, 2, 0}, c4{1, 2, 3, 0};
  out.push_back(group_entry("zmod2", group_from_generators("Z2", 2, {c2})));
  out.push_back(group_entry("zmod3", group_from_generators("Z3", 3, {c3})));
  out.push_back(group_entry("zmod4", group_from_generators("Z4", 4, {c4})));
  out.push_back(group_entry("klein", group_from_generators("V4", 4, {{1, 0, 3, 2},
                                                                     {2, 3, 0, 1}})));
  out.push_back(group_entry("sym3", group_from_generators("S3", 3, {{1, 0, 2}, {1, 2, 0}})));
  return out;
}

namespace {

std::vector<std::string> check_entry(const CorpusEntry& entry, const Budget& budget,
                                     bool& all_ok) {
  std::vector<std::string> lines;
  auto report = [&](const std::string& what, bool ok, const std::string& detail = "") {
    lines.push_back(std::string(ok ? "ok " : "FAIL ") + entry.name + ": " + what +
                    (detail.empty() ? "" : " (" + detail + ")"));
    all_ok = all_ok && ok;
  };

  auto xi = std::make_shared<const XiObject>(local_state_classifier(entry.cat, budget));
  OmegaObject om = subobject_classifier(entry.cat, budget);

  report("semilattice axioms of Ξ", check_semilattice(xi->sl).ok);
  report("semilattice axioms of Ω", check_semilattice(om.sl).ok);

  std::vector<NatTrans> states;
  for (const auto& x : entry.objects) states.push_back(xi_component(*xi, x));
  bool local = true, order = true;
  for (size_t i = 0; i < entry.objects.size(); ++i)
    for (size_t j = 0; j < entry.objects.size(); ++j) {
      for (const auto& m : enumerate_nat_trans(entry.objects[i], entry.objects[j], true, budget))
        local = local && nat_equal(compose_nat(states[j], m), states[i]);
      for (const auto& f : enumerate_nat_trans(entry.objects[i], entry.objects[j], false, budget))
        for (size_t c = 0; c < states[i].comp.size(); ++c)
          for (size_t v = 0; v < states[i].comp[c].size(); ++v) {
            int sx = states[i].comp[c][v];
            int sy = states[j].comp[c][f.comp[c][v]];
            order = order && xi->meet_states(static_cast<int>(c), sx, sy) == sx;
          }
    }
  report("locally determined law", local);
  report("order law", order);

  bool charlaw = true;
  for (const auto& x : entry.objects) {
    auto subs = enumerate_subpresheaves(x, budget);
    auto maps = enumerate_nat_trans(x, om.omega(), false, budget);
    charlaw = charlaw && subs.size() == maps.size();
    for (const auto& s : subs)
      charlaw = charlaw && subobject_of_char(om, characteristic_map(om, x, s)) == s;
  }
  report("characteristic map law", charlaw);

  report("Σ-colimit oracle", sigma_colimit_oracle(entry.cat, budget).ok);

  auto filters = enumerate_filters(xi->sl, budget);
  auto homs = enumerate_semilattice_homs(xi->sl, om.sl, budget);
  bool bij = filters.size() == homs.size();
  for (const auto& f : filters) {
    NatTrans h = characteristic_map(om, xi->xi(), f.sub);
    bij = bij && is_semilattice_hom(h, xi->sl, om.sl) && subobject_of_char(om, h) == f.sub;
  }
  for (const auto& h : homs) {
    Subpresheaf s = subobject_of_char(om, h);
    bij = bij && is_internal_filter(xi->sl, s).ok &&
          nat_equal(characteristic_map(om, xi->xi(), s), h);
  }
  report("filters ↔ homomorphisms bijection", bij,
         std::to_string(filters.size()) + " filters");

  bool closure = true;
  for (const auto& f : filters)
    closure = closure && verify_closure(*xi, f.sub, entry.objects, budget).ok;
  report("closure and couniversality", closure);

  bool localic = (filters.size() == 1) == xi_is_terminal(*xi);
  report("localic law", localic);

  return lines;
}

}  // namespace

CheckResult run_check(int jobs, const Budget& budget, const std::vector<CorpusEntry>& extra) {
  std::vector<CorpusEntry> corpus = bundled_corpus();
  for (const auto& e : extra) corpus.push_back(e);

  std::vector<std::vector<std::string>> blocks(corpus.size());
  std::vector<char> oks(corpus.size(), 1);
  if (jobs <= 1) {
    for (size_t i = 0; i < corpus.size(); ++i) {
      bool ok = true;
      blocks[i] = check_entry(corpus[i], budget, ok);
      oks[i] = ok;
    }
  } else {
    std::vector<std::future<std::pair<std::vector<std::string>, bool>>> futures;
    for (size_t i = 0; i < corpus.size(); ++i)
      futures.push_back(std::async(std::launch::async, [&, i] {
        bool ok = true;
        auto lines = check_entry(corpus[i], budget, ok);
        return std::make_pair(lines, ok);
      }));
    for (size_t i = 0; i < corpus.size(); ++i) {
      auto [lines, ok] = futures[i].get();
      blocks[i] = std::move(lines);
      oks[i] = ok;
    }
  }

  CheckResult result;
  std::ostringstream out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& line : blocks[i]) out << line << "\n";
    result.ok = result.ok && oks[i];
  }
  out << (result.ok ? "check passed" : "check FAILED") << "\n";
  result.text = out.str();
  return result;
}

}  // namespace topos
