#include "topos/grouptopos.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "topos/classifiers.hpp"
#include "topos/hyperquot.hpp"

namespace topos {

namespace {

void validate_table(const FinGroup& g) {
  const int n = g.size();
  if (n == 0) fail(errc::invalid_cayley_table, "empty group");
  if (static_cast<int>(g.table.size()) != n) fail(errc::invalid_cayley_table, "not square");
  for (const auto& row : g.table) {
    if (static_cast<int>(row.size()) != n) fail(errc::invalid_cayley_table, "ragged table");
    for (int v : row)
      if (v < 0 || v >= n) fail(errc::invalid_cayley_table, "entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          fail(errc::invalid_cayley_table, "not associative");
}

int find_identity(const FinGroup& g) {
  for (int e = 0; e < g.size(); ++e) {
    bool ok = true;
    for (int a = 0; a < g.size() && ok; ++a)
      ok = g.table[e][a] == a && g.table[a][e] == a;
    if (ok) return e;
  }
  fail(errc::invalid_cayley_table, "no identity element");
}

std::vector<int> find_inverses(const FinGroup& g) {
  std::vector<int> inv(g.size(), -1);
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b)
      if (g.table[a][b] == g.id && g.table[b][a] == g.id) inv[a] = b;
    if (inv[a] < 0) fail(errc::invalid_cayley_table, "no inverse for " + g.elems[a]);
  }
  return inv;
}

std::string perm_name(const std::vector<int>& p, int degree) {
  std::string s = "p";
  for (int v : p) {
    if (degree > 10) s += static_cast<char>('0' + v / 10);
    s += static_cast<char>('0' + v % 10);
  }
  return s;
}

// subgroup generated by a set, within a table-backed group
std::vector<int> span(const FinGroup& g, std::vector<int> gens) {
  std::vector<char> in(g.size(), 0);
  in[g.id] = 1;
  std::vector<int> out{g.id}, queue{g.id};
  while (!queue.empty()) {
    int t = queue.back();
    queue.pop_back();
    for (int s : gens) {
      int p = g.mult(t, s);
      if (!in[p]) {
        in[p] = 1;
        out.push_back(p);
        queue.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FinGroup group_from_table(std::string name, std::vector<std::string> elems,
                          std::vector<std::vector<int>> table) {
  FinGroup g;
  g.name = std::move(name);
  g.elems = std::move(elems);
  g.table = std::move(table);
  std::set<std::string> ids(g.elems.begin(), g.elems.end());
  if (ids.size() != g.elems.size()) fail(errc::parse_error, "duplicate element id");
  validate_table(g);
  g.id = find_identity(g);
  g.inv = find_inverses(g);
  return g;
}

FinGroup group_from_generators(std::string name, int degree,
                               const std::vector<std::vector<int>>& generators,
                               const Budget& budget) {
  if (degree < 0 || degree > 16) fail(errc::parse_error, "permutation degree out of range");
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != degree) fail(errc::parse_error, "generator arity");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v]) fail(errc::parse_error, "not a permutation");
      seen[v] = 1;
    }
  }
  std::vector<int> idp(degree);
  std::iota(idp.begin(), idp.end(), 0);
  std::set<std::vector<int>> seen{idp};
  std::vector<std::vector<int>> elems{idp};
  for (size_t k = 0; k < elems.size(); ++k)
    for (const auto& p : generators) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = p[elems[k][i]];
      if (seen.insert(prod).second) {
        check_budget(elems.size() < budget.max_enumeration, "generator closure");
        elems.push_back(prod);
      }
    }
  std::sort(elems.begin(), elems.end());

  FinGroup g;
  g.name = std::move(name);
  g.degree = degree;
  g.perms = elems;
  const int n = static_cast<int>(elems.size());
  for (const auto& p : elems) g.elems.push_back(perm_name(p, degree));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index.emplace(elems[i], i);
  check_budget(static_cast<std::uint64_t>(n) * n <= (1u << 22), "Cayley table too large");
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = elems[a][elems[b][i]];
      g.table[a][b] = index[prod];
    }
  g.id = find_identity(g);
  g.inv = find_inverses(g);
  return g;
}

FinGroup symmetric_group(int degree, const Budget& budget) {
  if (degree <= 1) return group_from_generators("S" + std::to_string(degree),
                                                std::max(degree, 0), {}, budget);
  std::vector<int> swap01(degree), cycle(degree);
  std::iota(swap01.begin(), swap01.end(), 0);
  std::swap(swap01[0], swap01[1]);
  for (int i = 0; i < degree; ++i) cycle[i] = (i + 1) % degree;
  return group_from_generators("S" + std::to_string(degree), degree, {swap01, cycle}, budget);
}

CatPtr group_category(const FinGroup& g) {
  return builtin_one_object_group(g.elems, g.table);
}

int SubgroupLattice::find(const std::vector<int>& elements) const {
  auto it = std::lower_bound(subgroups.begin(), subgroups.end(), elements,
                             [](const std::vector<int>& a, const std::vector<int>& b) {
                               if (a.size() != b.size()) return a.size() < b.size();
                               return a < b;
                             });
  if (it == subgroups.end() || *it != elements)
    fail(errc::internal_error, "subgroup not in lattice");
  return static_cast<int>(it - subgroups.begin());
}

SubgroupLattice subgroup_lattice(const FinGroup& g, const Budget& budget) {
  check_budget(g.size() <= budget.max_group_order, "group too large for the lattice");
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> cyclic;
  for (int a = 0; a < g.size(); ++a) {
    auto c = span(g, {a});
    if (seen.insert(c).second) cyclic.push_back(c);
  }
  // join closure over cyclic seeds
  std::vector<std::vector<int>> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    std::vector<int> h = std::move(queue.back());
    queue.pop_back();
    for (const auto& c : cyclic) {
      if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
      std::vector<int> gens = h;
      gens.insert(gens.end(), c.begin(), c.end());
      auto j = span(g, gens);
      if (seen.insert(j).second) {
        check_budget(seen.size() <= budget.max_enumeration, "subgroup search");
        queue.push_back(j);
      }
    }
  }

  SubgroupLattice l;
  l.subgroups.assign(seen.begin(), seen.end());
  std::sort(l.subgroups.begin(), l.subgroups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  const int n = static_cast<int>(l.subgroups.size());
  l.leq.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      l.leq[i][j] = std::includes(l.subgroups[j].begin(), l.subgroups[j].end(),
                                  l.subgroups[i].begin(), l.subgroups[i].end());
  l.conj.assign(n, std::vector<int>(g.size()));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < g.size(); ++a) {
      std::vector<int> hc;
      for (int h : l.subgroups[i]) hc.push_back(g.mult(g.mult(g.inv[a], h), a));
      std::sort(hc.begin(), hc.end());
      l.conj[i][a] = l.find(hc);
    }
  l.meet.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> cap;
      std::set_intersection(l.subgroups[i].begin(), l.subgroups[i].end(),
                            l.subgroups[j].begin(), l.subgroups[j].end(),
                            std::back_inserter(cap));
      l.meet[i][j] = l.find(cap);
    }
  return l;
}

std::vector<std::vector<int>> conjugate_closed_filters(const SubgroupLattice& l) {
  const int n = static_cast<int>(l.subgroups.size());
  std::vector<std::vector<int>> out;
  for (int h = 0; h < n; ++h) {
    std::vector<int> members;
    for (int k = 0; k < n; ++k)
      if (l.leq[h][k]) members.push_back(k);
    bool closed = true;
    for (int k : members)
      for (size_t a = 0; a < l.conj[k].size() && closed; ++a)
        closed = std::binary_search(members.begin(), members.end(), l.conj[k][a]);
    if (closed) out.push_back(std::move(members));
  }
  return out;
}

std::vector<int> normal_subgroups(const FinGroup& g, const SubgroupLattice& l) {
  std::vector<int> out;
  for (size_t h = 0; h < l.subgroups.size(); ++h) {
    bool normal = true;
    for (int a = 0; a < g.size() && normal; ++a)
      normal = l.conj[h][a] == static_cast<int>(h);
    if (normal) out.push_back(static_cast<int>(h));
  }
  return out;
}

namespace {

std::uint64_t coset_mask(const FinGroup& g, int a, const std::vector<int>& h) {
  std::uint64_t m = 0;
  for (int x : h) m |= 1ull << g.mult(a, x);
  return m;
}

}  // namespace

GroupTopologyView filter_to_topology(const FinGroup& g, const SubgroupLattice& l,
                                     const std::vector<int>& filter, const Budget& budget) {
  check_budget(g.size() <= budget.max_topology_group, "group too large for coset topology");
  for (int k : filter)
    for (int a = 0; a < g.size(); ++a)
      if (!std::binary_search(filter.begin(), filter.end(), l.conj[k][a]))
        fail(errc::not_conjugate_closed, "filter is not closed under conjugation");

  GroupTopologyView view;
  view.filter = filter;
  view.min_subgroup = filter.empty() ? -1 : filter[0];
  for (int k : filter) view.min_subgroup = l.meet[view.min_subgroup][k];
  if (view.min_subgroup < 0 ||
      !std::binary_search(filter.begin(), filter.end(), view.min_subgroup))
    fail(errc::not_conjugate_closed, "filter is not meet-closed");

  std::set<std::uint64_t> basis;
  for (int k : filter)
    for (int a = 0; a < g.size(); ++a) basis.insert(coset_mask(g, a, l.subgroups[k]));
  view.basis.assign(basis.begin(), basis.end());

  // continuity of translation, inversion and multiplication at the level of
  // coset opens
  auto in_basis = [&](std::uint64_t m) {
    return std::binary_search(view.basis.begin(), view.basis.end(), m);
  };
  for (int k : filter) {
    const auto& h = l.subgroups[k];
    for (int a = 0; a < g.size(); ++a) {
      std::uint64_t gh = coset_mask(g, a, h);
      for (int x = 0; x < g.size(); ++x) {
        std::uint64_t tr = 0;  // x * (aH)
        for (int y = 0; y < g.size(); ++y)
          if (gh >> y & 1) tr |= 1ull << g.mult(x, y);
        if (!in_basis(tr)) fail(errc::internal_error, "translation is not open");
      }
      std::uint64_t invm = 0;  // (aH)^-1
      for (int y = 0; y < g.size(); ++y)
        if (gh >> y & 1) invm |= 1ull << g.inv[y];
      if (!in_basis(invm)) fail(errc::internal_error, "inversion is not open");
    }
    // x (yHy^-1) * yH = xyH
    for (int x = 0; x < g.size(); ++x)
      for (int y = 0; y < g.size(); ++y) {
        int khc = l.conj[k][g.inv[y]];  // y H y^-1
        std::uint64_t u = coset_mask(g, x, l.subgroups[khc]);
        std::uint64_t v = coset_mask(g, y, h);
        std::uint64_t prod = 0;
        for (int p = 0; p < g.size(); ++p)
          if (u >> p & 1)
            for (int q = 0; q < g.size(); ++q)
              if (v >> q & 1) prod |= 1ull << g.mult(p, q);
        if (prod != coset_mask(g, g.mult(x, y), h))
          fail(errc::internal_error, "multiplication is not continuous");
      }
  }

  // open subgroups are exactly the filter
  std::vector<int> opensub = topology_to_filter(g, l, view);
  if (opensub != filter) fail(errc::internal_error, "open subgroups differ from the filter");

  const auto& hmin = l.subgroups[view.min_subgroup];
  int index = g.size() / static_cast<int>(hmin.size());
  if (index <= 16) {
    std::vector<std::uint64_t> cosets;
    std::set<std::uint64_t> cs;
    for (int a = 0; a < g.size(); ++a) cs.insert(coset_mask(g, a, hmin));
    cosets.assign(cs.begin(), cs.end());
    std::set<std::uint64_t> opens;
    for (std::uint64_t pick = 0; pick < (1ull << cosets.size()); ++pick) {
      std::uint64_t u = 0;
      for (size_t i = 0; i < cosets.size(); ++i)
        if (pick >> i & 1) u |= cosets[i];
      opens.insert(u);
    }
    view.opens.assign(opens.begin(), opens.end());
    view.opens_materialized = true;
  }
  return view;
}

std::vector<int> topology_to_filter(const FinGroup&, const SubgroupLattice& l,
                                    const GroupTopologyView& view) {
  std::vector<int> out;
  for (size_t k = 0; k < l.subgroups.size(); ++k) {
    std::uint64_t km = 0;
    for (int x : l.subgroups[k]) km |= 1ull << x;
    bool open = true;
    for (int x : l.subgroups[k]) {
      bool has_nbhd = false;
      for (std::uint64_t b : view.basis)
        if ((b >> x & 1) && (b & ~km) == 0) has_nbhd = true;
      open = open && has_nbhd;
    }
    if (open) out.push_back(static_cast<int>(k));
  }
  return out;
}

CrosscheckReport crosscheck_generic(const FinGroup& g, const Budget& budget) {
  CrosscheckReport rep;
  check_budget(g.size() <= budget.max_generic_group, "group too large for the generic engine");
  SubgroupLattice lat = subgroup_lattice(g, budget);
  CatPtr cat = group_category(g);
  XiObject xi = local_state_classifier(cat, budget);
  rep.fiber_size = xi.xi().size(0);

  // category morphism index <-> group element index
  std::vector<int> to_g(cat->morphisms.size());
  for (size_t m = 0; m < cat->morphisms.size(); ++m) {
    auto it = std::find(g.elems.begin(), g.elems.end(), cat->morphisms[m].id);
    to_g[m] = static_cast<int>(it - g.elems.begin());
  }
  const int id_pos = cat->identity[0];

  // the subgroup behind a state: the block of the identity
  auto stabilizer_of_state = [&](const Congruence& e) {
    std::vector<int> stab;
    for (size_t m = 0; m < cat->morphisms.size(); ++m)
      if (e.rep[0][m] == e.rep[0][id_pos]) stab.push_back(to_g[m]);
    std::sort(stab.begin(), stab.end());
    return lat.find(stab);
  };

  const int n = xi.xi().size(0);
  std::vector<int> state_sub(n);
  std::vector<char> hit(lat.subgroups.size(), 0);
  for (int k = 0; k < n; ++k) {
    state_sub[k] = stabilizer_of_state(xi.states[0][k]);
    hit[state_sub[k]] = 1;
  }
  if (n != static_cast<int>(lat.subgroups.size()) ||
      std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    rep.ok = false;
    rep.witness = "fiber does not biject with the subgroup lattice";
    return rep;
  }
  rep.checks.push_back("fiber bijects with Sub(G)");

  for (int i = 0; i < n && rep.ok; ++i)
    for (int j = 0; j < n; ++j) {
      bool fiber_leq = xi.meet_states(0, i, j) == i;
      if (fiber_leq != static_cast<bool>(lat.leq[state_sub[i]][state_sub[j]])) {
        rep.ok = false;
        rep.witness = "fiber order disagrees with subgroup inclusion";
        break;
      }
    }
  if (!rep.ok) return rep;
  rep.checks.push_back("fiber order matches inclusion");

  for (size_t m = 0; m < cat->morphisms.size() && rep.ok; ++m)
    for (int k = 0; k < n; ++k) {
      int moved = xi.xi().act[m][k];
      if (state_sub[moved] != lat.conj[state_sub[k]][to_g[m]]) {
        rep.ok = false;
        rep.witness = "fiber restriction disagrees with conjugation";
        break;
      }
    }
  if (!rep.ok) return rep;
  rep.checks.push_back("restriction acts by conjugation");

  auto filters = enumerate_filters(xi.sl, budget);
  auto ccf = conjugate_closed_filters(lat);
  rep.filter_count = static_cast<int>(filters.size());
  std::set<std::vector<int>> engine_sets, lattice_sets(ccf.begin(), ccf.end());
  for (const auto& f : filters) {
    std::vector<int> subs;
    for (int k = 0; k < n; ++k)
      if (f.sub.mask[0][k]) subs.push_back(state_sub[k]);
    std::sort(subs.begin(), subs.end());
    engine_sets.insert(subs);
  }
  if (engine_sets != lattice_sets) {
    rep.ok = false;
    rep.witness = "internal filters differ from conjugate closed filters";
    return rep;
  }
  rep.checks.push_back("filters match conjugate closed filters");

  auto normals = normal_subgroups(g, lat);
  std::set<std::vector<int>> principal_sets;
  for (int nn : normals) {
    std::vector<int> members;
    for (size_t k = 0; k < lat.subgroups.size(); ++k)
      if (lat.leq[nn][k]) members.push_back(static_cast<int>(k));
    principal_sets.insert(members);
  }
  if (principal_sets != lattice_sets) {
    rep.ok = false;
    rep.witness = "conjugate closed filters are not the principal filters at normals";
    return rep;
  }
  rep.checks.push_back("conjugate closed filters are principal at normal subgroups");

  rep.quotient_count = static_cast<int>(enumerate_quotients(cat, budget).size());
  if (rep.quotient_count != static_cast<int>(normals.size())) {
    rep.ok = false;
    rep.witness = "quotient count differs from normal subgroup count";
    return rep;
  }
  rep.checks.push_back("quotient count equals normal subgroup count");

  // stabilizer states of every coset action
  for (size_t h = 0; h < lat.subgroups.size() && rep.ok; ++h) {
    const auto& sub = lat.subgroups[h];
    std::vector<char> in(g.size(), 0);
    for (int x : sub) in[x] = 1;
    std::vector<int> coset_of(g.size(), -1), reps;
    for (int x = 0; x < g.size(); ++x) {
      if (coset_of[x] != -1) continue;
      int c = static_cast<int>(reps.size());
      for (int s : sub) coset_of[g.mult(s, x)] = c;
      reps.push_back(x);
    }
    Presheaf cs;
    cs.cat = cat;
    cs.elems.resize(1);
    for (int r : reps) cs.elems[0].push_back("H" + std::to_string(h) + "." + g.elems[r]);
    cs.act.resize(cat->morphisms.size());
    for (size_t m = 0; m < cat->morphisms.size(); ++m)
      for (int r : reps) cs.act[m].push_back(coset_of[g.mult(r, to_g[m])]);
    validate_presheaf(cs);
    NatTrans st = xi_component(xi, cs);
    for (size_t r = 0; r < reps.size(); ++r) {
      // Stab(H x) = x^-1 H x
      int expect = lat.conj[h][reps[r]];
      if (state_sub[st.comp[0][r]] != expect) {
        rep.ok = false;
        rep.witness = "state of a coset is not its stabilizer";
        break;
      }
    }
  }
  if (!rep.ok) return rep;
  rep.checks.push_back("coset states are stabilizers");
  return rep;
}

std::vector<std::uint64_t> species_quotient_counts(int max_degree, const Budget& budget) {
  check_budget(max_degree <= 7, "species degree cap is 7");
  std::uint64_t fact = 1;
  for (int k = 2; k <= max_degree; ++k) fact *= static_cast<std::uint64_t>(k);
  check_budget(fact <= budget.max_enumeration, "symmetric group too large");
  std::vector<std::uint64_t> out;
  for (int k = 0; k <= max_degree; ++k) {
    // all permutations of degree k, indexed in lexicographic order
    std::vector<int> idp(k);
    std::iota(idp.begin(), idp.end(), 0);
    std::vector<std::vector<int>> elems;
    std::vector<int> p = idp;
    do {
      elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int>(i));
    const int n = static_cast<int>(elems.size());
    auto mul = [&](int a, int b) {
      std::vector<int> prod(k);
      for (int i = 0; i < k; ++i) prod[i] = elems[a][elems[b][i]];
      return index[prod];
    };
    auto inv = [&](int a) {
      std::vector<int> q(k);
      for (int i = 0; i < k; ++i) q[elems[a][i]] = i;
      return index[q];
    };

    // conjugacy classes by cycle type
    std::map<std::vector<int>, std::vector<int>> classes;
    for (int a = 0; a < n; ++a) {
      std::vector<char> seen(k, 0);
      std::vector<int> type;
      for (int i = 0; i < k; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
          seen[j] = 1;
          j = elems[a][j];
          ++len;
        }
        type.push_back(len);
      }
      std::sort(type.begin(), type.end());
      classes[type].push_back(a);
    }

    std::vector<int> conj_reps;
    for (const auto& [type, members] : classes) conj_reps.push_back(members.front());

    // elements normalizing a finite set form a subgroup, so closure under
    // conjugation by the two standard generators suffices
    std::vector<int> sym_gens;
    if (k >= 2) {
      std::vector<int> swap01 = idp, cycle(k);
      std::swap(swap01[0], swap01[1]);
      for (int i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
      sym_gens = {index[swap01], index[cycle]};
    }

    auto normal_closure = [&](std::vector<int> gens) {
      while (true) {
        std::vector<char> in(n, 0);
        in[index[idp]] = 1;
        std::vector<int> members{index[idp]}, queue{index[idp]};
        while (!queue.empty()) {
          int t = queue.back();
          queue.pop_back();
          for (int s : gens) {
            int prod = mul(t, s);
            if (!in[prod]) {
              in[prod] = 1;
              members.push_back(prod);
              queue.push_back(prod);
            }
          }
        }
        int missing = -1;
        for (int t : members) {
          for (int a : sym_gens) {
            int c = mul(mul(inv(a), t), a);
            if (!in[c]) {
              missing = c;
              break;
            }
          }
          if (missing >= 0) break;
        }
        if (missing < 0) {
          std::sort(members.begin(), members.end());
          return members;
        }
        gens.push_back(missing);
      }
    };

    // every normal subgroup is reached by adding one conjugacy class at a time
    std::set<std::vector<int>> found;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> queue;  // (members, gens)
    std::vector<int> triv{index[idp]};
    found.insert(triv);
    queue.emplace_back(triv, std::vector<int>{});
    while (!queue.empty()) {
      auto [members, gens] = queue.back();
      queue.pop_back();
      for (int rep : conj_reps) {
        if (std::binary_search(members.begin(), members.end(), rep)) continue;
        std::vector<int> g2 = gens;
        g2.push_back(rep);
        std::vector<int> closure = normal_closure(g2);
        if (found.insert(closure).second) queue.emplace_back(closure, g2);
      }
    }
    out.push_back(found.size());
  }
  return out;
}

std::string subgroup_lattice_dot(const FinGroup& g, const SubgroupLattice& l,
                                 const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (size_t i = 0; i < l.subgroups.size(); ++i) {
    out << "  h" << i << " [label=\"";
    if (l.subgroups[i].size() <= 6) {
      out << "{";
      for (size_t k = 0; k < l.subgroups[i].size(); ++k)
        out << (k ? " " : "") << g.elems[l.subgroups[i][k]];
      out << "}";
    } else {
      out << "#" << i << " (order " << l.subgroups[i].size() << ")";
    }
    out << "\"];\n";
  }
  const int n = static_cast<int>(l.subgroups.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !l.leq[i][j]) continue;
      bool covering = true;
      for (int k = 0; k < n && covering; ++k)
        covering = k == i || k == j || !(l.leq[i][k] && l.leq[k][j]);
      if (covering) out << "  h" << i << " -> h" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace topos
