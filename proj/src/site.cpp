#include "topos/site.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace topos {

namespace {

std::vector<char> maximal_sieve(const FinCategory& cat, int c) {
  std::vector<char> s(cat.morphisms.size(), 0);
  for (size_t m = 0; m < cat.morphisms.size(); ++m)
    if (cat.morphisms[m].cod == c) s[m] = 1;
  return s;
}

// close a set of morphisms into c under precomposition
std::vector<char> sieve_closure(const FinCategory& cat, int c, std::vector<char> s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t f = 0; f < cat.morphisms.size(); ++f) {
      if (!s[f]) continue;
      if (cat.morphisms[f].cod != c) fail(errc::parse_error, "sieve member has wrong codomain");
      for (size_t g = 0; g < cat.morphisms.size(); ++g) {
        if (!cat.composable(static_cast<int>(f), static_cast<int>(g))) continue;
        int fg = cat.compose(static_cast<int>(f), static_cast<int>(g));
        if (!s[fg]) {
          s[fg] = 1;
          changed = true;
        }
      }
    }
  }
  return s;
}

std::vector<char> pullback_sieve(const FinCategory& cat, const std::vector<char>& s, int f) {
  // { g with cod = dom(f) | f∘g in s }
  std::vector<char> out(cat.morphisms.size(), 0);
  const int d = cat.morphisms[f].dom;
  for (size_t g = 0; g < cat.morphisms.size(); ++g)
    if (cat.morphisms[g].cod == d && s[cat.compose(f, static_cast<int>(g))]) out[g] = 1;
  return out;
}

std::vector<int> sieve_members(const std::vector<char>& s) {
  std::vector<int> out;
  for (size_t m = 0; m < s.size(); ++m)
    if (s[m]) out.push_back(static_cast<int>(m));
  return out;
}

/// All matching families of p over the listed sieve members, in canonical
/// order. A family assigns x_f in p(dom f), with x_f . g = x_{f∘g}.
std::vector<std::vector<int>> matching_families(const Presheaf& p,
                                                const std::vector<int>& sieve,
                                                const Budget& budget) {
  const FinCategory& cat = *p.cat;
  const int n = static_cast<int>(sieve.size());
  std::vector<int> pos(cat.morphisms.size(), -1);
  for (int k = 0; k < n; ++k) pos[sieve[k]] = k;
  std::vector<int> assign(n, -1);
  std::vector<std::vector<int>> out;

  auto propagate = [&](int k0, int v0, std::vector<int>& trail) {
    std::vector<std::pair<int, int>> queue{{k0, v0}};
    while (!queue.empty()) {
      auto [k, v] = queue.back();
      queue.pop_back();
      if (assign[k] != -1) {
        if (assign[k] != v) return false;
        continue;
      }
      assign[k] = v;
      trail.push_back(k);
      const int f = sieve[k];
      const int d = cat.morphisms[f].dom;
      for (size_t g = 0; g < cat.morphisms.size(); ++g) {
        if (cat.morphisms[g].cod != d) continue;
        int fg = cat.compose(f, static_cast<int>(g));
        queue.emplace_back(pos[fg], p.act[g][v]);
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, int from) -> void {
    int k = from;
    while (k < n && assign[k] != -1) ++k;
    if (k == n) {
      out.push_back(assign);
      check_budget(out.size() <= budget.max_enumeration, "matching family search");
      return;
    }
    const int f = sieve[k];
    for (int v = 0; v < p.size(cat.morphisms[f].dom); ++v) {
      std::vector<int> trail;
      if (propagate(k, v, trail)) self(self, k + 1);
      for (auto it = trail.rbegin(); it != trail.rend(); ++it) assign[*it] = -1;
    }
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool GrothendieckTopology::is_covering(int c, const std::vector<char>& sieve) const {
  return std::binary_search(covers[c].begin(), covers[c].end(), sieve);
}

GrothendieckTopology validate_topology(
    const CatPtr& cat, const std::vector<std::vector<std::vector<std::string>>>& generators,
    const Budget& budget) {
  const FinCategory& k = *cat;
  const int no = static_cast<int>(k.objects.size());
  check_budget(no <= budget.max_objects &&
                   static_cast<int>(k.morphisms.size()) <= budget.max_morphisms,
               "site category too large");
  if (static_cast<int>(generators.size()) != no && !generators.empty())
    fail(errc::parse_error, "covering generators do not match the objects");

  std::vector<std::set<std::vector<char>>> j(no);
  for (int c = 0; c < no; ++c) j[c].insert(maximal_sieve(k, c));
  for (int c = 0; c < static_cast<int>(generators.size()); ++c)
    for (const auto& family : generators[c]) {
      std::vector<char> s(k.morphisms.size(), 0);
      for (const auto& name : family) {
        int m = k.morphism_index(name);
        if (k.morphisms[m].cod != c)
          fail(errc::parse_error, "covering family member '" + name + "' does not land in " +
                                      k.objects[c]);
        s[m] = 1;
      }
      j[c].insert(sieve_closure(k, c, std::move(s)));
    }

  // enumerate all sieves once, for the transitivity closure
  std::vector<std::vector<std::vector<char>>> all_sieves(no);
  for (int c = 0; c < no; ++c) {
    std::vector<int> into;
    for (size_t m = 0; m < k.morphisms.size(); ++m)
      if (k.morphisms[m].cod == c) into.push_back(static_cast<int>(m));
    check_budget(into.size() < 63, "too many morphisms for sieve enumeration");
    for (std::uint64_t bits = 0; bits < (1ull << into.size()); ++bits) {
      std::vector<char> s(k.morphisms.size(), 0);
      for (size_t i = 0; i < into.size(); ++i)
        if (bits >> i & 1) s[into[i]] = 1;
      if (s == sieve_closure(k, c, s)) all_sieves[c].push_back(std::move(s));
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // pullback stability
    for (int c = 0; c < no; ++c)
      for (const auto& s : std::vector<std::vector<char>>(j[c].begin(), j[c].end()))
        for (size_t f = 0; f < k.morphisms.size(); ++f) {
          if (k.morphisms[f].cod != c) continue;
          auto pulled = pullback_sieve(k, s, static_cast<int>(f));
          if (j[k.morphisms[f].dom].insert(pulled).second) changed = true;
        }
    // transitivity (local character)
    for (int c = 0; c < no; ++c)
      for (const auto& r : all_sieves[c]) {
        if (j[c].count(r)) continue;
        for (const auto& s : j[c]) {
          bool local = true;
          for (size_t f = 0; f < k.morphisms.size() && local; ++f)
            if (s[f])
              local = j[k.morphisms[f].dom].count(
                          pullback_sieve(k, r, static_cast<int>(f))) > 0;
          if (local) {
            j[c].insert(r);
            changed = true;
            break;
          }
        }
      }
  }

  GrothendieckTopology out;
  out.cat = cat;
  out.covers.resize(no);
  out.minimal.resize(no);
  for (int c = 0; c < no; ++c) {
    out.covers[c].assign(j[c].begin(), j[c].end());
    std::sort(out.covers[c].begin(), out.covers[c].end());
    std::vector<char> least = maximal_sieve(k, c);
    for (const auto& s : out.covers[c])
      for (size_t m = 0; m < s.size(); ++m) least[m] = least[m] && s[m];
    if (!out.is_covering(c, least))
      fail(errc::axiom_violation, "covering sieves at " + k.objects[c] +
                                      " are not closed under intersection");
    out.minimal[c] = sieve_members(least);
  }

  // exhaustive check of the three axioms
  for (int c = 0; c < no; ++c) {
    if (!out.is_covering(c, maximal_sieve(k, c)))
      fail(errc::axiom_violation, "maximal sieve not covering at " + k.objects[c]);
    for (const auto& s : out.covers[c])
      for (size_t f = 0; f < k.morphisms.size(); ++f)
        if (k.morphisms[f].cod == c &&
            !out.is_covering(k.morphisms[f].dom, pullback_sieve(k, s, static_cast<int>(f))))
          fail(errc::axiom_violation, "stability fails along " + k.morphisms[f].id);
    for (const auto& r : all_sieves[c]) {
      if (out.is_covering(c, r)) continue;
      for (const auto& s : out.covers[c]) {
        bool local = true;
        for (size_t f = 0; f < k.morphisms.size() && local; ++f)
          if (s[f])
            local = out.is_covering(k.morphisms[f].dom,
                                    pullback_sieve(k, r, static_cast<int>(f)));
        if (local)
          fail(errc::axiom_violation, "transitivity fails at " + k.objects[c]);
      }
    }
  }
  return out;
}

GrothendieckTopology trivial_topology(const CatPtr& cat, const Budget& budget) {
  return validate_topology(cat, {}, budget);
}

SheafVerdict is_sheaf(const Presheaf& p, const GrothendieckTopology& j, const Budget& budget) {
  const FinCategory& cat = *p.cat;
  for (size_t c = 0; c < cat.objects.size(); ++c)
    for (const auto& s : j.covers[c]) {
      auto members = sieve_members(s);
      for (const auto& fam : matching_families(p, members, budget)) {
        int amalgamations = 0;
        for (int x = 0; x < p.size(static_cast<int>(c)); ++x) {
          bool glues = true;
          for (size_t k = 0; k < members.size() && glues; ++k)
            glues = p.act[members[k]][x] == fam[k];
          if (glues) ++amalgamations;
        }
        if (amalgamations != 1)
          return {false, "cover at " + cat.objects[c] + " has " +
                             std::to_string(amalgamations) + " amalgamations"};
      }
    }
  return {};
}

PlusStep plus_construction(const Presheaf& p, const GrothendieckTopology& j,
                           const Budget& budget) {
  const FinCategory& cat = *p.cat;
  const int no = static_cast<int>(cat.objects.size());
  PlusStep step;
  step.cover = j.minimal;
  step.families.resize(no);
  step.index.resize(no);

  Presheaf plus;
  plus.cat = p.cat;
  plus.elems.resize(no);
  for (int c = 0; c < no; ++c) {
    step.families[c] = matching_families(p, step.cover[c], budget);
    for (size_t i = 0; i < step.families[c].size(); ++i) {
      step.index[c].emplace(step.families[c][i], static_cast<int>(i));
      plus.elems[c].push_back("m" + std::to_string(i));
    }
  }
  plus.act.resize(cat.morphisms.size());
  for (size_t f = 0; f < cat.morphisms.size(); ++f) {
    const Morph& mm = cat.morphisms[f];
    for (const auto& fam : step.families[mm.cod]) {
      // restriction: (x.f)_g = x_{f∘g}; the minimal cover refines every
      // pullback cover, so f∘g is in the cover upstream
      std::vector<int> moved;
      for (int g : step.cover[mm.dom]) {
        int fg = cat.compose(static_cast<int>(f), g);
        auto it = std::lower_bound(step.cover[mm.cod].begin(), step.cover[mm.cod].end(), fg);
        if (it == step.cover[mm.cod].end() || *it != fg)
          fail(errc::internal_error, "minimal cover is not closed under pullback");
        moved.push_back(fam[it - step.cover[mm.cod].begin()]);
      }
      auto it = step.index[mm.dom].find(moved);
      if (it == step.index[mm.dom].end())
        fail(errc::internal_error, "restricted family is not matching");
      plus.act[f].push_back(it->second);
    }
  }
  validate_presheaf(plus);
  step.object = std::move(plus);

  std::vector<std::vector<int>> unit(no);
  for (int c = 0; c < no; ++c)
    for (int x = 0; x < p.size(c); ++x) {
      std::vector<int> fam;
      for (int g : step.cover[c]) fam.push_back(p.act[g][x]);
      unit[c].push_back(step.index[c].at(fam));
    }
  step.unit = make_nat(p, step.object, std::move(unit));
  return step;
}

Sheafification sheafify(const Presheaf& p, const GrothendieckTopology& j,
                        const Budget& budget) {
  Sheafification out;
  out.step1 = plus_construction(p, j, budget);
  out.step2 = plus_construction(out.step1.object, j, budget);
  out.sheaf = out.step2.object;
  out.unit = compose_nat(out.step2.unit, out.step1.unit);
  return out;
}

NatTrans sheafify_map(const Sheafification& src, const Sheafification& dst,
                      const NatTrans& h) {
  auto lift = [&](const PlusStep& s, const PlusStep& d, const NatTrans& g) {
    std::vector<std::vector<int>> comp(g.comp.size());
    for (size_t c = 0; c < g.comp.size(); ++c)
      for (const auto& fam : s.families[c]) {
        std::vector<int> moved;
        for (size_t k = 0; k < fam.size(); ++k) {
          int dom = g.src.cat->morphisms[s.cover[c][k]].dom;
          moved.push_back(g.comp[dom][fam[k]]);
        }
        comp[c].push_back(d.index[c].at(moved));
      }
    return make_nat(s.object, d.object, std::move(comp));
  };
  NatTrans one = lift(src.step1, dst.step1, h);
  return lift(src.step2, dst.step2, one);
}

Subpresheaf j_closure(const Presheaf& ambient, const Subpresheaf& s,
                      const GrothendieckTopology& j) {
  const FinCategory& cat = *ambient.cat;
  Subpresheaf out = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t c = 0; c < cat.objects.size(); ++c)
      for (int y = 0; y < ambient.size(static_cast<int>(c)); ++y) {
        if (out.mask[c][y]) continue;
        std::vector<char> sieve(cat.morphisms.size(), 0);
        for (size_t f = 0; f < cat.morphisms.size(); ++f)
          if (cat.morphisms[f].cod == static_cast<int>(c) &&
              out.mask[cat.morphisms[f].dom][ambient.act[f][y]])
            sieve[f] = 1;
        if (j.is_covering(static_cast<int>(c), sieve)) {
          out.mask[c][y] = 1;
          changed = true;
        }
      }
  }
  return out;
}

namespace {

SheafImage image_in_sheaves(const NatTrans& h, const GrothendieckTopology& j) {
  ImageFactorization pre = image_factorization(h);
  Subpresheaf closed = j_closure(h.dst, pre.image, j);
  SubObject so = subpresheaf_to_object(h.dst, closed);
  std::vector<std::vector<int>> ecomp(h.comp.size());
  for (size_t c = 0; c < h.comp.size(); ++c)
    for (int v : h.comp[c])
      ecomp[c].push_back(so.object.eindex(static_cast<int>(c), h.dst.elems[c][v]));
  return {make_nat(h.src, so.object, std::move(ecomp)), so.inclusion, closed};
}

}  // namespace

SheafImage sheaf_image(const NatTrans& h, const GrothendieckTopology& j, const Budget& budget) {
  if (!is_sheaf(h.src, j, budget).ok || !is_sheaf(h.dst, j, budget).ok)
    fail(errc::not_a_sheaf, "sheaf_image endpoints must be sheaves");
  return image_in_sheaves(h, j);
}

std::vector<QuotientSheaf> enumerate_quotient_sheaves(const Presheaf& sheaf,
                                                      const GrothendieckTopology& j,
                                                      const Budget& budget) {
  std::map<Congruence, QuotientSheaf> found;
  for (const auto& r : enumerate_congruences(sheaf, budget)) {
    Quotient q = quotient_by(sheaf, r);
    Sheafification shq = sheafify(q.object, j, budget);
    NatTrans u = compose_nat(shq.unit, q.projection);
    Congruence kernel = kernel_congruence(u);
    if (found.count(kernel)) continue;
    SheafImage img = image_in_sheaves(u, j);
    found.emplace(kernel, QuotientSheaf{kernel, img.epi.dst, img.epi});
  }
  std::vector<QuotientSheaf> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

SiteXi lsc_of_site(const CatPtr& cat, const GrothendieckTopology& j, const Budget& budget) {
  const FinCategory& k = *cat;
  const int no = static_cast<int>(k.objects.size());
  SiteXi sx;
  sx.j = j;
  for (int c = 0; c < no; ++c) sx.ay.push_back(sheafify(yoneda(cat, c), j, budget));
  sx.states.resize(no);
  sx.index.resize(no);
  for (int c = 0; c < no; ++c) {
    sx.states[c] = enumerate_quotient_sheaves(sx.ay[c].sheaf, j, budget);
    for (size_t i = 0; i < sx.states[c].size(); ++i)
      sx.index[c].emplace(sx.states[c][i].kernel, static_cast<int>(i));
  }

  Presheaf xi0;
  xi0.cat = cat;
  xi0.elems.resize(no);
  for (int c = 0; c < no; ++c)
    for (size_t i = 0; i < sx.states[c].size(); ++i)
      xi0.elems[c].push_back("q" + std::to_string(i));
  xi0.act.resize(k.morphisms.size());
  for (size_t f = 0; f < k.morphisms.size(); ++f) {
    const Morph& mm = k.morphisms[f];
    // a(y(f)): ay(dom f) -> ay(cod f)
    NatTrans ayf = sheafify_map(sx.ay[mm.dom], sx.ay[mm.cod],
                                element_morphism(yoneda(cat, mm.cod), mm.dom,
                                                 yoneda(cat, mm.cod)
                                                     .eindex(mm.dom, k.morphisms[f].id)));
    for (const auto& st : sx.states[mm.cod]) {
      NatTrans u = compose_nat(st.projection, ayf);
      auto it = sx.index[mm.dom].find(kernel_congruence(u));
      if (it == sx.index[mm.dom].end())
        fail(errc::internal_error, "restricted state missing from the fiber");
      xi0.act[f].push_back(it->second);
    }
  }
  validate_presheaf(xi0);
  sx.xi0 = xi0;
  sx.xi = sheafify(xi0, j, budget);

  // fiberwise meet on Xi0: intersection of kernel pairs
  std::vector<int> top0(no);
  std::vector<std::vector<std::vector<int>>> meet0(no);
  for (int c = 0; c < no; ++c) {
    Congruence total = total_congruence(sx.ay[c].sheaf);
    auto it = sx.index[c].find(total);
    if (it == sx.index[c].end()) fail(errc::internal_error, "top state missing");
    top0[c] = it->second;
    const int n = static_cast<int>(sx.states[c].size());
    meet0[c].assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Congruence cap = meet_congruence(sx.states[c][a].kernel, sx.states[c][b].kernel);
        auto mit = sx.index[c].find(cap);
        if (mit == sx.index[c].end()) fail(errc::internal_error, "meet state missing");
        meet0[c][a][b] = mit->second;
      }
  }

  // lift top and meet through both plus steps
  auto lift = [&](const PlusStep& step, const std::vector<int>& top,
                  const std::vector<std::vector<std::vector<int>>>& meet,
                  std::vector<int>& top_out,
                  std::vector<std::vector<std::vector<int>>>& meet_out) {
    top_out.resize(no);
    meet_out.assign(no, {});
    for (int c = 0; c < no; ++c) {
      std::vector<int> topfam;
      for (int g : step.cover[c]) topfam.push_back(top[k.morphisms[g].dom]);
      top_out[c] = step.index[c].at(topfam);
      const int n = static_cast<int>(step.families[c].size());
      meet_out[c].assign(n, std::vector<int>(n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::vector<int> fam;
          for (size_t p = 0; p < step.cover[c].size(); ++p) {
            int d = k.morphisms[step.cover[c][p]].dom;
            fam.push_back(meet[d][step.families[c][a][p]][step.families[c][b][p]]);
          }
          auto fit = step.index[c].find(fam);
          if (fit == step.index[c].end())
            fail(errc::internal_error, "meet family is not matching");
          meet_out[c][a][b] = fit->second;
        }
    }
  };
  std::vector<int> top1, top2;
  std::vector<std::vector<std::vector<int>>> meet1, meet2;
  lift(sx.xi.step1, top0, meet0, top1, meet1);
  lift(sx.xi.step2, top1, meet1, top2, meet2);
  sx.sl.carrier = sx.xi.sheaf;
  sx.sl.top = std::move(top2);
  sx.sl.meet = std::move(meet2);
  return sx;
}

NatTrans site_xi_component(const SiteXi& sx, const Presheaf& x, const Budget& budget) {
  const FinCategory& k = *x.cat;
  SheafVerdict sv = is_sheaf(x, sx.j, budget);
  if (!sv.ok) fail(errc::not_a_sheaf, "cocone components exist for sheaves only");
  Sheafification shx = sheafify(x, sx.j, budget);
  const int no = static_cast<int>(k.objects.size());
  std::vector<std::vector<int>> comp0(no);
  for (int c = 0; c < no; ++c)
    for (int v = 0; v < x.size(c); ++v) {
      // the kernel of the transpose along ay(c), computed inside a(x)
      NatTrans am = sheafify_map(sx.ay[c], shx, element_morphism(x, c, v));
      auto it = sx.index[c].find(kernel_congruence(am));
      if (it == sx.index[c].end()) fail(errc::internal_error, "state missing from fiber");
      comp0[c].push_back(it->second);
    }
  NatTrans orb = make_nat(x, sx.xi0, std::move(comp0));
  return compose_nat(sx.xi.unit, orb);
}

bool site_xi_is_terminal(const SiteXi& sx) {
  for (size_t c = 0; c < sx.xi.sheaf.elems.size(); ++c)
    if (sx.xi.sheaf.elems[c].size() != 1) return false;
  return true;
}

}  // namespace topos
