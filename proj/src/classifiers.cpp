#include "topos/classifiers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace topos {

namespace {

std::string render_sieve(const Presheaf& yc, const Subpresheaf& s) {
  std::vector<std::string> ids;
  for (size_t o = 0; o < s.mask.size(); ++o)
    for (size_t i = 0; i < s.mask[o].size(); ++i)
      if (s.mask[o][i]) ids.push_back(yc.elems[o][i]);
  std::sort(ids.begin(), ids.end());
  std::string out = "{";
  for (size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out + "}";
}

std::string render_congruence(const Presheaf& yc, const Congruence& r) {
  std::string out;
  for (size_t o = 0; o < r.rep.size(); ++o) {
    if (r.rep[o].empty()) continue;
    if (!out.empty()) out += "/";
    for (size_t b = 0; b < r.rep[o].size(); ++b) {
      if (r.rep[o][b] != static_cast<int>(b)) continue;
      out += "(";
      bool first = true;
      for (size_t i = b; i < r.rep[o].size(); ++i)
        if (r.rep[o][i] == static_cast<int>(b)) {
          if (!first) out += " ";
          out += yc.elems[o][i];
          first = false;
        }
      out += ")";
    }
  }
  return out;
}

// position of morphism m inside an ascending hom list
int hom_pos(const std::vector<int>& homs, int m) {
  return static_cast<int>(std::lower_bound(homs.begin(), homs.end(), m) - homs.begin());
}

}  // namespace

int OmegaObject::sieve_index(int c, const Subpresheaf& s) const {
  const auto& fiber = sieves[c];
  auto it = std::lower_bound(fiber.begin(), fiber.end(), s);
  if (it == fiber.end() || !(*it == s)) fail(errc::internal_error, "sieve not in fiber");
  return static_cast<int>(it - fiber.begin());
}

OmegaObject subobject_classifier(const CatPtr& cat, const Budget& budget) {
  check_budget(static_cast<int>(cat->objects.size()) <= budget.max_objects &&
                   static_cast<int>(cat->morphisms.size()) <= budget.max_morphisms,
               "category too large");
  OmegaObject om;
  om.cat = cat;
  const int no = static_cast<int>(cat->objects.size());
  std::vector<std::vector<std::vector<int>>> homs(no, std::vector<std::vector<int>>(no));
  for (int c = 0; c < no; ++c) {
    om.yon.push_back(yoneda(cat, c));
    for (int o = 0; o < no; ++o) homs[c][o] = cat->hom(o, c);
    om.sieves.push_back(enumerate_subpresheaves(om.yon[c], budget));
  }

  Presheaf carrier;
  carrier.cat = cat;
  carrier.elems.resize(no);
  for (int c = 0; c < no; ++c)
    for (const auto& s : om.sieves[c]) carrier.elems[c].push_back(render_sieve(om.yon[c], s));
  carrier.act.resize(cat->morphisms.size());
  for (size_t f = 0; f < cat->morphisms.size(); ++f) {
    const Morph& mm = cat->morphisms[f];
    for (const auto& s : om.sieves[mm.cod]) {
      Subpresheaf pulled = empty_subpresheaf(om.yon[mm.dom]);
      for (int o = 0; o < no; ++o)
        for (size_t gi = 0; gi < homs[mm.dom][o].size(); ++gi) {
          int fg = cat->compose(static_cast<int>(f), homs[mm.dom][o][gi]);
          pulled.mask[o][gi] = s.mask[o][hom_pos(homs[mm.cod][o], fg)];
        }
      carrier.act[f].push_back(om.sieve_index(mm.dom, pulled));
    }
  }
  validate_presheaf(carrier);

  om.sl.carrier = std::move(carrier);
  om.sl.top.resize(no);
  om.sl.meet.resize(no);
  for (int c = 0; c < no; ++c) {
    om.sl.top[c] = om.sieve_index(c, full_subpresheaf(om.yon[c]));
    const int n = static_cast<int>(om.sieves[c].size());
    om.sl.meet[c].assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        om.sl.meet[c][i][j] = om.sieve_index(c, intersect(om.sieves[c][i], om.sieves[c][j]));
  }
  return om;
}

NatTrans characteristic_map(const OmegaObject& omega, const Presheaf& x, const Subpresheaf& s) {
  const FinCategory& cat = *omega.cat;
  const int no = static_cast<int>(cat.objects.size());
  std::vector<std::vector<int>> comp(no);
  for (int c = 0; c < no; ++c) {
    std::vector<std::vector<int>> homs(no);
    for (int o = 0; o < no; ++o) homs[o] = cat.hom(o, c);
    for (int i = 0; i < x.size(c); ++i) {
      Subpresheaf sieve = empty_subpresheaf(omega.yon[c]);
      for (int o = 0; o < no; ++o)
        for (size_t gi = 0; gi < homs[o].size(); ++gi)
          sieve.mask[o][gi] = s.mask[o][x.act[homs[o][gi]][i]];
      comp[c].push_back(omega.sieve_index(c, sieve));
    }
  }
  return make_nat(x, omega.omega(), std::move(comp));
}

Subpresheaf subobject_of_char(const OmegaObject& omega, const NatTrans& chi) {
  Subpresheaf s = empty_subpresheaf(chi.src);
  for (size_t c = 0; c < chi.comp.size(); ++c)
    for (size_t i = 0; i < chi.comp[c].size(); ++i)
      s.mask[c][i] = chi.comp[c][i] == omega.true_at(static_cast<int>(c));
  return s;
}

NatTrans filter_to_hom(const InternalSemilattice& l, const OmegaObject& omega,
                       const InternalFilter& f) {
  NatTrans h = characteristic_map(omega, l.carrier, f.sub);
  if (!is_semilattice_hom(h, l, omega.sl))
    fail(errc::internal_error, "characteristic map of a filter is not a homomorphism");
  return h;
}

InternalFilter hom_to_filter(const InternalSemilattice& l, const OmegaObject& omega,
                             const NatTrans& h) {
  if (!is_semilattice_hom(h, l, omega.sl))
    fail(errc::not_a_semilattice_hom, "hom_to_filter needs a semilattice homomorphism");
  InternalFilter f{subobject_of_char(omega, h)};
  FilterVerdict v = is_internal_filter(l, f.sub);
  if (!v.ok) fail(errc::internal_error, "pullback of true is not a filter: " + v.reason);
  return f;
}

int XiObject::state_index(int c, const Congruence& r) const {
  auto it = index[c].find(r);
  if (it == index[c].end()) fail(errc::internal_error, "state not in fiber");
  return it->second;
}

XiObject local_state_classifier(const CatPtr& cat, const Budget& budget) {
  check_budget(static_cast<int>(cat->objects.size()) <= budget.max_objects &&
                   static_cast<int>(cat->morphisms.size()) <= budget.max_morphisms,
               "category too large");
  XiObject xi;
  xi.cat = cat;
  const int no = static_cast<int>(cat->objects.size());
  std::vector<std::vector<std::vector<int>>> homs(no, std::vector<std::vector<int>>(no));
  for (int c = 0; c < no; ++c) {
    xi.yon.push_back(yoneda(cat, c));
    for (int o = 0; o < no; ++o) homs[c][o] = cat->hom(o, c);
    xi.states.push_back(enumerate_congruences(xi.yon[c], budget));
    std::map<Congruence, int> idx;
    for (size_t k = 0; k < xi.states[c].size(); ++k)
      idx.emplace(xi.states[c][k], static_cast<int>(k));
    xi.index.push_back(std::move(idx));
  }

  Presheaf carrier;
  carrier.cat = cat;
  carrier.elems.resize(no);
  for (int c = 0; c < no; ++c)
    for (const auto& r : xi.states[c])
      carrier.elems[c].push_back(render_congruence(xi.yon[c], r));
  carrier.act.resize(cat->morphisms.size());
  for (size_t f = 0; f < cat->morphisms.size(); ++f) {
    const Morph& mm = cat->morphisms[f];
    for (const auto& e : xi.states[mm.cod]) {
      // restriction: g ~ h iff f.g ~ f.h (kernel of the composed quotient)
      Congruence r;
      r.rep.resize(no);
      for (int o = 0; o < no; ++o) {
        const auto& hs = homs[mm.dom][o];
        r.rep[o].resize(hs.size());
        std::map<int, int> least;
        for (size_t gi = 0; gi < hs.size(); ++gi) {
          int fg = cat->compose(static_cast<int>(f), hs[gi]);
          int key = e.rep[o][hom_pos(homs[mm.cod][o], fg)];
          auto it = least.find(key);
          if (it == least.end()) it = least.emplace(key, static_cast<int>(gi)).first;
          r.rep[o][gi] = it->second;
        }
      }
      carrier.act[f].push_back(xi.state_index(mm.dom, r));
    }
  }
  validate_presheaf(carrier);

  xi.sl.carrier = std::move(carrier);
  xi.sl.top.resize(no);
  xi.sl.meet.resize(no);
  for (int c = 0; c < no; ++c) {
    xi.sl.top[c] = xi.state_index(c, total_congruence(xi.yon[c]));
    const int n = static_cast<int>(xi.states[c].size());
    xi.sl.meet[c].assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        xi.sl.meet[c][i][j] =
            xi.state_index(c, meet_congruence(xi.states[c][i], xi.states[c][j]));
  }
  return xi;
}

NatTrans xi_component(const XiObject& xi, const Presheaf& x) {
  const FinCategory& cat = *xi.cat;
  const int no = static_cast<int>(cat.objects.size());
  std::vector<std::vector<int>> comp(no);
  for (int c = 0; c < no; ++c) {
    std::vector<std::vector<int>> homs(no);
    for (int o = 0; o < no; ++o) homs[o] = cat.hom(o, c);
    for (int i = 0; i < x.size(c); ++i) {
      // kernel congruence of the transpose of x: g ~ h iff x.g = x.h
      Congruence r;
      r.rep.resize(no);
      for (int o = 0; o < no; ++o) {
        r.rep[o].resize(homs[o].size());
        std::map<int, int> least;
        for (size_t gi = 0; gi < homs[o].size(); ++gi) {
          int key = x.act[homs[o][gi]][i];
          auto it = least.find(key);
          if (it == least.end()) it = least.emplace(key, static_cast<int>(gi)).first;
          r.rep[o][gi] = it->second;
        }
      }
      comp[c].push_back(xi.state_index(c, r));
    }
  }
  return make_nat(x, xi.xi(), std::move(comp));
}

bool xi_is_terminal(const XiObject& xi) {
  for (size_t c = 0; c < xi.states.size(); ++c)
    if (xi.states[c].size() != 1) return false;
  return true;
}

LocalVerdict is_locally_determined(const CoconeCandidate& cocone, const Budget& budget) {
  for (size_t i = 0; i < cocone.family.size(); ++i)
    for (size_t j = 0; j < cocone.family.size(); ++j)
      for (const auto& m :
           enumerate_nat_trans(cocone.family[i], cocone.family[j], true, budget)) {
        NatTrans via = compose_nat(cocone.legs[j], m);
        if (nat_equal(via, cocone.legs[i])) continue;
        for (size_t c = 0; c < via.comp.size(); ++c)
          for (size_t e = 0; e < via.comp[c].size(); ++e)
            if (via.comp[c][e] != cocone.legs[i].comp[c][e])
              return {false, "mono " + std::to_string(i) + " -> " + std::to_string(j) +
                                 " breaks at element " + cocone.family[i].elems[c][e]};
      }
  return {};
}

std::vector<SigmaMember> sigma_family(const XiObject& xi) {
  std::vector<SigmaMember> out;
  const FinCategory& cat = *xi.cat;
  for (size_t c = 0; c < cat.objects.size(); ++c) {
    const std::string id_name = cat.morphisms[cat.identity[c]].id;
    for (size_t k = 0; k < xi.states[c].size(); ++k) {
      Quotient q = quotient_by(xi.yon[c], xi.states[c][k]);
      int pos = xi.yon[c].eindex(static_cast<int>(c), id_name);
      int gen = q.projection.comp[c][pos];
      out.push_back(
          {static_cast<int>(c), static_cast<int>(k), q.object, q.projection, gen});
    }
  }
  return out;
}

NatTrans mediating_map(const XiObject& xi, const CoconeCandidate& cocone, const Budget& budget) {
  std::vector<SigmaMember> sigma = sigma_family(xi);
  if (cocone.family.size() != sigma.size())
    fail(errc::not_locally_determined, "cocone is not indexed by the generating family");
  for (size_t k = 0; k < sigma.size(); ++k)
    if (!presheaf_equal(cocone.family[k], sigma[k].presheaf))
      fail(errc::not_locally_determined, "cocone is not indexed by the generating family");
  LocalVerdict local = is_locally_determined(cocone, budget);
  if (!local.ok) fail(errc::not_locally_determined, local.witness);

  std::vector<std::vector<int>> comp(xi.xi().elems.size());
  for (size_t k = 0; k < sigma.size(); ++k)
    comp[sigma[k].object].push_back(cocone.legs[k].comp[sigma[k].object][sigma[k].generator]);
  NatTrans med = make_nat(xi.xi(), cocone.apex, std::move(comp));

  for (size_t k = 0; k < sigma.size(); ++k) {
    NatTrans via = compose_nat(med, xi_component(xi, sigma[k].presheaf));
    if (!nat_equal(via, cocone.legs[k])) fail(errc::internal_error, "mediating triangle failed");
  }
  // uniqueness by exhaustive comparison over all maps out of the classifier
  int satisfying = 0;
  for (const auto& cand : enumerate_nat_trans(xi.xi(), cocone.apex, false, budget)) {
    bool all = true;
    for (size_t k = 0; k < sigma.size() && all; ++k)
      all = nat_equal(compose_nat(cand, xi_component(xi, sigma[k].presheaf)), cocone.legs[k]);
    if (all) ++satisfying;
  }
  if (satisfying != 1) fail(errc::internal_error, "mediating map is not unique");
  return med;
}

SigmaColimitReport sigma_colimit_oracle(const CatPtr& cat, const Budget& budget) {
  XiObject xi = local_state_classifier(cat, budget);
  std::vector<SigmaMember> sigma = sigma_family(xi);
  const int no = static_cast<int>(cat->objects.size());

  // disjoint union of the generating quotients, glued along every mono
  std::vector<std::vector<int>> offset(sigma.size(), std::vector<int>(no, 0));
  std::vector<int> width(no, 0);
  for (size_t k = 0; k < sigma.size(); ++k)
    for (int o = 0; o < no; ++o) {
      offset[k][o] = width[o];
      width[o] += sigma[k].presheaf.size(o);
    }
  std::vector<std::vector<int>> parent(no);
  for (int o = 0; o < no; ++o) {
    parent[o].resize(width[o]);
    std::iota(parent[o].begin(), parent[o].end(), 0);
  }
  auto find = [&](int o, int v) {
    while (parent[o][v] != v) {
      parent[o][v] = parent[o][parent[o][v]];
      v = parent[o][v];
    }
    return v;
  };
  auto unite_uf = [&](int o, int a, int b) {
    a = find(o, a);
    b = find(o, b);
    if (a != b) parent[o][std::max(a, b)] = std::min(a, b);
  };
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = 0; j < sigma.size(); ++j)
      for (const auto& m :
           enumerate_nat_trans(sigma[i].presheaf, sigma[j].presheaf, true, budget))
        for (int o = 0; o < no; ++o)
          for (int v = 0; v < sigma[i].presheaf.size(o); ++v)
            unite_uf(o, offset[i][o] + v, offset[j][o] + m.comp[o][v]);

  Presheaf colim;
  colim.cat = cat;
  colim.elems.resize(no);
  std::vector<std::vector<int>> block(no);
  std::vector<std::vector<std::pair<int, int>>> reps(no);  // block -> (member, index)
  for (int o = 0; o < no; ++o) {
    block[o].assign(width[o], -1);
    for (size_t k = 0; k < sigma.size(); ++k)
      for (int v = 0; v < sigma[k].presheaf.size(o); ++v) {
        int g = offset[k][o] + v;
        if (find(o, g) == g) {
          block[o][g] = static_cast<int>(reps[o].size());
          reps[o].emplace_back(static_cast<int>(k), v);
          colim.elems[o].push_back(std::to_string(k) + ":" + sigma[k].presheaf.elems[o][v]);
        }
      }
    for (int g = 0; g < width[o]; ++g) block[o][g] = block[o][find(o, g)];
  }
  colim.act.resize(cat->morphisms.size());
  for (size_t f = 0; f < cat->morphisms.size(); ++f) {
    const Morph& mm = cat->morphisms[f];
    for (auto [k, v] : reps[mm.cod])
      colim.act[f].push_back(block[mm.dom][offset[k][mm.dom] + sigma[k].presheaf.act[f][v]]);
  }
  validate_presheaf(colim);

  // comparison with the classifier: a block maps to the state of any member
  std::vector<NatTrans> xs;
  for (const auto& m : sigma) xs.push_back(xi_component(xi, m.presheaf));
  std::vector<std::vector<int>> comp(no);
  for (int o = 0; o < no; ++o)
    for (auto [k, v] : reps[o]) comp[o].push_back(xs[k].comp[o][v]);
  for (size_t k = 0; k < sigma.size(); ++k)
    for (int o = 0; o < no; ++o)
      for (int v = 0; v < sigma[k].presheaf.size(o); ++v)
        if (comp[o][block[o][offset[k][o] + v]] != xs[k].comp[o][v])
          return {false, "comparison map is not well defined", colim};

  NatTrans cmp = make_nat(colim, xi.xi(), std::move(comp));
  if (!classify_mono_epi(cmp).iso)
    return {false, "small colimit is not isomorphic to the classifier", colim};
  return {true, "", colim};
}

std::string fiber_hasse_dot(const InternalSemilattice& l, int c, const std::string& name) {
  const int n = l.carrier.size(c);
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (int i = 0; i < n; ++i)
    out << "  x" << i << " [label=\"" << l.carrier.elems[c][i] << "\"];\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !l.leq(c, i, j)) continue;
      bool covering = true;
      for (int k = 0; k < n && covering; ++k)
        covering = k == i || k == j || !(l.leq(c, i, k) && l.leq(c, k, j));
      if (covering) out << "  x" << i << " -> x" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace topos
