#include "topos/presheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace topos {

std::uint64_t Presheaf::total() const {
  std::uint64_t t = 0;
  for (const auto& e : elems) t += e.size();
  return t;
}

int Presheaf::eindex(int c, const std::string& id) const {
  for (int i = 0; i < size(c); ++i)
    if (elems[c][i] == id) return i;
  fail(errc::unknown_element, "no element '" + id + "' at " + cat->objects[c]);
}

std::uint64_t Subpresheaf::count() const {
  std::uint64_t t = 0;
  for (const auto& m : mask) t += std::count(m.begin(), m.end(), 1);
  return t;
}

void validate_presheaf(const Presheaf& x) {
  const FinCategory& c = *x.cat;
  if (x.elems.size() != c.objects.size() || x.act.size() != c.morphisms.size())
    fail(errc::parse_error, "presheaf tables do not match the category");
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    if (x.act[m].size() != x.elems[c.morphisms[m].cod].size())
      fail(errc::parse_error, "action of '" + c.morphisms[m].id + "' has wrong arity");
    for (int v : x.act[m])
      if (v < 0 || v >= x.size(c.morphisms[m].dom))
        fail(errc::parse_error, "action of '" + c.morphisms[m].id + "' out of range");
  }
  for (size_t o = 0; o < c.objects.size(); ++o)
    for (int i = 0; i < x.size(static_cast<int>(o)); ++i)
      if (x.act[c.identity[o]][i] != i)
        fail(errc::parse_error, "identity action is not the identity at " + c.objects[o]);
  for (size_t g = 0; g < c.morphisms.size(); ++g)
    for (size_t f = 0; f < c.morphisms.size(); ++f) {
      int gf = c.comp[g][f];
      if (gf == -1) continue;
      // contravariance: X(g∘f) = X(f) ∘ X(g)
      for (int v = 0; v < x.size(c.morphisms[g].cod); ++v)
        if (x.act[gf][v] != x.act[f][x.act[g][v]])
          fail(errc::parse_error, "functoriality fails on (" + c.morphisms[g].id + ", " +
                                      c.morphisms[f].id + ")");
    }
}

Presheaf make_presheaf(CatPtr cat, std::vector<std::vector<std::string>> elems,
                       std::vector<std::vector<int>> act) {
  Presheaf x;
  x.cat = std::move(cat);
  x.elems = std::move(elems);
  x.act = std::move(act);
  validate_presheaf(x);
  return x;
}

Presheaf yoneda(const CatPtr& cat, int c) {
  const FinCategory& k = *cat;
  if (c < 0 || c >= static_cast<int>(k.objects.size())) fail(errc::unknown_object, "yoneda");
  Presheaf x;
  x.cat = cat;
  const int no = static_cast<int>(k.objects.size());
  std::vector<std::vector<int>> homs(no);
  x.elems.resize(no);
  for (int o = 0; o < no; ++o) {
    homs[o] = k.hom(o, c);
    for (int m : homs[o]) x.elems[o].push_back(k.morphisms[m].id);
  }
  x.act.resize(k.morphisms.size());
  for (size_t m = 0; m < k.morphisms.size(); ++m) {
    const Morph& mm = k.morphisms[m];
    for (int g : homs[mm.cod]) {
      int comp = k.compose(g, static_cast<int>(m));
      const auto& row = homs[mm.dom];
      int pos = static_cast<int>(std::lower_bound(row.begin(), row.end(), comp) - row.begin());
      x.act[m].push_back(pos);
    }
  }
  validate_presheaf(x);
  return x;
}

Presheaf terminal_presheaf(const CatPtr& cat) {
  Presheaf x;
  x.cat = cat;
  x.elems.assign(cat->objects.size(), {"*"});
  x.act.assign(cat->morphisms.size(), {0});
  return x;
}

Presheaf initial_presheaf(const CatPtr& cat) {
  Presheaf x;
  x.cat = cat;
  x.elems.assign(cat->objects.size(), {});
  x.act.assign(cat->morphisms.size(), {});
  return x;
}

NatTrans make_nat(Presheaf src, Presheaf dst, std::vector<std::vector<int>> comp) {
  NatTrans h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.comp = std::move(comp);
  const FinCategory& c = *h.src.cat;
  if (h.comp.size() != c.objects.size()) fail(errc::parse_error, "component count mismatch");
  for (size_t o = 0; o < c.objects.size(); ++o) {
    if (h.comp[o].size() != h.src.elems[o].size())
      fail(errc::parse_error, "component arity mismatch");
    for (int v : h.comp[o])
      if (v < 0 || v >= h.dst.size(static_cast<int>(o)))
        fail(errc::parse_error, "component out of range");
  }
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    for (int v = 0; v < h.src.size(mm.cod); ++v)
      if (h.comp[mm.dom][h.src.act[m][v]] != h.dst.act[m][h.comp[mm.cod][v]])
        fail(errc::parse_error, "naturality fails at '" + mm.id + "'");
  }
  return h;
}

NatTrans identity_nat(const Presheaf& x) {
  std::vector<std::vector<int>> comp(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o) {
    comp[o].resize(x.elems[o].size());
    std::iota(comp[o].begin(), comp[o].end(), 0);
  }
  return make_nat(x, x, std::move(comp));
}

NatTrans compose_nat(const NatTrans& g, const NatTrans& f) {
  std::vector<std::vector<int>> comp(f.comp.size());
  for (size_t o = 0; o < f.comp.size(); ++o)
    for (int v : f.comp[o]) comp[o].push_back(g.comp[o][v]);
  return make_nat(f.src, g.dst, std::move(comp));
}

bool nat_equal(const NatTrans& a, const NatTrans& b) { return a.comp == b.comp; }

NatTrans element_morphism(const Presheaf& x, int c, int elem) {
  if (c < 0 || c >= static_cast<int>(x.elems.size()) || elem < 0 || elem >= x.size(c))
    fail(errc::unknown_element, "element_morphism");
  const FinCategory& k = *x.cat;
  Presheaf yc = yoneda(x.cat, c);
  std::vector<std::vector<int>> comp(k.objects.size());
  for (size_t o = 0; o < k.objects.size(); ++o)
    for (int g : k.hom(static_cast<int>(o), c)) comp[o].push_back(x.act[g][elem]);
  return make_nat(std::move(yc), x, std::move(comp));
}

MonoEpi classify_mono_epi(const NatTrans& h) {
  MonoEpi r{true, true, false};
  for (size_t o = 0; o < h.comp.size(); ++o) {
    std::vector<char> hit(h.dst.size(static_cast<int>(o)), 0);
    for (int v : h.comp[o]) {
      if (hit[v]) r.mono = false;
      hit[v] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) r.epi = false;
  }
  r.iso = r.mono && r.epi;
  return r;
}

bool subpresheaf_valid(const Presheaf& x, const Subpresheaf& s) {
  if (s.mask.size() != x.elems.size()) return false;
  for (size_t o = 0; o < s.mask.size(); ++o)
    if (s.mask[o].size() != x.elems[o].size()) return false;
  const FinCategory& c = *x.cat;
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    for (int v = 0; v < x.size(mm.cod); ++v)
      if (s.mask[mm.cod][v] && !s.mask[mm.dom][x.act[m][v]]) return false;
  }
  return true;
}

Subpresheaf full_subpresheaf(const Presheaf& x) {
  Subpresheaf s;
  for (const auto& e : x.elems) s.mask.emplace_back(e.size(), 1);
  return s;
}

Subpresheaf empty_subpresheaf(const Presheaf& x) {
  Subpresheaf s;
  for (const auto& e : x.elems) s.mask.emplace_back(e.size(), 0);
  return s;
}

Subpresheaf generated_subpresheaf(const Presheaf& x,
                                  const std::vector<std::pair<int, int>>& gens) {
  const FinCategory& c = *x.cat;
  Subpresheaf s = empty_subpresheaf(x);
  std::vector<std::pair<int, int>> work;
  for (auto [o, i] : gens)
    if (!s.mask[o][i]) {
      s.mask[o][i] = 1;
      work.emplace_back(o, i);
    }
  while (!work.empty()) {
    auto [o, i] = work.back();
    work.pop_back();
    for (size_t m = 0; m < c.morphisms.size(); ++m) {
      if (c.morphisms[m].cod != o) continue;
      int j = x.act[m][i], d = c.morphisms[m].dom;
      if (!s.mask[d][j]) {
        s.mask[d][j] = 1;
        work.emplace_back(d, j);
      }
    }
  }
  return s;
}

Subpresheaf intersect(const Subpresheaf& a, const Subpresheaf& b) {
  Subpresheaf r = a;
  for (size_t o = 0; o < r.mask.size(); ++o)
    for (size_t i = 0; i < r.mask[o].size(); ++i) r.mask[o][i] = a.mask[o][i] && b.mask[o][i];
  return r;
}

Subpresheaf unite(const Subpresheaf& a, const Subpresheaf& b) {
  Subpresheaf r = a;
  for (size_t o = 0; o < r.mask.size(); ++o)
    for (size_t i = 0; i < r.mask[o].size(); ++i) r.mask[o][i] = a.mask[o][i] || b.mask[o][i];
  return r;
}

bool subset_of(const Subpresheaf& a, const Subpresheaf& b) {
  for (size_t o = 0; o < a.mask.size(); ++o)
    for (size_t i = 0; i < a.mask[o].size(); ++i)
      if (a.mask[o][i] && !b.mask[o][i]) return false;
  return true;
}

SubObject subpresheaf_to_object(const Presheaf& x, const Subpresheaf& s) {
  const FinCategory& c = *x.cat;
  Presheaf u;
  u.cat = x.cat;
  u.elems.resize(x.elems.size());
  std::vector<std::vector<int>> into(x.elems.size());  // u index -> x index
  std::vector<std::vector<int>> back(x.elems.size());  // x index -> u index
  for (size_t o = 0; o < x.elems.size(); ++o) {
    back[o].assign(x.elems[o].size(), -1);
    for (size_t i = 0; i < x.elems[o].size(); ++i)
      if (s.mask[o][i]) {
        back[o][i] = static_cast<int>(into[o].size());
        into[o].push_back(static_cast<int>(i));
        u.elems[o].push_back(x.elems[o][i]);
      }
  }
  u.act.resize(c.morphisms.size());
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    for (int i : into[mm.cod]) u.act[m].push_back(back[mm.dom][x.act[m][i]]);
  }
  validate_presheaf(u);
  std::vector<std::vector<int>> comp = into;
  return {u, make_nat(u, x, std::move(comp))};
}

Subpresheaf preimage(const NatTrans& h, const Subpresheaf& s) {
  Subpresheaf r = empty_subpresheaf(h.src);
  for (size_t o = 0; o < h.comp.size(); ++o)
    for (size_t i = 0; i < h.comp[o].size(); ++i) r.mask[o][i] = s.mask[o][h.comp[o][i]];
  return r;
}

ImageFactorization image_factorization(const NatTrans& h) {
  Subpresheaf img = empty_subpresheaf(h.dst);
  for (size_t o = 0; o < h.comp.size(); ++o)
    for (int v : h.comp[o]) img.mask[o][v] = 1;
  SubObject so = subpresheaf_to_object(h.dst, img);
  std::vector<std::vector<int>> back(h.dst.elems.size());
  for (size_t o = 0; o < h.dst.elems.size(); ++o) {
    back[o].assign(h.dst.elems[o].size(), -1);
    for (size_t k = 0; k < so.inclusion.comp[o].size(); ++k)
      back[o][so.inclusion.comp[o][k]] = static_cast<int>(k);
  }
  std::vector<std::vector<int>> ecomp(h.comp.size());
  for (size_t o = 0; o < h.comp.size(); ++o)
    for (int v : h.comp[o]) ecomp[o].push_back(back[o][v]);
  return {make_nat(h.src, so.object, std::move(ecomp)), so.inclusion, img};
}

namespace {

Congruence canonical_from_uf(const Presheaf& x, std::vector<std::vector<int>>& parent) {
  auto find = [&](int o, int i) {
    while (parent[o][i] != i) {
      parent[o][i] = parent[o][parent[o][i]];
      i = parent[o][i];
    }
    return i;
  };
  Congruence r;
  r.rep.resize(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o) {
    std::vector<int> least(x.elems[o].size(), -1);
    r.rep[o].assign(x.elems[o].size(), -1);
    for (int i = 0; i < x.size(static_cast<int>(o)); ++i) {
      int root = find(static_cast<int>(o), i);
      if (least[root] < 0) least[root] = i;
      r.rep[o][i] = least[root];
    }
  }
  return r;
}

}  // namespace

bool congruence_valid(const Presheaf& x, const Congruence& r) {
  if (r.rep.size() != x.elems.size()) return false;
  for (size_t o = 0; o < r.rep.size(); ++o) {
    if (r.rep[o].size() != x.elems[o].size()) return false;
    for (size_t i = 0; i < r.rep[o].size(); ++i) {
      int v = r.rep[o][i];
      if (v < 0 || v > static_cast<int>(i) || r.rep[o][v] != v) return false;
    }
  }
  const FinCategory& c = *x.cat;
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    for (int v = 0; v < x.size(mm.cod); ++v)
      if (r.rep[mm.dom][x.act[m][v]] != r.rep[mm.dom][x.act[m][r.rep[mm.cod][v]]]) return false;
  }
  return true;
}

Congruence discrete_congruence(const Presheaf& x) {
  Congruence r;
  for (const auto& e : x.elems) {
    std::vector<int> v(e.size());
    std::iota(v.begin(), v.end(), 0);
    r.rep.push_back(std::move(v));
  }
  return r;
}

Congruence total_congruence(const Presheaf& x) {
  Congruence r;
  for (const auto& e : x.elems) r.rep.emplace_back(e.size(), 0);
  return r;
}

Congruence generated_congruence(const Presheaf& x,
                                const std::vector<std::tuple<int, int, int>>& pairs) {
  const FinCategory& c = *x.cat;
  std::vector<std::vector<int>> parent(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o) {
    parent[o].resize(x.elems[o].size());
    std::iota(parent[o].begin(), parent[o].end(), 0);
  }
  auto find = [&](int o, int i) {
    while (parent[o][i] != i) {
      parent[o][i] = parent[o][parent[o][i]];
      i = parent[o][i];
    }
    return i;
  };
  std::vector<std::tuple<int, int, int>> work(pairs);
  while (!work.empty()) {
    auto [o, a, b] = work.back();
    work.pop_back();
    int ra = find(o, a), rb = find(o, b);
    if (ra == rb) continue;
    parent[o][std::max(ra, rb)] = std::min(ra, rb);
    for (size_t m = 0; m < c.morphisms.size(); ++m)
      if (c.morphisms[m].cod == o)
        work.emplace_back(c.morphisms[m].dom, x.act[m][a], x.act[m][b]);
  }
  return canonical_from_uf(x, parent);
}

Congruence congruence_from_blocks(const Presheaf& x,
                                  const std::vector<std::vector<std::vector<int>>>& blocks) {
  std::vector<std::tuple<int, int, int>> pairs;
  for (size_t o = 0; o < blocks.size(); ++o)
    for (const auto& blk : blocks[o])
      for (size_t k = 1; k < blk.size(); ++k)
        pairs.emplace_back(static_cast<int>(o), blk[0], blk[k]);
  Congruence r = generated_congruence(x, pairs);
  // reject inputs whose stated blocks are not already action-closed
  for (size_t o = 0; o < blocks.size(); ++o)
    for (const auto& blk : blocks[o])
      for (size_t k = 1; k < blk.size(); ++k)
        if (r.rep[o][blk[0]] != r.rep[o][blk[k]])
          fail(errc::internal_error, "block closure lost");
  return r;
}

Congruence meet_congruence(const Congruence& a, const Congruence& b) {
  Congruence r;
  r.rep.resize(a.rep.size());
  for (size_t o = 0; o < a.rep.size(); ++o) {
    std::map<std::pair<int, int>, int> least;
    r.rep[o].resize(a.rep[o].size());
    for (size_t i = 0; i < a.rep[o].size(); ++i) {
      auto key = std::make_pair(a.rep[o][i], b.rep[o][i]);
      auto it = least.find(key);
      if (it == least.end()) it = least.emplace(key, static_cast<int>(i)).first;
      r.rep[o][i] = it->second;
    }
  }
  return r;
}

bool coarser_or_equal(const Congruence& fine, const Congruence& coarse) {
  for (size_t o = 0; o < fine.rep.size(); ++o)
    for (size_t i = 0; i < fine.rep[o].size(); ++i)
      if (coarse.rep[o][i] != coarse.rep[o][fine.rep[o][i]]) return false;
  return true;
}

Quotient quotient_by(const Presheaf& x, const Congruence& r) {
  const FinCategory& c = *x.cat;
  if (r.rep.size() != x.elems.size()) fail(errc::not_a_congruence, "shape mismatch");
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    for (int v = 0; v < x.size(mm.cod); ++v) {
      int w = r.rep[mm.cod][v];
      if (r.rep[mm.dom][x.act[m][v]] != r.rep[mm.dom][x.act[m][w]])
        fail(errc::not_a_congruence,
             "pair (" + x.elems[mm.cod][v] + ", " + x.elems[mm.cod][w] +
                 ") breaks along '" + mm.id + "'");
    }
  }
  Presheaf q;
  q.cat = x.cat;
  q.elems.resize(x.elems.size());
  std::vector<std::vector<int>> block(x.elems.size());  // x index -> block index
  std::vector<std::vector<int>> reps(x.elems.size());   // block index -> x index
  for (size_t o = 0; o < x.elems.size(); ++o) {
    block[o].assign(x.elems[o].size(), -1);
    for (int i = 0; i < x.size(static_cast<int>(o)); ++i)
      if (r.rep[o][i] == i) {
        block[o][i] = static_cast<int>(reps[o].size());
        reps[o].push_back(i);
        q.elems[o].push_back(x.elems[o][i]);
      }
    for (int i = 0; i < x.size(static_cast<int>(o)); ++i) block[o][i] = block[o][r.rep[o][i]];
  }
  q.act.resize(c.morphisms.size());
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    for (int i : reps[mm.cod]) q.act[m].push_back(block[mm.dom][x.act[m][i]]);
  }
  validate_presheaf(q);
  return {q, make_nat(x, q, std::move(block))};
}

std::vector<Subpresheaf> enumerate_subpresheaves(const Presheaf& x, const Budget& budget) {
  check_budget(x.total() <= budget.max_carrier, "carrier too large");
  std::vector<Subpresheaf> principals;
  for (size_t o = 0; o < x.elems.size(); ++o)
    for (int i = 0; i < x.size(static_cast<int>(o)); ++i)
      principals.push_back(generated_subpresheaf(x, {{static_cast<int>(o), i}}));
  std::sort(principals.begin(), principals.end());
  principals.erase(std::unique(principals.begin(), principals.end()), principals.end());

  // every subpresheaf is the union of the principal ones it contains, so the
  // union-closure of the principal family is the full subobject lattice
  std::set<Subpresheaf> seen;
  std::vector<Subpresheaf> queue{empty_subpresheaf(x)};
  seen.insert(queue.front());
  while (!queue.empty()) {
    Subpresheaf s = std::move(queue.back());
    queue.pop_back();
    for (const auto& p : principals) {
      Subpresheaf u = unite(s, p);
      if (seen.insert(u).second) {
        check_budget(seen.size() <= budget.max_enumeration, "subpresheaf search");
        queue.push_back(std::move(u));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Congruence> enumerate_congruences(const Presheaf& x, const Budget& budget) {
  check_budget(x.total() <= budget.max_carrier, "carrier too large");
  std::vector<std::tuple<int, int, int>> seeds;
  for (size_t o = 0; o < x.elems.size(); ++o)
    for (int i = 0; i < x.size(static_cast<int>(o)); ++i)
      for (int j = i + 1; j < x.size(static_cast<int>(o)); ++j)
        seeds.emplace_back(static_cast<int>(o), i, j);

  auto join_with_seed = [&](const Congruence& r, const std::tuple<int, int, int>& seed) {
    std::vector<std::tuple<int, int, int>> pairs{seed};
    for (size_t o = 0; o < r.rep.size(); ++o)
      for (size_t i = 0; i < r.rep[o].size(); ++i)
        if (r.rep[o][i] != static_cast<int>(i))
          pairs.emplace_back(static_cast<int>(o), static_cast<int>(i), r.rep[o][i]);
    return generated_congruence(x, pairs);
  };

  std::set<Congruence> seen;
  std::vector<Congruence> queue{discrete_congruence(x)};
  seen.insert(queue.front());
  while (!queue.empty()) {
    Congruence r = std::move(queue.back());
    queue.pop_back();
    for (const auto& s : seeds) {
      auto [o, i, j] = s;
      if (r.rep[o][i] == r.rep[o][j]) continue;
      Congruence u = join_with_seed(r, s);
      if (seen.insert(u).second) {
        check_budget(seen.size() <= budget.max_enumeration, "congruence search");
        queue.push_back(std::move(u));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// ---- limits & colimits ----

Cone limit_terminal(const CatPtr& cat) { return {terminal_presheaf(cat), {}}; }

Cone limit_product(const Presheaf& x, const Presheaf& y) {
  const FinCategory& c = *x.cat;
  Presheaf p;
  p.cat = x.cat;
  p.elems.resize(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o)
    for (const auto& a : x.elems[o])
      for (const auto& b : y.elems[o]) p.elems[o].push_back("(" + a + "," + b + ")");
  p.act.resize(c.morphisms.size());
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    const int nyd = y.size(mm.dom);
    for (int a = 0; a < x.size(mm.cod); ++a)
      for (int b = 0; b < y.size(mm.cod); ++b)
        p.act[m].push_back(x.act[m][a] * nyd + y.act[m][b]);
  }
  validate_presheaf(p);
  std::vector<std::vector<int>> pr1(x.elems.size()), pr2(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o)
    for (int a = 0; a < x.size(static_cast<int>(o)); ++a)
      for (int b = 0; b < y.size(static_cast<int>(o)); ++b) {
        pr1[o].push_back(a);
        pr2[o].push_back(b);
      }
  return {p, {make_nat(p, x, std::move(pr1)), make_nat(p, y, std::move(pr2))}};
}

NatTrans pair_into_product(const Cone& prod, const NatTrans& f, const NatTrans& g) {
  std::vector<std::vector<int>> comp(f.comp.size());
  for (size_t o = 0; o < f.comp.size(); ++o) {
    const int nyd = g.dst.size(static_cast<int>(o));
    for (size_t i = 0; i < f.comp[o].size(); ++i)
      comp[o].push_back(f.comp[o][i] * nyd + g.comp[o][i]);
  }
  return make_nat(f.src, prod.apex, std::move(comp));
}

NatTrans unique_to_terminal(const Cone& term, const Presheaf& x) {
  std::vector<std::vector<int>> comp(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o) comp[o].assign(x.elems[o].size(), 0);
  return make_nat(x, term.apex, std::move(comp));
}

Cone limit_equalizer(const NatTrans& f, const NatTrans& g) {
  Subpresheaf s = empty_subpresheaf(f.src);
  for (size_t o = 0; o < f.comp.size(); ++o)
    for (size_t i = 0; i < f.comp[o].size(); ++i)
      s.mask[o][i] = f.comp[o][i] == g.comp[o][i];
  SubObject so = subpresheaf_to_object(f.src, s);
  return {so.object, {so.inclusion}};
}

Cone limit_pullback(const NatTrans& f, const NatTrans& g) {
  Cone prod = limit_product(f.src, g.src);
  NatTrans fp = compose_nat(f, prod.legs[0]);
  NatTrans gp = compose_nat(g, prod.legs[1]);
  Cone eq = limit_equalizer(fp, gp);
  return {eq.apex,
          {compose_nat(prod.legs[0], eq.legs[0]), compose_nat(prod.legs[1], eq.legs[0])}};
}

Cone colimit_initial(const CatPtr& cat) { return {initial_presheaf(cat), {}}; }

Cone colimit_coproduct(const Presheaf& x, const Presheaf& y) {
  const FinCategory& c = *x.cat;
  Presheaf s;
  s.cat = x.cat;
  s.elems.resize(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o) {
    for (const auto& a : x.elems[o]) s.elems[o].push_back("0:" + a);
    for (const auto& b : y.elems[o]) s.elems[o].push_back("1:" + b);
  }
  s.act.resize(c.morphisms.size());
  for (size_t m = 0; m < c.morphisms.size(); ++m) {
    const Morph& mm = c.morphisms[m];
    const int nxd = x.size(mm.dom);
    for (int a = 0; a < x.size(mm.cod); ++a) s.act[m].push_back(x.act[m][a]);
    for (int b = 0; b < y.size(mm.cod); ++b) s.act[m].push_back(nxd + y.act[m][b]);
  }
  validate_presheaf(s);
  std::vector<std::vector<int>> in1(x.elems.size()), in2(x.elems.size());
  for (size_t o = 0; o < x.elems.size(); ++o) {
    in1[o].resize(x.elems[o].size());
    std::iota(in1[o].begin(), in1[o].end(), 0);
    in2[o].resize(y.elems[o].size());
    std::iota(in2[o].begin(), in2[o].end(), x.size(static_cast<int>(o)));
  }
  return {s, {make_nat(x, s, std::move(in1)), make_nat(y, s, std::move(in2))}};
}

Cone colimit_coequalizer(const NatTrans& f, const NatTrans& g) {
  std::vector<std::tuple<int, int, int>> pairs;
  for (size_t o = 0; o < f.comp.size(); ++o)
    for (size_t i = 0; i < f.comp[o].size(); ++i)
      pairs.emplace_back(static_cast<int>(o), f.comp[o][i], g.comp[o][i]);
  Congruence r = generated_congruence(f.dst, pairs);
  Quotient q = quotient_by(f.dst, r);
  return {q.object, {q.projection}};
}

Cone colimit_pushout(const NatTrans& f, const NatTrans& g) {
  Cone cp = colimit_coproduct(f.dst, g.dst);
  NatTrans a = compose_nat(cp.legs[0], f);
  NatTrans b = compose_nat(cp.legs[1], g);
  Cone ce = colimit_coequalizer(a, b);
  return {ce.apex,
          {compose_nat(ce.legs[0], cp.legs[0]), compose_nat(ce.legs[0], cp.legs[1])}};
}

// ---- search over natural transformations ----

namespace {

/// Backtracking enumeration of natural maps X -> Y. Elements are visited in
/// canonical order; choosing an image forces the images of all restrictions,
/// which prunes most of the search space.
class NatSearch {
 public:
  NatSearch(const Presheaf& x, const Presheaf& y, bool mono_only)
      : x_(x), y_(y), mono_(mono_only), cat_(*x.cat) {
    for (size_t o = 0; o < x.elems.size(); ++o)
      for (int i = 0; i < x.size(static_cast<int>(o)); ++i)
        gid_.emplace_back(static_cast<int>(o), i);
    assign_.assign(gid_.size(), -1);
    pos_.resize(x.elems.size());
    size_t k = 0;
    for (size_t o = 0; o < x.elems.size(); ++o) {
      pos_[o].resize(x.elems[o].size());
      for (size_t i = 0; i < x.elems[o].size(); ++i) pos_[o][i] = static_cast<int>(k++);
    }
    if (mono_) {
      used_.resize(y.elems.size());
      for (size_t o = 0; o < y.elems.size(); ++o) used_[o].assign(y.elems[o].size(), 0);
    }
    by_cod_.resize(x.elems.size());
    for (size_t m = 0; m < cat_.morphisms.size(); ++m)
      by_cod_[cat_.morphisms[m].cod].push_back(static_cast<int>(m));
  }

  // visit(comp) returns false to stop the search
  template <typename Visit>
  bool run(Visit&& visit) {
    return dfs(0, visit);
  }

 private:
  template <typename Visit>
  bool dfs(size_t from, Visit& visit) {
    size_t g = from;
    while (g < gid_.size() && assign_[g] != -1) ++g;
    if (g == gid_.size()) {
      std::vector<std::vector<int>> comp(x_.elems.size());
      for (size_t o = 0; o < x_.elems.size(); ++o)
        for (size_t i = 0; i < x_.elems[o].size(); ++i)
          comp[o].push_back(assign_[pos_[o][i]]);
      return visit(std::move(comp));
    }
    auto [o, i] = gid_[g];
    for (int v = 0; v < y_.size(o); ++v) {
      std::vector<int> trail;
      if (propagate(g, v, trail)) {
        if (!dfs(g + 1, visit)) {
          undo(trail);
          return false;
        }
      }
      undo(trail);
    }
    return true;
  }

  bool propagate(size_t g0, int v0, std::vector<int>& trail) {
    std::vector<std::pair<size_t, int>> queue{{g0, v0}};
    while (!queue.empty()) {
      auto [g, v] = queue.back();
      queue.pop_back();
      if (assign_[g] != -1) {
        if (assign_[g] != v) return false;
        continue;
      }
      auto [o, i] = gid_[g];
      if (mono_) {
        if (used_[o][v]) return false;
        used_[o][v] = 1;
      }
      assign_[g] = v;
      trail.push_back(static_cast<int>(g));
      for (int m : by_cod_[o]) {
        int d = cat_.morphisms[m].dom;
        queue.emplace_back(pos_[d][x_.act[m][i]], y_.act[m][v]);
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail) {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
      auto [o, i] = gid_[*it];
      (void)i;
      if (mono_) used_[o][assign_[*it]] = 0;
      assign_[*it] = -1;
    }
    trail.clear();
  }

  const Presheaf& x_;
  const Presheaf& y_;
  bool mono_;
  const FinCategory& cat_;
  std::vector<std::pair<int, int>> gid_;
  std::vector<std::vector<int>> pos_;
  std::vector<int> assign_;
  std::vector<std::vector<char>> used_;
  std::vector<std::vector<int>> by_cod_;
};

}  // namespace

std::vector<NatTrans> enumerate_nat_trans(const Presheaf& x, const Presheaf& y, bool mono_only,
                                          const Budget& budget) {
  std::vector<NatTrans> out;
  NatSearch search(x, y, mono_only);
  search.run([&](std::vector<std::vector<int>>&& comp) {
    out.push_back(make_nat(x, y, std::move(comp)));
    check_budget(out.size() <= budget.max_enumeration, "natural transformation search");
    return true;
  });
  return out;
}

std::optional<NatTrans> find_isomorphism(const Presheaf& x, const Presheaf& y) {
  if (x.elems.size() != y.elems.size()) return std::nullopt;
  for (size_t o = 0; o < x.elems.size(); ++o)
    if (x.elems[o].size() != y.elems[o].size()) return std::nullopt;
  std::optional<NatTrans> found;
  NatSearch search(x, y, true);
  search.run([&](std::vector<std::vector<int>>&& comp) {
    found = make_nat(x, y, std::move(comp));
    return false;  // first hit suffices: injective + equal sizes = iso
  });
  return found;
}

bool presheaf_equal(const Presheaf& a, const Presheaf& b) {
  return a.elems == b.elems && a.act == b.act;
}

Congruence kernel_congruence(const NatTrans& h) {
  Congruence r;
  r.rep.resize(h.comp.size());
  for (size_t o = 0; o < h.comp.size(); ++o) {
    std::map<int, int> least;
    r.rep[o].resize(h.comp[o].size());
    for (size_t i = 0; i < h.comp[o].size(); ++i) {
      auto it = least.find(h.comp[o][i]);
      if (it == least.end()) it = least.emplace(h.comp[o][i], static_cast<int>(i)).first;
      r.rep[o][i] = it->second;
    }
  }
  return r;
}

}  // namespace topos
