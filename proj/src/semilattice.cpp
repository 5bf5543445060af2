#include "topos/semilattice.hpp"

#include <algorithm>
#include <set>

namespace topos {

SemilatticeVerdict check_semilattice(const InternalSemilattice& l) {
  const FinCategory& cat = *l.carrier.cat;
  auto witness = [&](int c, int i, int j = -1, int k = -1) {
    std::string w = cat.objects[c] + ": " + l.carrier.elems[c][i];
    if (j >= 0) w += ", " + l.carrier.elems[c][j];
    if (k >= 0) w += ", " + l.carrier.elems[c][k];
    return w;
  };
  for (size_t c = 0; c < cat.objects.size(); ++c) {
    const int n = l.carrier.size(static_cast<int>(c));
    const auto& m = l.meet[c];
    const int top = l.top[c];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[i][j] != m[j][i])
          return {false, "commutativity", witness(static_cast<int>(c), i, j)};
    for (int i = 0; i < n; ++i) {
      if (m[top][i] != i || m[i][top] != i)
        return {false, "unit", witness(static_cast<int>(c), i)};
      if (m[i][i] != i) return {false, "idempotence", witness(static_cast<int>(c), i)};
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (m[m[i][j]][k] != m[i][m[j][k]])
            return {false, "associativity", witness(static_cast<int>(c), i, j, k)};
    }
  }
  for (size_t f = 0; f < cat.morphisms.size(); ++f) {
    const Morph& mm = cat.morphisms[f];
    const auto& act = l.carrier.act[f];
    if (act[l.top[mm.cod]] != l.top[mm.dom])
      return {false, "restriction preserves top", cat.morphisms[f].id};
    const int n = l.carrier.size(mm.cod);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (act[l.meet[mm.cod][i][j]] != l.meet[mm.dom][act[i]][act[j]])
          return {false, "restriction preserves meet",
                  cat.morphisms[f].id + " on " + witness(mm.cod, i, j)};
  }
  return {};
}

MeetMap meet_nat(const InternalSemilattice& l) {
  Cone prod = limit_product(l.carrier, l.carrier);
  std::vector<std::vector<int>> comp(l.carrier.elems.size());
  for (size_t c = 0; c < l.carrier.elems.size(); ++c) {
    const int n = l.carrier.size(static_cast<int>(c));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) comp[c].push_back(l.meet[c][i][j]);
  }
  return {prod, make_nat(prod.apex, l.carrier, std::move(comp))};
}

FilterVerdict is_internal_filter(const InternalSemilattice& l, const Subpresheaf& s) {
  if (!subpresheaf_valid(l.carrier, s)) return {false, "not a subpresheaf"};
  const FinCategory& cat = *l.carrier.cat;
  bool fiberwise = true;
  std::string reason;
  for (size_t c = 0; c < cat.objects.size() && fiberwise; ++c) {
    const int n = l.carrier.size(static_cast<int>(c));
    const auto& in = s.mask[c];
    for (int i = 0; i < n && fiberwise; ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < n; ++j)
        if (l.meet[c][i][j] == i && !in[j]) {
          fiberwise = false;
          reason = "not upward closed at " + cat.objects[c] + ": " + l.carrier.elems[c][i] +
                   " <= " + l.carrier.elems[c][j];
          break;
        }
    }
    if (!fiberwise) break;
    if (!in[l.top[c]]) {
      fiberwise = false;
      reason = "top missing at " + cat.objects[c];
      break;
    }
    for (int i = 0; i < n && fiberwise; ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < n; ++j)
        if (in[j] && !in[l.meet[c][i][j]]) {
          fiberwise = false;
          reason = "not meet-closed at " + cat.objects[c];
          break;
        }
    }
  }

  // Equalizer formulation of upward closure through real presheaf limits:
  // Eq(meet ∘ (m x id), m ∘ pr1) must land inside F x F. Only meaningful
  // once F is a top- and meet-closed subpresheaf.
  bool prefilter = true;
  for (size_t c = 0; c < cat.objects.size() && prefilter; ++c) {
    if (!s.mask[c][l.top[c]]) prefilter = false;
    for (size_t i = 0; i < s.mask[c].size() && prefilter; ++i)
      for (size_t j = 0; j < s.mask[c].size(); ++j)
        if (s.mask[c][i] && s.mask[c][j] && !s.mask[c][l.meet[c][i][j]]) {
          prefilter = false;
          break;
        }
  }
  if (prefilter) {
    SubObject f = subpresheaf_to_object(l.carrier, s);
    Cone fx = limit_product(f.object, l.carrier);
    MeetMap mm = meet_nat(l);
    NatTrans left = compose_nat(
        mm.meet,
        pair_into_product(mm.product, compose_nat(f.inclusion, fx.legs[0]), fx.legs[1]));
    NatTrans right = compose_nat(f.inclusion, fx.legs[0]);
    Cone eq = limit_equalizer(left, right);
    NatTrans second = compose_nat(fx.legs[1], eq.legs[0]);
    bool equalizer_ok = true;
    for (size_t c = 0; c < cat.objects.size(); ++c)
      for (int v : second.comp[c])
        if (!s.mask[c][v]) equalizer_ok = false;
    if (equalizer_ok != fiberwise)
      fail(errc::internal_error, "equalizer and fiberwise upward closure disagree");
  }

  if (!fiberwise) return {false, reason};
  return {};
}

namespace {

// descending fixpoint of per-object generators under g_dom <= g_cod . f
std::vector<int> propagate_generators(const InternalSemilattice& l, std::vector<int> gen) {
  const FinCategory& cat = *l.carrier.cat;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t f = 0; f < cat.morphisms.size(); ++f) {
      const Morph& mm = cat.morphisms[f];
      int restricted = l.carrier.act[f][gen[mm.cod]];
      int lowered = l.meet[mm.dom][gen[mm.dom]][restricted];
      if (lowered != gen[mm.dom]) {
        gen[mm.dom] = lowered;
        changed = true;
      }
    }
  }
  return gen;
}

Subpresheaf upset_of(const InternalSemilattice& l, const std::vector<int>& gen) {
  Subpresheaf s = empty_subpresheaf(l.carrier);
  for (size_t c = 0; c < l.carrier.elems.size(); ++c)
    for (int i = 0; i < l.carrier.size(static_cast<int>(c)); ++i)
      s.mask[c][i] = l.meet[c][gen[c]][i] == gen[c];
  return s;
}

}  // namespace

InternalFilter generated_filter(const InternalSemilattice& l,
                                const std::vector<std::pair<int, int>>& gens) {
  std::vector<int> gen(l.top);
  for (auto [c, e] : gens) gen[c] = l.meet[c][gen[c]][e];
  return {upset_of(l, propagate_generators(l, std::move(gen)))};
}

InternalFilter minimum_filter(const InternalSemilattice& l) { return generated_filter(l, {}); }

InternalFilter maximum_filter(const InternalSemilattice& l) {
  return {full_subpresheaf(l.carrier)};
}

std::vector<InternalFilter> enumerate_filters(const InternalSemilattice& l,
                                              const Budget& budget) {
  // A filter of a finite fiber is the up-set of its meet, so an internal
  // filter is a restriction-compatible choice of one generator per fiber.
  std::vector<int> bottom = propagate_generators(l, l.top);
  std::set<std::vector<int>> seen{bottom};
  std::vector<std::vector<int>> queue{bottom};
  while (!queue.empty()) {
    std::vector<int> gen = std::move(queue.back());
    queue.pop_back();
    for (size_t c = 0; c < l.carrier.elems.size(); ++c)
      for (int e = 0; e < l.carrier.size(static_cast<int>(c)); ++e) {
        if (l.meet[c][gen[c]][e] == gen[c]) continue;  // already below e
        std::vector<int> next = gen;
        next[c] = l.meet[c][next[c]][e];
        next = propagate_generators(l, std::move(next));
        if (seen.insert(next).second) {
          check_budget(seen.size() <= budget.max_enumeration, "filter search");
          queue.push_back(std::move(next));
        }
      }
  }
  std::set<InternalFilter> out;
  for (const auto& gen : seen) out.insert({upset_of(l, gen)});
  return {out.begin(), out.end()};
}

bool is_semilattice_hom(const NatTrans& h, const InternalSemilattice& src,
                        const InternalSemilattice& dst) {
  for (size_t c = 0; c < h.comp.size(); ++c) {
    if (h.comp[c][src.top[c]] != dst.top[c]) return false;
    const int n = src.carrier.size(static_cast<int>(c));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (h.comp[c][src.meet[c][i][j]] != dst.meet[c][h.comp[c][i]][h.comp[c][j]])
          return false;
  }
  return true;
}

InternalFilter pullback_filter(const NatTrans& h, const InternalSemilattice& src,
                               const InternalSemilattice& dst, const InternalFilter& f) {
  if (!is_semilattice_hom(h, src, dst))
    fail(errc::not_a_semilattice_hom, "pullback_filter needs a semilattice homomorphism");
  InternalFilter r{preimage(h, f.sub)};
  if (!is_internal_filter(src, r.sub).ok)
    fail(errc::internal_error, "pullback of a filter is not a filter");
  return r;
}

std::vector<NatTrans> enumerate_semilattice_homs(const InternalSemilattice& src,
                                                 const InternalSemilattice& dst,
                                                 const Budget& budget) {
  for (size_t c = 0; c < src.carrier.elems.size(); ++c)
    check_budget(src.carrier.size(static_cast<int>(c)) <= budget.max_hom_fiber &&
                     dst.carrier.size(static_cast<int>(c)) <= budget.max_hom_fiber,
                 "hom-set search fiber too large");
  std::vector<NatTrans> out;
  for (auto& h : enumerate_nat_trans(src.carrier, dst.carrier, false, budget))
    if (is_semilattice_hom(h, src, dst)) out.push_back(std::move(h));
  return out;
}

}  // namespace topos
