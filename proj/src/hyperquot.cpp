#include "topos/hyperquot.hpp"

#include <algorithm>

namespace topos {

CoherentFamily family_from_subobject(const XiObject& xi, const Subpresheaf& s,
                                     const std::vector<Presheaf>& objects) {
  CoherentFamily fam;
  fam.family = objects;
  for (const auto& x : objects) fam.subs.push_back(preimage(xi_component(xi, x), s));
  return fam;
}

CoherenceVerdict is_coherent(const CoherentFamily& fam, const Budget& budget) {
  for (size_t i = 0; i < fam.family.size(); ++i)
    for (size_t j = 0; j < fam.family.size(); ++j)
      for (const auto& m : enumerate_nat_trans(fam.family[i], fam.family[j], true, budget)) {
        Subpresheaf pulled = preimage(m, fam.subs[j]);
        if (pulled == fam.subs[i]) continue;
        for (size_t c = 0; c < pulled.mask.size(); ++c)
          for (size_t e = 0; e < pulled.mask[c].size(); ++e)
            if (pulled.mask[c][e] != fam.subs[i].mask[c][e])
              return {false, "mono " + std::to_string(i) + " -> " + std::to_string(j) +
                                 " at element " + fam.family[i].elems[c][e]};
      }
  return {};
}

HyperconnectedQuotient quotient_from_filter(std::shared_ptr<const XiObject> xi,
                                            InternalFilter f) {
  return {std::move(xi), std::move(f)};
}

bool membership(const HyperconnectedQuotient& q, const Presheaf& x) {
  NatTrans st = xi_component(*q.xi, x);
  for (size_t c = 0; c < st.comp.size(); ++c)
    for (int v : st.comp[c])
      if (!q.filter.sub.mask[c][v]) return false;
  return true;
}

Coreflection coreflect(const HyperconnectedQuotient& q, const Presheaf& x) {
  Subpresheaf s = preimage(xi_component(*q.xi, x), q.filter.sub);
  SubObject so = subpresheaf_to_object(x, s);
  return {s, so.object, so.inclusion};
}

std::vector<HyperconnectedQuotient> enumerate_quotients(std::shared_ptr<const XiObject> xi,
                                                        const Budget& budget) {
  std::vector<HyperconnectedQuotient> out;
  for (auto& f : enumerate_filters(xi->sl, budget)) out.push_back({xi, std::move(f)});
  return out;
}

std::vector<HyperconnectedQuotient> enumerate_quotients(const CatPtr& cat,
                                                        const Budget& budget) {
  auto xi = std::make_shared<const XiObject>(local_state_classifier(cat, budget));
  return enumerate_quotients(std::move(xi), budget);
}

std::vector<Presheaf> close_corpus(const CatPtr& cat, std::vector<Presheaf> corpus,
                                   const Budget& budget) {
  const std::uint64_t cap = static_cast<std::uint64_t>(budget.max_closure_object);
  std::vector<Presheaf> base = std::move(corpus);
  std::vector<Presheaf> out;
  out.push_back(terminal_presheaf(cat));
  auto add = [&](Presheaf p) {
    for (const auto& q : out)
      if (presheaf_equal(p, q)) return;
    check_budget(out.size() < budget.max_enumeration, "corpus closure");
    out.push_back(std::move(p));
  };
  for (const auto& x : base) add(x);
  for (const auto& x : base) {
    for (const auto& s : enumerate_subpresheaves(x, budget))
      add(subpresheaf_to_object(x, s).object);
    if (x.total() <= cap)
      for (const auto& r : enumerate_congruences(x, budget)) add(quotient_by(x, r).object);
  }
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = i; j < base.size(); ++j)
      if (base[i].total() * base[j].total() <= cap)
        add(limit_product(base[i], base[j]).apex);
  return out;
}

ClosureReport verify_closure(const XiObject& xi, const Subpresheaf& s,
                             const std::vector<Presheaf>& corpus, const Budget& budget) {
  ClosureReport rep;
  CatPtr cat = xi.cat;
  std::vector<Presheaf> closed = close_corpus(cat, corpus, budget);
  HyperconnectedQuotient q{std::make_shared<const XiObject>(xi), InternalFilter{s}};

  std::vector<char> member(closed.size());
  for (size_t i = 0; i < closed.size(); ++i) member[i] = membership(q, closed[i]);

  // (a) members are closed under subobjects
  for (size_t i = 0; i < closed.size(); ++i) {
    if (!member[i]) continue;
    for (const auto& sub : enumerate_subpresheaves(closed[i], budget))
      if (!membership(q, subpresheaf_to_object(closed[i], sub).object)) {
        rep.ok = false;
        rep.witness = "a subobject of a member is not a member";
        return rep;
      }
  }
  rep.checks.push_back("closed under subobjects");

  // (b) members are closed under quotients, within the derived-object cap
  for (size_t i = 0; i < closed.size(); ++i) {
    if (!member[i] ||
        closed[i].total() > static_cast<std::uint64_t>(budget.max_closure_object))
      continue;
    for (const auto& r : enumerate_congruences(closed[i], budget))
      if (!membership(q, quotient_by(closed[i], r).object)) {
        rep.ok = false;
        rep.witness = "a quotient of a member is not a member";
        return rep;
      }
  }
  rep.checks.push_back("closed under quotients");

  // (c) members are closed under finite products, terminal included
  if (!membership(q, terminal_presheaf(cat))) {
    rep.ok = false;
    rep.witness = "terminal object is not a member";
    return rep;
  }
  for (size_t i = 0; i < closed.size(); ++i)
    for (size_t j = i; j < closed.size(); ++j) {
      if (!member[i] || !member[j]) continue;
      if (!membership(q, limit_product(closed[i], closed[j]).apex)) {
        rep.ok = false;
        rep.witness = "a product of members is not a member";
        return rep;
      }
    }
  rep.checks.push_back("closed under finite products");

  // (d) the counit is couniversal: every map from a member lifts uniquely
  for (size_t j = 0; j < closed.size(); ++j) {
    Coreflection co = coreflect(q, closed[j]);
    // a full coreflection makes the counit an isomorphism: lifts are trivial
    if (co.sub == full_subpresheaf(closed[j])) continue;
    for (size_t i = 0; i < closed.size(); ++i) {
      if (!member[i]) continue;
      for (const auto& f : enumerate_nat_trans(closed[i], closed[j], false, budget)) {
        // the lift exists iff f lands inside the coreflection
        bool lands = true;
        for (size_t c = 0; c < f.comp.size(); ++c)
          for (int v : f.comp[c]) lands = lands && co.sub.mask[c][v];
        if (!lands) {
          rep.ok = false;
          rep.witness = "map from a member does not lift through the counit at object " +
                        std::to_string(j);
          return rep;
        }
        NatTrans lift = make_nat(closed[i], co.object, [&] {
          std::vector<std::vector<int>> comp(f.comp.size());
          for (size_t c = 0; c < f.comp.size(); ++c)
            for (int v : f.comp[c]) comp[c].push_back(co.object.eindex(
                static_cast<int>(c), closed[j].elems[c][v]));
          return comp;
        }());
        if (!nat_equal(compose_nat(co.counit, lift), f)) {
          rep.ok = false;
          rep.witness = "lift does not compose back";
          return rep;
        }
      }
    }
  }
  rep.checks.push_back("counit couniversality");
  return rep;
}

bool is_boolean(const CatPtr& cat, const Budget& budget) {
  OmegaObject om = subobject_classifier(cat, budget);
  for (size_t c = 0; c < cat->objects.size(); ++c)
    if (om.omega().size(static_cast<int>(c)) != 2) return false;
  return true;
}

}  // namespace topos
