#ifndef TOPOS_CLASSIFIERS_HPP
#define TOPOS_CLASSIFIERS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topos/semilattice.hpp"

namespace topos {

/// Subobject classifier of a finite presheaf topos. The fiber at c is the
/// set of sieves on c, kept as subpresheaves of y(c); element ids render the
/// sieve as its sorted morphism set.
struct OmegaObject {
  CatPtr cat;
  std::vector<Presheaf> yon;                     // y(c) per object
  std::vector<std::vector<Subpresheaf>> sieves;  // fiber, canonical order
  InternalSemilattice sl;                        // carrier, true (= top), meet

  const Presheaf& omega() const { return sl.carrier; }
  int true_at(int c) const { return sl.top[c]; }
  int sieve_index(int c, const Subpresheaf& s) const;
};

OmegaObject subobject_classifier(const CatPtr& cat, const Budget& budget = {});

// x at c maps to the sieve of morphisms pulling x into s
NatTrans characteristic_map(const OmegaObject& omega, const Presheaf& x, const Subpresheaf& s);
Subpresheaf subobject_of_char(const OmegaObject& omega, const NatTrans& chi);

// the two sides of the universal-filter property of Ω: the characteristic
// map of an internal filter is a semilattice homomorphism, and the pullback
// of true along a homomorphism is an internal filter
NatTrans filter_to_hom(const InternalSemilattice& l, const OmegaObject& omega,
                       const InternalFilter& f);
InternalFilter hom_to_filter(const InternalSemilattice& l, const OmegaObject& omega,
                             const NatTrans& h);

/// Local state classifier of a finite presheaf topos. The fiber at c is the
/// set of co-subobjects of y(c), kept as canonical congruences.
struct XiObject {
  CatPtr cat;
  std::vector<Presheaf> yon;
  std::vector<std::vector<Congruence>> states;  // fiber, canonical order
  std::vector<std::map<Congruence, int>> index;
  InternalSemilattice sl;

  const Presheaf& xi() const { return sl.carrier; }
  int top_at(int c) const { return sl.top[c]; }
  int state_index(int c, const Congruence& r) const;
  int meet_states(int c, int a, int b) const { return sl.meet[c][a][b]; }
};

XiObject local_state_classifier(const CatPtr& cat, const Budget& budget = {});

// the cocone component: x maps to the kernel congruence of its transpose
NatTrans xi_component(const XiObject& xi, const Presheaf& x);

bool xi_is_terminal(const XiObject& xi);

struct CoconeCandidate {
  Presheaf apex;
  std::vector<Presheaf> family;
  std::vector<NatTrans> legs;  // family[i] -> apex
};

struct LocalVerdict {
  bool ok = true;
  std::string witness;
};

// checks psi_X ∘ m = psi_U for every mono between family members
LocalVerdict is_locally_determined(const CoconeCandidate& cocone, const Budget& budget = {});

/// One generating quotient y(c) ->> Q per state of Xi.
struct SigmaMember {
  int object;
  int state;
  Presheaf presheaf;
  NatTrans projection;   // y(object) -> presheaf
  int generator;         // index of the block of id_object in the carrier at object
};
std::vector<SigmaMember> sigma_family(const XiObject& xi);

// unique map Xi -> apex mediating a locally determined cocone over sigma;
// uniqueness is certified by exhaustive comparison
NatTrans mediating_map(const XiObject& xi, const CoconeCandidate& cocone,
                       const Budget& budget = {});

struct SigmaColimitReport {
  bool ok = false;
  std::string detail;
  Presheaf colimit;
};

/// Computes the small colimit over all quotients of representables and all
/// monos between them, then compares it with Xi compatibly with the cocones.
SigmaColimitReport sigma_colimit_oracle(const CatPtr& cat, const Budget& budget = {});

// Hasse diagram of one fiber's order (edges are covering relations)
std::string fiber_hasse_dot(const InternalSemilattice& l, int c, const std::string& name);

}  // namespace topos

#endif
