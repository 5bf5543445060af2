#ifndef TOPOS_SEMILATTICE_HPP
#define TOPOS_SEMILATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "topos/presheaf.hpp"

namespace topos {

/// A presheaf carrying a fiberwise semilattice: a top element and a meet
/// table per object. Every restriction map must be a fiber-semilattice
/// homomorphism; that, together with the fiber axioms, is exactly an
/// internal semilattice structure on the carrier.
struct InternalSemilattice {
  Presheaf carrier;
  std::vector<int> top;                            // per object
  std::vector<std::vector<std::vector<int>>> meet; // per object, i x j table

  int meet_of(int c, int i, int j) const { return meet[c][i][j]; }
  bool leq(int c, int i, int j) const { return meet[c][i][j] == i; }
};

struct SemilatticeVerdict {
  bool ok = true;
  std::string axiom;    // failed axiom or law
  std::string witness;  // offending object/elements
};

SemilatticeVerdict check_semilattice(const InternalSemilattice& l);

struct InternalFilter {
  Subpresheaf sub;
  bool operator==(const InternalFilter&) const = default;
  bool operator<(const InternalFilter& o) const { return sub < o.sub; }
};

struct FilterVerdict {
  bool ok = true;
  std::string reason;
};

/// Fiberwise filter check plus the equalizer formulation of upward closure,
/// evaluated through actual presheaf limits; both must agree.
FilterVerdict is_internal_filter(const InternalSemilattice& l, const Subpresheaf& s);

std::vector<InternalFilter> enumerate_filters(const InternalSemilattice& l,
                                              const Budget& budget = {});

InternalFilter minimum_filter(const InternalSemilattice& l);
InternalFilter maximum_filter(const InternalSemilattice& l);

// smallest internal filter whose fibers contain the given elements
InternalFilter generated_filter(const InternalSemilattice& l,
                                const std::vector<std::pair<int, int>>& gens);

bool is_semilattice_hom(const NatTrans& h, const InternalSemilattice& src,
                        const InternalSemilattice& dst);

InternalFilter pullback_filter(const NatTrans& h, const InternalSemilattice& src,
                               const InternalSemilattice& dst, const InternalFilter& f);

// meet as an honest natural transformation carrier x carrier -> carrier,
// together with the product cone it is defined on
struct MeetMap {
  Cone product;
  NatTrans meet;
};
MeetMap meet_nat(const InternalSemilattice& l);

// exhaustive, independent enumeration of semilattice homs src -> dst
std::vector<NatTrans> enumerate_semilattice_homs(const InternalSemilattice& src,
                                                 const InternalSemilattice& dst,
                                                 const Budget& budget = {});

}  // namespace topos

#endif
