#ifndef TOPOS_SITE_HPP
#define TOPOS_SITE_HPP

#include <map>
#include <string>
#include <vector>

#include "topos/semilattice.hpp"

namespace topos {

/// A saturated Grothendieck topology on a finite category. Sieves are masks
/// over the morphism list; only morphisms into the object may be set.
struct GrothendieckTopology {
  CatPtr cat;
  std::vector<std::vector<std::vector<char>>> covers;  // per object, sorted
  std::vector<std::vector<int>> minimal;  // the least covering sieve, as morphisms

  bool is_covering(int c, const std::vector<char>& sieve) const;
};

// saturates per-object generating families (lists of morphism names) to a
// full topology and verifies the axioms exhaustively
GrothendieckTopology validate_topology(
    const CatPtr& cat, const std::vector<std::vector<std::vector<std::string>>>& generators,
    const Budget& budget = {});

GrothendieckTopology trivial_topology(const CatPtr& cat, const Budget& budget = {});

struct SheafVerdict {
  bool ok = true;
  std::string witness;
};
SheafVerdict is_sheaf(const Presheaf& p, const GrothendieckTopology& j,
                      const Budget& budget = {});

/// One application of the plus construction. Fibers are matching families on
/// the minimal cover; the family tables stay available for later lookups.
struct PlusStep {
  Presheaf object;
  NatTrans unit;
  std::vector<std::vector<int>> cover;                 // minimal cover morphisms per object
  std::vector<std::vector<std::vector<int>>> families; // per object, canonical order
  std::vector<std::map<std::vector<int>, int>> index;
};

PlusStep plus_construction(const Presheaf& p, const GrothendieckTopology& j,
                           const Budget& budget = {});

struct Sheafification {
  Presheaf sheaf;
  NatTrans unit;  // base -> sheaf
  PlusStep step1, step2;
};

Sheafification sheafify(const Presheaf& p, const GrothendieckTopology& j,
                        const Budget& budget = {});

// the sheafification of a map between the two bases
NatTrans sheafify_map(const Sheafification& src, const Sheafification& dst, const NatTrans& h);

Subpresheaf j_closure(const Presheaf& ambient, const Subpresheaf& s,
                      const GrothendieckTopology& j);

struct SheafImage {
  NatTrans epi;
  NatTrans mono;
  Subpresheaf image;  // the J-closed image inside the target
};
// both endpoints must be sheaves
SheafImage sheaf_image(const NatTrans& h, const GrothendieckTopology& j,
                       const Budget& budget = {});

/// A quotient sheaf of a sheaf A, keyed by the kernel pair of its projection.
struct QuotientSheaf {
  Congruence kernel;  // on A
  Presheaf object;
  NatTrans projection;  // A -> object, epi in sheaves
};

std::vector<QuotientSheaf> enumerate_quotient_sheaves(const Presheaf& sheaf,
                                                      const GrothendieckTopology& j,
                                                      const Budget& budget = {});

/// Local state classifier of a finite site: the sheafification of the
/// presheaf of quotient sheaves of the sheafified representables.
struct SiteXi {
  GrothendieckTopology j;
  std::vector<Sheafification> ay;               // of y(c)
  std::vector<std::vector<QuotientSheaf>> states;
  std::vector<std::map<Congruence, int>> index;  // kernel -> state
  Presheaf xi0;
  Sheafification xi;  // of xi0
  InternalSemilattice sl;  // on the sheafified carrier
};

SiteXi lsc_of_site(const CatPtr& cat, const GrothendieckTopology& j,
                   const Budget& budget = {});

// cocone component for a J-sheaf: unit ∘ orb
NatTrans site_xi_component(const SiteXi& sx, const Presheaf& x, const Budget& budget = {});

bool site_xi_is_terminal(const SiteXi& sx);

}  // namespace topos

#endif
