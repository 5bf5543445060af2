#ifndef TOPOS_PRESHEAF_HPP
#define TOPOS_PRESHEAF_HPP

#include <optional>
#include <string>
#include <vector>

#include "topos/fincat.hpp"

namespace topos {

/// A finite contravariant set-valued functor. For a morphism f: c -> c' the
/// action act[f] maps carrier indices at c' to carrier indices at c.
class Presheaf {
 public:
  CatPtr cat;
  std::vector<std::vector<std::string>> elems;  // per object
  std::vector<std::vector<int>> act;            // per morphism

  int size(int c) const { return static_cast<int>(elems[c].size()); }
  std::uint64_t total() const;
  int apply(int m, int x) const { return act[m][x]; }
  int eindex(int c, const std::string& id) const;
  std::string label(int c, int x) const { return elems[c][x]; }
};

// f: c -> c', component at each object maps src carrier to dst carrier
struct NatTrans {
  Presheaf src, dst;
  std::vector<std::vector<int>> comp;
};

struct Subpresheaf {
  std::vector<std::vector<char>> mask;  // per object, per element
  std::uint64_t count() const;
  bool operator==(const Subpresheaf&) const = default;
  bool operator<(const Subpresheaf& o) const { return mask < o.mask; }
};

/// Canonical congruence: per object, rep[x] is the least carrier index in
/// the block of x. Equality of congruences is equality of rep tables.
struct Congruence {
  std::vector<std::vector<int>> rep;
  bool operator==(const Congruence&) const = default;
  bool operator<(const Congruence& o) const { return rep < o.rep; }
};

// ---- construction & validation ----

// checks identity and contravariant functoriality exhaustively
void validate_presheaf(const Presheaf& x);

Presheaf make_presheaf(CatPtr cat, std::vector<std::vector<std::string>> elems,
                       std::vector<std::vector<int>> act);

Presheaf yoneda(const CatPtr& cat, int c);
Presheaf terminal_presheaf(const CatPtr& cat);
Presheaf initial_presheaf(const CatPtr& cat);

NatTrans make_nat(Presheaf src, Presheaf dst, std::vector<std::vector<int>> comp);
NatTrans identity_nat(const Presheaf& x);
NatTrans compose_nat(const NatTrans& g, const NatTrans& f);  // g after f
bool nat_equal(const NatTrans& a, const NatTrans& b);

// Yoneda transpose of x in X(c): the map y(c) -> X sending g to x.g
NatTrans element_morphism(const Presheaf& x, int c, int elem);

struct MonoEpi {
  bool mono = false, epi = false, iso = false;
};
MonoEpi classify_mono_epi(const NatTrans& h);

struct ImageFactorization {
  NatTrans epi;        // X -> image
  NatTrans mono;       // image -> Y
  Subpresheaf image;   // of Y
};
ImageFactorization image_factorization(const NatTrans& h);

// kernel-pair congruence on the source: x ~ y iff h(x) = h(y)
Congruence kernel_congruence(const NatTrans& h);

// ---- subpresheaves & congruences ----

bool subpresheaf_valid(const Presheaf& x, const Subpresheaf& s);
Subpresheaf full_subpresheaf(const Presheaf& x);
Subpresheaf empty_subpresheaf(const Presheaf& x);
Subpresheaf generated_subpresheaf(const Presheaf& x, const std::vector<std::pair<int, int>>& gens);
Subpresheaf intersect(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf unite(const Subpresheaf& a, const Subpresheaf& b);
bool subset_of(const Subpresheaf& a, const Subpresheaf& b);

// sub-as-object with its inclusion
struct SubObject {
  Presheaf object;
  NatTrans inclusion;
};
SubObject subpresheaf_to_object(const Presheaf& x, const Subpresheaf& s);
Subpresheaf preimage(const NatTrans& h, const Subpresheaf& s_of_dst);

bool congruence_valid(const Presheaf& x, const Congruence& r);
Congruence discrete_congruence(const Presheaf& x);
Congruence total_congruence(const Presheaf& x);
Congruence congruence_from_blocks(const Presheaf& x,
                                  const std::vector<std::vector<std::vector<int>>>& blocks);
Congruence generated_congruence(const Presheaf& x,
                                const std::vector<std::tuple<int, int, int>>& pairs);
Congruence meet_congruence(const Congruence& a, const Congruence& b);
bool coarser_or_equal(const Congruence& fine, const Congruence& coarse);

struct Quotient {
  Presheaf object;
  NatTrans projection;
};
// raises NotACongruence (with a witnessing pair and morphism) otherwise
Quotient quotient_by(const Presheaf& x, const Congruence& r);

std::vector<Subpresheaf> enumerate_subpresheaves(const Presheaf& x, const Budget& budget = {});
std::vector<Congruence> enumerate_congruences(const Presheaf& x, const Budget& budget = {});

// ---- finite (co)limits ----

struct Cone {
  Presheaf apex;
  std::vector<NatTrans> legs;
};

Cone limit_terminal(const CatPtr& cat);
Cone limit_product(const Presheaf& x, const Presheaf& y);
Cone limit_pullback(const NatTrans& f, const NatTrans& g);   // f: X->Z, g: Y->Z
Cone limit_equalizer(const NatTrans& f, const NatTrans& g);  // f,g: X->Y

Cone colimit_initial(const CatPtr& cat);
Cone colimit_coproduct(const Presheaf& x, const Presheaf& y);
Cone colimit_coequalizer(const NatTrans& f, const NatTrans& g);  // f,g: X->Y
Cone colimit_pushout(const NatTrans& f, const NatTrans& g);      // f: X->Y, g: X->Z

// pairing into a product built by limit_product
NatTrans pair_into_product(const Cone& prod, const NatTrans& f, const NatTrans& g);
NatTrans unique_to_terminal(const Cone& term, const Presheaf& x);

// ---- search ----

std::optional<NatTrans> find_isomorphism(const Presheaf& x, const Presheaf& y);

// all natural transformations X -> Y in canonical order; mono_only restricts
// to the pointwise injective ones during the search
std::vector<NatTrans> enumerate_nat_trans(const Presheaf& x, const Presheaf& y,
                                          bool mono_only = false, const Budget& budget = {});

bool presheaf_equal(const Presheaf& a, const Presheaf& b);

}  // namespace topos

#endif
