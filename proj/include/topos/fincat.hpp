#ifndef TOPOS_FINCAT_HPP
#define TOPOS_FINCAT_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topos/common.hpp"

namespace topos {

struct Morph {
  std::string id;
  int dom = -1;
  int cod = -1;
};

/// A finite category with an explicit, fully validated composition table.
/// Objects and morphisms are addressed by index; indices follow the
/// lexicographic order of the ids, so every enumeration downstream is
/// deterministic across runs and platforms.
class FinCategory {
 public:
  std::vector<std::string> objects;   // sorted by id
  std::vector<Morph> morphisms;       // sorted by id
  std::vector<int> identity;          // object index -> morphism index
  std::vector<std::vector<int>> comp; // comp[g][f] = g after f, -1 if not composable

  int object_index(const std::string& id) const;
  int morphism_index(const std::string& id) const;
  bool composable(int g, int f) const { return morphisms[f].cod == morphisms[g].dom; }
  int compose(int g, int f) const { return comp[g][f]; }
  bool is_identity(int m) const { return identity[morphisms[m].dom] == m; }

  // morphisms with codomain c, ascending
  std::vector<int> homs_into(int c) const;
  // morphisms c' -> c, ascending
  std::vector<int> hom(int from, int to) const;
};

using CatPtr = std::shared_ptr<const FinCategory>;

struct RawMorph {
  std::string name, dom, cod;
};

/// Input description of a category. Identity morphisms are implicit: the
/// validator synthesizes one per object, named `id_<object>`. Composition
/// triples may refer to those names on either side.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawMorph> morphisms;
  std::vector<std::array<std::string, 3>> composition;  // [g, f, g∘f]
};

CatPtr build_category(const RawCategory& raw, const Budget& budget = {});

// catalog keys: parallel_pair, interval, discrete(n), poset(elements, le pairs),
// one_object_group(element ids + Cayley table)
CatPtr builtin_parallel_pair();
CatPtr builtin_interval();
CatPtr builtin_discrete(int n);
CatPtr builtin_poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& le);
CatPtr builtin_one_object_group(const std::vector<std::string>& elements,
                                const std::vector<std::vector<int>>& table);

CatPtr opposite(const FinCategory& c);

struct FinFunctor {
  CatPtr src, dst;
  std::vector<int> on_objects;
  std::vector<int> on_morphisms;
};

// checks identity, dom/cod and composition preservation
bool functor_valid(const FinFunctor& f);

bool structurally_equal(const FinCategory& a, const FinCategory& b);

}  // namespace topos

#endif
