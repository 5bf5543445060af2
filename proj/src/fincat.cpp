#include "topos/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace topos {

const char* errc_name(errc c) {
  switch (c) {
    case errc::missing_composite: return "MissingComposite";
    case errc::associativity_violation: return "AssociativityViolation";
    case errc::identity_violation: return "IdentityViolation";
    case errc::unknown_catalog_key: return "UnknownCatalogKey";
    case errc::invalid_cayley_table: return "InvalidCayleyTable";
    case errc::invalid_poset: return "InvalidPoset";
    case errc::unknown_object: return "UnknownObject";
    case errc::unknown_element: return "UnknownElement";
    case errc::shape_unsupported: return "ShapeUnsupported";
    case errc::not_a_congruence: return "NotACongruence";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_locally_determined: return "NotLocallyDetermined";
    case errc::not_a_semilattice_hom: return "NotASemilatticeHom";
    case errc::not_conjugate_closed: return "NotConjugateClosed";
    case errc::not_a_sheaf: return "NotASheaf";
    case errc::axiom_violation: return "AxiomViolation";
    case errc::parse_error: return "ParseError";
    case errc::unknown_command: return "UnknownCommand";
    case errc::internal_error: return "InternalError";
  }
  return "Error";
}

int FinCategory::object_index(const std::string& id) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), id);
  if (it == objects.end() || *it != id) fail(errc::unknown_object, "no object '" + id + "'");
  return static_cast<int>(it - objects.begin());
}

int FinCategory::morphism_index(const std::string& id) const {
  auto it = std::lower_bound(morphisms.begin(), morphisms.end(), id,
                             [](const Morph& m, const std::string& s) { return m.id < s; });
  if (it == morphisms.end() || it->id != id)
    fail(errc::unknown_element, "no morphism '" + id + "'");
  return static_cast<int>(it - morphisms.begin());
}

std::vector<int> FinCategory::homs_into(int c) const {
  std::vector<int> out;
  for (int m = 0; m < static_cast<int>(morphisms.size()); ++m)
    if (morphisms[m].cod == c) out.push_back(m);
  return out;
}

std::vector<int> FinCategory::hom(int from, int to) const {
  std::vector<int> out;
  for (int m = 0; m < static_cast<int>(morphisms.size()); ++m)
    if (morphisms[m].dom == from && morphisms[m].cod == to) out.push_back(m);
  return out;
}

namespace {

// Exhaustive check of the category axioms over the composition table.
void validate(const FinCategory& c) {
  const int nm = static_cast<int>(c.morphisms.size());
  for (int f = 0; f < nm; ++f) {
    for (int g = 0; g < nm; ++g) {
      const int gf = c.comp[g][f];
      if (!c.composable(g, f)) {
        if (gf != -1)
          fail(errc::missing_composite,
               "composite declared for non-composable pair (" + c.morphisms[g].id + ", " +
                   c.morphisms[f].id + ")");
        continue;
      }
      if (gf < 0)
        fail(errc::missing_composite,
             "no composite for (" + c.morphisms[g].id + ", " + c.morphisms[f].id + ")");
      if (c.morphisms[gf].dom != c.morphisms[f].dom || c.morphisms[gf].cod != c.morphisms[g].cod)
        fail(errc::missing_composite,
             "composite " + c.morphisms[gf].id + " of (" + c.morphisms[g].id + ", " +
                 c.morphisms[f].id + ") has wrong endpoints");
    }
  }
  for (int f = 0; f < nm; ++f) {
    const int il = c.identity[c.morphisms[f].cod], ir = c.identity[c.morphisms[f].dom];
    if (c.comp[il][f] != f || c.comp[f][ir] != f)
      fail(errc::identity_violation, "identity law fails at " + c.morphisms[f].id);
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (!c.composable(g, f)) continue;
      for (int h = 0; h < nm; ++h) {
        if (!c.composable(h, g)) continue;
        if (c.comp[h][c.comp[g][f]] != c.comp[c.comp[h][g]][f])
          fail(errc::associativity_violation,
               "h=" + c.morphisms[h].id + " g=" + c.morphisms[g].id + " f=" + c.morphisms[f].id);
      }
    }
}

CatPtr finish(FinCategory&& c) {
  validate(c);
  return std::make_shared<const FinCategory>(std::move(c));
}

}  // namespace

CatPtr build_category(const RawCategory& raw, const Budget& budget) {
  check_budget(static_cast<int>(raw.objects.size()) <= budget.max_objects, "too many objects");
  check_budget(static_cast<int>(raw.morphisms.size()) + static_cast<int>(raw.objects.size()) <=
                   budget.max_morphisms,
               "too many morphisms");

  FinCategory c;
  c.objects = raw.objects;
  std::sort(c.objects.begin(), c.objects.end());
  if (std::adjacent_find(c.objects.begin(), c.objects.end()) != c.objects.end())
    fail(errc::parse_error, "duplicate object id");
  const int no = static_cast<int>(c.objects.size());

  std::map<std::string, std::pair<int, int>> ends;
  for (const auto& m : raw.morphisms) {
    if (ends.count(m.name) || m.name.rfind("id_", 0) == 0)
      fail(errc::parse_error, "duplicate or reserved morphism id '" + m.name + "'");
    int d = static_cast<int>(std::lower_bound(c.objects.begin(), c.objects.end(), m.dom) -
                             c.objects.begin());
    int e = static_cast<int>(std::lower_bound(c.objects.begin(), c.objects.end(), m.cod) -
                             c.objects.begin());
    if (d >= no || c.objects[d] != m.dom) fail(errc::unknown_object, "dom '" + m.dom + "'");
    if (e >= no || c.objects[e] != m.cod) fail(errc::unknown_object, "cod '" + m.cod + "'");
    ends[m.name] = {d, e};
  }
  for (int o = 0; o < no; ++o) ends["id_" + c.objects[o]] = {o, o};

  for (const auto& [name, de] : ends) c.morphisms.push_back({name, de.first, de.second});
  const int nm = static_cast<int>(c.morphisms.size());
  c.identity.assign(no, -1);
  for (int m = 0; m < nm; ++m)
    if (c.morphisms[m].id.rfind("id_", 0) == 0 &&
        c.morphisms[m].id.substr(3) == c.objects[c.morphisms[m].dom])
      c.identity[c.morphisms[m].dom] = m;

  c.comp.assign(nm, std::vector<int>(nm, -1));
  auto midx = [&](const std::string& s) {
    auto it = ends.find(s);
    if (it == ends.end()) fail(errc::parse_error, "composition refers to unknown '" + s + "'");
    return c.morphism_index(s);
  };
  for (const auto& t : raw.composition) {
    int g = midx(t[0]), f = midx(t[1]), gf = midx(t[2]);
    if (!c.composable(g, f))
      fail(errc::missing_composite, "pair (" + t[0] + ", " + t[1] + ") is not composable");
    if (c.comp[g][f] != -1 && c.comp[g][f] != gf)
      fail(errc::parse_error, "conflicting composites for (" + t[0] + ", " + t[1] + ")");
    c.comp[g][f] = gf;
  }
  // synthesized identity rows/columns
  for (int f = 0; f < nm; ++f) {
    const int il = c.identity[c.morphisms[f].cod], ir = c.identity[c.morphisms[f].dom];
    if (c.comp[il][f] == -1) c.comp[il][f] = f;
    if (c.comp[f][ir] == -1) c.comp[f][ir] = f;
  }
  return finish(std::move(c));
}

CatPtr builtin_parallel_pair() {
  RawCategory raw;
  raw.objects = {"V", "E"};
  raw.morphisms = {{"s", "V", "E"}, {"t", "V", "E"}};
  return build_category(raw);
}

CatPtr builtin_interval() {
  return builtin_poset({"a", "b"}, {{"a", "b"}});
}

CatPtr builtin_discrete(int n) {
  check_budget(n >= 0 && n <= 64, "discrete size out of range");
  RawCategory raw;
  for (int i = 0; i < n; ++i) {
    std::string id = "o";
    id += static_cast<char>('0' + i / 10);
    id += static_cast<char>('0' + i % 10);
    raw.objects.push_back(id);
  }
  return build_category(raw);
}

CatPtr builtin_poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& le) {
  const int n = static_cast<int>(elements.size());
  std::vector<std::string> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  auto idx = [&](const std::string& s) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
    if (it == sorted.end() || *it != s) fail(errc::unknown_object, "poset element '" + s + "'");
    return static_cast<int>(it - sorted.begin());
  };
  // reflexive-transitive closure of the given relation
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) rel[i][i] = 1;
  for (const auto& [a, b] : le) rel[idx(a)][idx(b)] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (rel[i][j] && rel[j][i])
        fail(errc::invalid_poset, "antisymmetry fails at " + sorted[i] + ", " + sorted[j]);

  RawCategory raw;
  raw.objects = sorted;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rel[i][j]) raw.morphisms.push_back({"le_" + sorted[i] + "_" + sorted[j],
                                                        sorted[i], sorted[j]});
  auto name = [&](int i, int j) {
    return i == j ? "id_" + sorted[i] : "le_" + sorted[i] + "_" + sorted[j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k])
          raw.composition.push_back({name(j, k), name(i, j), name(i, k)});
  return build_category(raw);
}

CatPtr builtin_one_object_group(const std::vector<std::string>& elements,
                                const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(elements.size());
  if (n == 0) fail(errc::invalid_cayley_table, "empty element list");
  if (static_cast<int>(table.size()) != n)
    fail(errc::invalid_cayley_table, "table is not |G| x |G|");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) fail(errc::invalid_cayley_table, "ragged table");
    for (int v : row)
      if (v < 0 || v >= n) fail(errc::invalid_cayley_table, "entry out of range");
  }
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (e < 0) fail(errc::invalid_cayley_table, "no identity element");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          fail(errc::invalid_cayley_table, "not associative at (" + elements[i] + ", " +
                                               elements[j] + ", " + elements[k] + ")");
  for (int i = 0; i < n; ++i) {
    bool has_inv = false;
    for (int j = 0; j < n; ++j) has_inv = has_inv || table[i][j] == e;
    if (!has_inv) fail(errc::invalid_cayley_table, "no inverse for " + elements[i]);
  }

  FinCategory c;
  c.objects = {"*"};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return elements[a] < elements[b]; });
  std::vector<int> pos(n);  // original index -> sorted index
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && elements[order[i]] == elements[order[i - 1]])
      fail(errc::parse_error, "duplicate element id '" + elements[order[i]] + "'");
    c.morphisms.push_back({elements[order[i]], 0, 0});
  }
  c.identity = {pos[e]};
  c.comp.assign(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) c.comp[pos[g]][pos[f]] = pos[table[g][f]];
  return finish(std::move(c));
}

CatPtr opposite(const FinCategory& c) {
  FinCategory o;
  o.objects = c.objects;
  o.identity = c.identity;
  o.morphisms = c.morphisms;
  for (auto& m : o.morphisms) std::swap(m.dom, m.cod);
  const int nm = static_cast<int>(c.morphisms.size());
  o.comp.assign(nm, std::vector<int>(nm, -1));
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (c.comp[g][f] != -1) o.comp[f][g] = c.comp[g][f];
  return finish(std::move(o));
}

bool functor_valid(const FinFunctor& f) {
  const auto& a = *f.src;
  const auto& b = *f.dst;
  if (f.on_objects.size() != a.objects.size() || f.on_morphisms.size() != a.morphisms.size())
    return false;
  for (size_t m = 0; m < a.morphisms.size(); ++m) {
    const Morph& src = a.morphisms[m];
    const Morph& dst = b.morphisms[f.on_morphisms[m]];
    if (dst.dom != f.on_objects[src.dom] || dst.cod != f.on_objects[src.cod]) return false;
  }
  for (size_t o = 0; o < a.objects.size(); ++o)
    if (f.on_morphisms[a.identity[o]] != b.identity[f.on_objects[o]]) return false;
  for (size_t g = 0; g < a.morphisms.size(); ++g)
    for (size_t h = 0; h < a.morphisms.size(); ++h)
      if (a.comp[g][h] != -1 &&
          f.on_morphisms[a.comp[g][h]] != b.comp[f.on_morphisms[g]][f.on_morphisms[h]])
        return false;
  return true;
}

bool structurally_equal(const FinCategory& a, const FinCategory& b) {
  if (a.objects != b.objects || a.identity != b.identity || a.comp != b.comp) return false;
  if (a.morphisms.size() != b.morphisms.size()) return false;
  for (size_t i = 0; i < a.morphisms.size(); ++i)
    if (a.morphisms[i].id != b.morphisms[i].id || a.morphisms[i].dom != b.morphisms[i].dom ||
        a.morphisms[i].cod != b.morphisms[i].cod)
      return false;
  return true;
}

}  // namespace topos
