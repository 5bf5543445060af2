#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <memory>

#include "graph_fixtures.hpp"
#include "oracles.hpp"
#include "topos/hyperquot.hpp"

using namespace topos;
using fixtures::graph;

namespace {
CatPtr par() {
  static CatPtr c = builtin_parallel_pair();
  return c;
}
std::shared_ptr<const XiObject> dirgraph_xi() {
  static auto xi = std::make_shared<const XiObject>(local_state_classifier(par()));
  return xi;
}
// the filter picking exactly the loop state (image of top)
InternalFilter loops_only() { return minimum_filter(dirgraph_xi()->sl); }

std::vector<Presheaf> graph_corpus() {
  return {graph(par(), {"x"}, {}), fixtures::loop_graph(par()), fixtures::path_graph(par()),
          fixtures::path_plus_loop(par())};
}
}  // namespace

TEST_CASE("coherent families from subobjects") {
  auto xi = dirgraph_xi();
  std::vector<Presheaf> corpus = graph_corpus();

  CoherentFamily all = family_from_subobject(*xi, full_subpresheaf(xi->xi()), corpus);
  for (size_t i = 0; i < corpus.size(); ++i) CHECK(all.subs[i] == full_subpresheaf(corpus[i]));
  CHECK(is_coherent(all).ok);

  CoherentFamily none = family_from_subobject(*xi, empty_subpresheaf(xi->xi()), corpus);
  for (size_t i = 0; i < corpus.size(); ++i)
    CHECK(none.subs[i] == empty_subpresheaf(corpus[i]));
  CHECK(is_coherent(none).ok);

  // image of top: vertices and loops
  CoherentFamily vl = family_from_subobject(*xi, loops_only().sub, corpus);
  CHECK(is_coherent(vl).ok);
  const int oE = par()->object_index("E"), oV = par()->object_index("V");
  // on path_plus_loop: every vertex, only the loop edge
  CHECK(vl.subs[3].mask[oV] == std::vector<char>{1, 1, 1});
  CHECK(vl.subs[3].mask[oE] == std::vector<char>{0, 0, 1});

  // any subobject of Xi gives a coherent family, filters or not
  Subpresheaf nonfilter = empty_subpresheaf(xi->xi());
  nonfilter.mask[oV][0] = 1;
  nonfilter.mask[oE][1 - xi->top_at(oE)] = 1;
  CHECK(is_coherent(family_from_subobject(*xi, nonfilter, corpus)).ok);

  // explicit violation: full on the loop graph, empty on its vertex part
  CoherentFamily broken;
  broken.family = {corpus[0], corpus[1]};
  broken.subs = {empty_subpresheaf(corpus[0]), full_subpresheaf(corpus[1])};
  CoherenceVerdict v = is_coherent(broken);
  CHECK(!v.ok);
  CHECK(!v.witness.empty());
}

TEST_CASE("membership") {
  auto xi = dirgraph_xi();
  HyperconnectedQuotient qmax{xi, maximum_filter(xi->sl)};
  HyperconnectedQuotient qmin{xi, loops_only()};

  for (const auto& x : graph_corpus()) CHECK(membership(qmax, x));
  CHECK(membership(qmax, terminal_presheaf(par())));
  CHECK(membership(qmin, terminal_presheaf(par())));

  CHECK(membership(qmin, fixtures::loop_graph(par())));
  CHECK(!membership(qmin, fixtures::path_graph(par())));
  CHECK(!membership(qmin, fixtures::path_plus_loop(par())));

  // the nontrivial quotient accepts exactly the all-loops graphs
  const int oE = par()->object_index("E"), oV = par()->object_index("V");
  for (const auto& g : fixtures::small_graphs(par(), 2, 2)) {
    bool all_loops = true;
    const int ms = par()->morphism_index("s"), mt = par()->morphism_index("t");
    for (int e = 0; e < g.size(oE); ++e) all_loops = all_loops && g.act[ms][e] == g.act[mt][e];
    CHECK(membership(qmin, g) == all_loops);
    (void)oV;
  }

  // membership of a quotient of a representable is state membership
  auto sigma = sigma_family(*xi);
  for (const auto& f : enumerate_filters(xi->sl)) {
    HyperconnectedQuotient q{xi, f};
    for (const auto& m : sigma)
      CHECK(membership(q, m.presheaf) == static_cast<bool>(f.sub.mask[m.object][m.state]));
  }
}

TEST_CASE("coreflection") {
  auto xi = dirgraph_xi();
  HyperconnectedQuotient qmin{xi, loops_only()};

  // on a member the counit is an isomorphism
  Coreflection on_member = coreflect(qmin, fixtures::loop_graph(par()));
  CHECK(classify_mono_epi(on_member.counit).iso);

  Coreflection co = coreflect(qmin, fixtures::path_plus_loop(par()));
  const int oE = par()->object_index("E"), oV = par()->object_index("V");
  CHECK(co.sub.mask[oV] == std::vector<char>{1, 1, 1});
  CHECK(co.sub.mask[oE] == std::vector<char>{0, 0, 1});
  CHECK(membership(qmin, co.object));

  // trivial-action quotient of a group topos: the regular set coreflects to
  // nothing
  CatPtr z2 = builtin_one_object_group({"e", "a"}, {{0, 1}, {1, 0}});
  auto xz = std::make_shared<const XiObject>(local_state_classifier(z2));
  HyperconnectedQuotient qtriv{xz, minimum_filter(xz->sl)};
  Presheaf reg = yoneda(z2, 0);
  CHECK(!membership(qtriv, reg));
  Coreflection creg = coreflect(qtriv, reg);
  CHECK(creg.object.total() == 0);
  Presheaf fixed = make_presheaf(z2, {{"p"}}, {{0}, {0}});
  CHECK(membership(qtriv, fixed));
}

TEST_CASE("quotient enumeration") {
  CHECK(enumerate_quotients(par()).size() == 2);
  CHECK(enumerate_quotients(builtin_discrete(1)).size() == 1);

  CatPtr v4 = builtin_one_object_group(oracles::letters(4), oracles::klein_table());
  CHECK(enumerate_quotients(v4).size() == 5);

  // count identity: quotients = filters = semilattice homs to Omega
  for (const CatPtr& cat : {par(), v4, builtin_interval()}) {
    auto xi = std::make_shared<const XiObject>(local_state_classifier(cat));
    OmegaObject om = subobject_classifier(cat);
    auto qs = enumerate_quotients(xi);
    CHECK(qs.size() == enumerate_filters(xi->sl).size());
    CHECK(qs.size() == enumerate_semilattice_homs(xi->sl, om.sl).size());
  }
}

TEST_CASE("bijection round trip filter -> quotient -> coherent family -> filter") {
  for (const CatPtr& cat :
       {par(), builtin_interval(),
        builtin_one_object_group(oracles::letters(6), oracles::s3_table())}) {
    auto xi = std::make_shared<const XiObject>(local_state_classifier(cat));
    auto sigma = sigma_family(*xi);
    auto filters = enumerate_filters(xi->sl);
    for (const auto& f : filters) {
      HyperconnectedQuotient q{xi, f};
      // counit family over the generating quotients, then the subobject of Xi
      // recovered from the generators
      Subpresheaf recovered = empty_subpresheaf(xi->xi());
      for (const auto& m : sigma) {
        Coreflection co = coreflect(q, m.presheaf);
        recovered.mask[m.object][m.state] = co.sub.mask[m.object][m.generator];
      }
      CHECK(recovered == f.sub);
    }
    // distinctness: different filters differ on some generating quotient
    for (size_t i = 0; i < filters.size(); ++i)
      for (size_t j = i + 1; j < filters.size(); ++j) {
        bool differ = false;
        for (const auto& m : sigma)
          if (membership({xi, filters[i]}, m.presheaf) !=
              membership({xi, filters[j]}, m.presheaf))
            differ = true;
        CHECK(differ);
      }
  }
}

TEST_CASE("closure and couniversality") {
  auto xi = dirgraph_xi();
  std::vector<Presheaf> corpus = {fixtures::loop_graph(par()), fixtures::path_graph(par())};

  ClosureReport ok = verify_closure(*xi, loops_only().sub, corpus);
  CHECK(ok.ok);
  CHECK(ok.checks.size() == 4);

  ClosureReport mx = verify_closure(*xi, full_subpresheaf(xi->xi()), corpus);
  CHECK(mx.ok);

  // a subobject of Xi that is not upward closed breaks couniversality
  const int oE = par()->object_index("E"), oV = par()->object_index("V");
  Subpresheaf nonfilter = empty_subpresheaf(xi->xi());
  nonfilter.mask[oV][0] = 1;
  nonfilter.mask[oE][1 - xi->top_at(oE)] = 1;  // keeps [not loop], drops [loop]
  ClosureReport bad = verify_closure(*xi, nonfilter, corpus);
  CHECK(!bad.ok);
  CHECK(!bad.witness.empty());
}

TEST_CASE("boolean detection") {
  CHECK(is_boolean(builtin_one_object_group(oracles::letters(6), oracles::s3_table())));
  CHECK(is_boolean(builtin_one_object_group({"e", "a"}, {{0, 1}, {1, 0}})));
  CHECK(!is_boolean(par()));
  CHECK(is_boolean(builtin_discrete(3)));
  CHECK(!is_boolean(builtin_interval()));
}

TEST_CASE("localic law on fixtures") {
  // posets have a terminal classifier and exactly one quotient
  for (const CatPtr& cat :
       {builtin_interval(), builtin_discrete(2),
        builtin_poset({"b", "l", "r", "t"}, {{"b", "l"}, {"b", "r"}, {"l", "t"}, {"r", "t"}}),
        builtin_poset({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}})}) {
    auto xi = std::make_shared<const XiObject>(local_state_classifier(cat));
    CHECK(xi_is_terminal(*xi));
    CHECK(enumerate_quotients(xi).size() == 1);
  }
  auto xp = std::make_shared<const XiObject>(local_state_classifier(par()));
  CHECK(!xi_is_terminal(*xp));
  CHECK(enumerate_quotients(xp).size() == 2);

  // degenerate: the empty site has one quotient
  RawCategory raw;
  CatPtr empty = build_category(raw);
  auto xe = std::make_shared<const XiObject>(local_state_classifier(empty));
  CHECK(xi_is_terminal(*xe));
  CHECK(enumerate_quotients(xe).size() == 1);
}
