#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "graph_fixtures.hpp"
#include "topos/classifiers.hpp"
#include "topos/site.hpp"
#include "site_fixtures.hpp"

using namespace topos;

using namespace site_fixtures;

namespace {

CatPtr par() {
  static CatPtr c = builtin_parallel_pair();
  return c;
}

Presheaf poset_presheaf(const CatPtr& cat, const std::vector<std::vector<std::string>>& elems,
                        const std::map<std::string, std::vector<int>>& actions) {
  std::vector<std::vector<int>> act(cat->morphisms.size());
  for (size_t m = 0; m < cat->morphisms.size(); ++m) {
    const Morph& mm = cat->morphisms[m];
    auto it = actions.find(mm.id);
    if (it != actions.end()) {
      act[m] = it->second;
    } else if (cat->is_identity(static_cast<int>(m))) {
      act[m].resize(elems[mm.dom].size());
      std::iota(act[m].begin(), act[m].end(), 0);
    }
  }
  return make_presheaf(cat, elems, act);
}

}  // namespace

TEST_CASE("topology validation") {
  GrothendieckTopology triv = trivial_topology(par());
  for (size_t c = 0; c < par()->objects.size(); ++c) CHECK(triv.covers[c].size() == 1);

  // every presheaf is a sheaf for the trivial topology
  CHECK(is_sheaf(fixtures::path_plus_loop(par()), triv).ok);
  CHECK(is_sheaf(yoneda(par(), 0), triv).ok);

  GrothendieckTopology sp = sierpinski_topology();
  const int u0 = sierpinski()->object_index("u0");
  CHECK(sp.covers[u0].size() == 2);  // empty sieve and maximal sieve
  CHECK(sp.minimal[u0].empty());

  GrothendieckTopology tp = twopoint_topology();
  const int ox = twopoint()->object_index("ox");
  CHECK(tp.minimal[ox].size() == 3);  // the sieve generated by oa, ob
  CHECK(tp.covers[ox].size() >= 2);

  // saturation is idempotent: re-validating the saturated covers changes nothing
  std::vector<std::vector<std::vector<std::string>>> regen(twopoint()->objects.size());
  for (size_t c = 0; c < tp.covers.size(); ++c)
    for (const auto& sieve : tp.covers[c]) {
      std::vector<std::string> family;
      for (size_t m = 0; m < sieve.size(); ++m)
        if (sieve[m]) family.push_back(twopoint()->morphisms[m].id);
      regen[c].push_back(family);
    }
  GrothendieckTopology tp2 = validate_topology(twopoint(), regen);
  CHECK(tp2.covers == tp.covers);
}

TEST_CASE("sheaf condition") {
  GrothendieckTopology sp = sierpinski_topology();
  const int u0 = sierpinski()->object_index("u0");

  // two sections over the empty open: not separated
  Presheaf bad = poset_presheaf(
      sierpinski(), {{"x", "y"}, {"p"}, {"q"}},
      {{"le_u0_u1", {0}}, {"le_u0_u2", {0}}, {"le_u1_u2", {0}}});
  SheafVerdict v = is_sheaf(bad, sp);
  CHECK(!v.ok);
  CHECK(!v.witness.empty());
  CHECK(is_sheaf(terminal_presheaf(sierpinski()), sp).ok);

  Sheafification fixed = sheafify(bad, sp);
  CHECK(fixed.sheaf.size(u0) == 1);
  CHECK(is_sheaf(fixed.sheaf, sp).ok);
  CHECK(!classify_mono_epi(fixed.unit).iso);  // the unit detects non-sheaves
  CHECK(classify_mono_epi(sheafify(fixed.sheaf, sp).unit).iso);  // idempotent on sheaves

  // gluing over the two-point cover: sections over ox are pairs
  GrothendieckTopology tp = twopoint_topology();
  const int ox = twopoint()->object_index("ox");
  Presheaf pieces = poset_presheaf(
      twopoint(), {{"z"}, {"a1", "a2"}, {"b1"}, {"w"}},
      {{"le_o0_oa", {0, 0}},
       {"le_o0_ob", {0}},
       {"le_o0_ox", {0}},
       {"le_oa_ox", {0}},
       {"le_ob_ox", {0}}});
  CHECK(!is_sheaf(pieces, tp).ok);  // w cannot track both (a1,b1) and (a2,b1)
  Sheafification glued = sheafify(pieces, tp);
  CHECK(glued.sheaf.size(ox) == 2);
  CHECK(is_sheaf(glued.sheaf, tp).ok);

  // the unit is universal among maps to sheaves
  Presheaf f = poset_presheaf(
      sierpinski(), {{"s"}, {"m1", "m2"}, {"n1", "n2"}},
      {{"le_u0_u1", {0, 0}}, {"le_u0_u2", {0, 0}}, {"le_u1_u2", {0, 1}}});
  CHECK(is_sheaf(f, sp).ok);
  Sheafification shf = sheafify(f, sp);
  Sheafification shbad = sheafify(bad, sp);
  auto direct = enumerate_nat_trans(bad, f);
  auto through = enumerate_nat_trans(shbad.sheaf, f);
  CHECK(direct.size() == through.size());
  for (const auto& h : direct) {
    NatTrans ah = sheafify_map(shbad, shf, h);
    // a(h) composed with the unit of bad recovers h through the unit of f
    CHECK(nat_equal(compose_nat(ah, shbad.unit), compose_nat(shf.unit, h)));
  }
}

TEST_CASE("sheaf images") {
  GrothendieckTopology triv = trivial_topology(par());
  Presheaf x = fixtures::path_plus_loop(par());
  NatTrans idh = identity_nat(x);
  SheafImage si = sheaf_image(idh, triv);
  CHECK(nat_equal(si.epi, idh));
  CHECK(si.image == full_subpresheaf(x));

  // trivial topology: coincides with the presheaf factorization
  const int oE = par()->object_index("E");
  NatTrans h = element_morphism(x, oE, x.eindex(oE, "c"));
  SheafImage st = sheaf_image(h, triv);
  ImageFactorization pf = image_factorization(h);
  CHECK(st.image == pf.image);

  // with a genuine cover the closed image can be strictly larger
  GrothendieckTopology ov = overlap_topology();
  CatPtr c = overlap();
  Presheaf ya = yoneda(c, c->object_index("ua"));
  Presheaf yb = yoneda(c, c->object_index("ub"));
  Cone cp = colimit_coproduct(ya, yb);
  Sheafification q = sheafify(cp.apex, ov);
  CHECK(is_sheaf(q.sheaf, ov).ok);
  const int ux = c->object_index("ux");
  CHECK(q.sheaf.size(ux) == 0);  // incompatible on the overlap
  Presheaf t = terminal_presheaf(c);
  CHECK(is_sheaf(t, ov).ok);
  NatTrans bang = make_nat(q.sheaf, t, [&] {
    std::vector<std::vector<int>> comp(c->objects.size());
    for (size_t o = 0; o < c->objects.size(); ++o) comp[o].assign(q.sheaf.elems[o].size(), 0);
    return comp;
  }());
  SheafImage img = sheaf_image(bang, ov);
  ImageFactorization pre = image_factorization(bang);
  CHECK(!pre.image.mask[ux][0]);
  CHECK(img.image.mask[ux][0]);  // forced by the cover
  CHECK(subset_of(pre.image, img.image));

  CHECK_THROWS_AS(sheaf_image(make_nat(cp.apex, t, [&] {
                                std::vector<std::vector<int>> comp(c->objects.size());
                                for (size_t o = 0; o < c->objects.size(); ++o)
                                  comp[o].assign(cp.apex.elems[o].size(), 0);
                                return comp;
                              }()),
                              ov),
                  Error);
}

TEST_CASE("quotient sheaves") {
  GrothendieckTopology triv = trivial_topology(par());
  Presheaf ye = yoneda(par(), par()->object_index("E"));
  CHECK(enumerate_quotient_sheaves(ye, triv).size() == enumerate_congruences(ye).size());

  GrothendieckTopology sp = sierpinski_topology();
  CHECK(enumerate_quotient_sheaves(terminal_presheaf(sierpinski()), sp).size() == 1);

  // sheafified representables on a poset site are subterminal
  for (size_t c = 0; c < sierpinski()->objects.size(); ++c) {
    Sheafification ay = sheafify(yoneda(sierpinski(), static_cast<int>(c)), sp);
    for (size_t o = 0; o < ay.sheaf.elems.size(); ++o) CHECK(ay.sheaf.elems[o].size() <= 1);
    CHECK(enumerate_quotient_sheaves(ay.sheaf, sp).size() == 1);
  }
}

TEST_CASE("local state classifier of a site") {
  // trivial topology on the parallel pair matches the presheaf classifier
  GrothendieckTopology triv = trivial_topology(par());
  SiteXi sx = lsc_of_site(par(), triv);
  const int oV = par()->object_index("V"), oE = par()->object_index("E");
  CHECK(sx.xi.sheaf.size(oV) == 1);
  CHECK(sx.xi.sheaf.size(oE) == 2);
  CHECK(!site_xi_is_terminal(sx));
  CHECK(check_semilattice(sx.sl).ok);

  XiObject xi = local_state_classifier(par());
  std::vector<Presheaf> corpus = {fixtures::loop_graph(par()), fixtures::path_graph(par()),
                                  fixtures::path_plus_loop(par())};
  bool compatible_iso = false;
  for (const auto& cand : enumerate_nat_trans(sx.xi.sheaf, xi.xi())) {
    if (!classify_mono_epi(cand).iso) continue;
    bool all = true;
    for (const auto& x : corpus)
      all = all &&
            nat_equal(compose_nat(cand, site_xi_component(sx, x)), xi_component(xi, x));
    if (all) compatible_iso = true;
  }
  CHECK(compatible_iso);

  // the locally determined law over the sheaf corpus
  std::vector<NatTrans> comps;
  for (const auto& x : corpus) comps.push_back(site_xi_component(sx, x));
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = 0; j < corpus.size(); ++j)
      for (const auto& m : enumerate_nat_trans(corpus[i], corpus[j], true))
        CHECK(nat_equal(compose_nat(comps[j], m), comps[i]));
}

TEST_CASE("poset sites have a terminal classifier") {
  struct SiteFixture {
    CatPtr cat;
    GrothendieckTopology topo;
  };
  std::vector<SiteFixture> fixtures = {
      {sierpinski(), sierpinski_topology()},
      {sierpinski(), trivial_topology(sierpinski())},
      {twopoint(), twopoint_topology()},
      {twopoint(), trivial_topology(twopoint())},
      {overlap(), overlap_topology()},
      {overlap(), trivial_topology(overlap())},
      {threepoint(), threepoint_topology()},
      {builtin_poset({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}}),
       trivial_topology(builtin_poset({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}}))},
  };
  for (const auto& fx : fixtures) {
    SiteXi sx = lsc_of_site(fx.cat, fx.topo);
    CHECK(site_xi_is_terminal(sx));
    CHECK(check_semilattice(sx.sl).ok);
  }
}

TEST_CASE("covering the edge by its endpoints collapses the classifier") {
  // on the parallel pair, let {s,t} cover E: a sheaf is then a graph whose
  // edge set is the square of its vertex set, so the sheaf topos is a copy
  // of Set and its classifier must be terminal even though the presheaf
  // stage still sees two edge states
  std::vector<std::vector<std::vector<std::string>>> gens(2);
  gens[par()->object_index("E")].push_back({"s", "t"});
  GrothendieckTopology cover = validate_topology(par(), gens);
  SiteXi sx = lsc_of_site(par(), cover);
  const int oE = par()->object_index("E"), oV = par()->object_index("V");
  CHECK(!is_sheaf(yoneda(par(), oE), cover).ok);  // representables need not be sheaves
  CHECK(sx.xi0.size(oE) == 2);
  CHECK(sx.xi0.size(oV) == 1);
  CHECK(!is_sheaf(sx.xi0, cover).ok);
  CHECK(site_xi_is_terminal(sx));

  // and the sheafified representable at E is the complete graph on s, t
  CHECK(sx.ay[oE].sheaf.size(oV) == 2);
  CHECK(sx.ay[oE].sheaf.size(oE) == 4);
}

TEST_CASE("edge evaluation does not preserve the classifier") {
  // The functor picking out E embeds Set into DirGraph; its sheafification
  // direction evaluates a graph at its edges. The classifier of DirGraph has
  // two edge states, while the classifier of Set is a point, so that functor
  // cannot send one classifier to the other.
  XiObject dirgraph = local_state_classifier(par());
  const int oE = par()->object_index("E");
  CHECK(dirgraph.xi().size(oE) == 2);  // the evaluated classifier
  XiObject sets = local_state_classifier(builtin_discrete(1));
  CHECK(sets.xi().size(0) == 1);
}

TEST_CASE("minimum subsheaf through an element") {
  GrothendieckTopology tp = twopoint_topology();
  Presheaf glued = sheafify(poset_presheaf(twopoint(), {{"z"}, {"a1", "a2"}, {"b1"}, {"w"}},
                                           {{"le_o0_oa", {0, 0}},
                                            {"le_o0_ob", {0}},
                                            {"le_o0_ox", {0}},
                                            {"le_oa_ox", {0}},
                                            {"le_ob_ox", {0}}}),
                            tp)
                       .sheaf;
  Sheafification shx = sheafify(glued, tp);
  SiteXi sx = lsc_of_site(twopoint(), tp);
  for (size_t c = 0; c < twopoint()->objects.size(); ++c)
    for (int v = 0; v < glued.size(static_cast<int>(c)); ++v) {
      NatTrans am = sheafify_map(sx.ay[c], shx, element_morphism(glued, static_cast<int>(c), v));
      SheafImage img = sheaf_image(am, tp);
      Subpresheaf inside = preimage(shx.unit, img.image);
      // the image is contained in every subsheaf containing the element
      for (const auto& s : enumerate_subpresheaves(glued)) {
        if (!s.mask[c][v]) continue;
        if (!(j_closure(glued, s, tp) == s)) continue;
        CHECK(subset_of(inside, s));
      }
      CHECK(inside.mask[c][v]);
    }
}
