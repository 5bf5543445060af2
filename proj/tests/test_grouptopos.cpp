#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "topos/grouptopos.hpp"

using namespace topos;

namespace {
FinGroup z(int n) {
  return group_from_table("Z" + std::to_string(n), oracles::letters(n),
                          oracles::cyclic_table(n));
}
FinGroup v4() { return group_from_table("V4", oracles::letters(4), oracles::klein_table()); }
FinGroup s3() { return group_from_table("S3", oracles::letters(6), oracles::s3_table()); }
FinGroup d4() { return group_from_table("D4", oracles::letters(8), oracles::d4_table()); }
FinGroup q8() { return group_from_table("Q8", oracles::letters(8), oracles::q8_table()); }

// raw subset scan for filters of the subgroup lattice
std::set<std::vector<int>> brute_lattice_filters(const SubgroupLattice& l) {
  const int n = static_cast<int>(l.subgroups.size());
  std::set<std::vector<int>> out;
  for (std::uint64_t bits = 1; bits < (1ull << n); ++bits) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (bits >> i & 1) members.push_back(i);
    bool ok = true;
    for (int i : members) {
      for (int j = 0; j < n && ok; ++j)
        if (l.leq[i][j]) ok = bits >> j & 1;  // upward closed
      for (int j : members) ok = ok && (bits >> l.meet[i][j] & 1);
    }
    if (ok) out.insert(members);
  }
  return out;
}
}  // namespace

TEST_CASE("group construction") {
  FinGroup g = s3();
  CHECK(g.size() == 6);
  CHECK(g.mult(g.id, 3) == 3);

  FinGroup perm = group_from_generators("S3", 3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(perm.size() == 6);
  CHECK(perm.degree == 3);

  FinGroup sym4 = symmetric_group(4);
  CHECK(sym4.size() == 24);
  CHECK(symmetric_group(0).size() == 1);
  CHECK(symmetric_group(1).size() == 1);

  CHECK_THROWS_AS(group_from_table("bad", {"e", "z"}, {{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(group_from_generators("bad", 3, {{0, 0, 1}}), Error);
}

TEST_CASE("subgroup lattices") {
  CHECK(subgroup_lattice(z(2)).subgroups.size() == 2);
  CHECK(subgroup_lattice(z(4)).subgroups.size() == 3);

  SubgroupLattice lv = subgroup_lattice(v4());
  CHECK(lv.subgroups.size() == 5);
  // diamond with three atoms: 3 covering pairs up, 3 down
  int atoms = 0;
  for (const auto& s : lv.subgroups)
    if (s.size() == 2) ++atoms;
  CHECK(atoms == 3);

  SubgroupLattice ls = subgroup_lattice(s3());
  CHECK(ls.subgroups.size() == 6);
  SubgroupLattice ld = subgroup_lattice(d4());
  CHECK(ld.subgroups.size() == 10);
  SubgroupLattice lq = subgroup_lattice(q8());
  CHECK(lq.subgroups.size() == 6);
  CHECK(subgroup_lattice(symmetric_group(4)).subgroups.size() == 30);

  // brute-force subset oracle agrees on the small groups
  for (const FinGroup& g : {z(2), z(3), z(4), v4(), s3(), d4(), q8()}) {
    auto brute = oracles::brute_subgroups(g.table, g.id);
    CHECK(subgroup_lattice(g).subgroups.size() == brute.size());
  }
}

TEST_CASE("conjugate closed filters and normal subgroups") {
  SubgroupLattice lv = subgroup_lattice(v4());
  CHECK(conjugate_closed_filters(lv).size() == 5);  // abelian: all filters
  CHECK(normal_subgroups(v4(), lv).size() == 5);

  SubgroupLattice ls = subgroup_lattice(s3());
  auto ccf = conjugate_closed_filters(ls);
  CHECK(ccf.size() == 3);
  CHECK(normal_subgroups(s3(), ls).size() == 3);

  FinGroup triv = group_from_table("1", {"e"}, {{0}});
  CHECK(conjugate_closed_filters(subgroup_lattice(triv)).size() == 1);

  SubgroupLattice lq = subgroup_lattice(q8());
  CHECK(normal_subgroups(q8(), lq).size() == 6);  // every subgroup of Q8

  FinGroup sym4 = symmetric_group(4);
  SubgroupLattice l4 = subgroup_lattice(sym4);
  CHECK(normal_subgroups(sym4, l4).size() == 4);  // 1, V4, A4, S4

  // oracle: filters are exactly the principal up-sets, and the conjugate
  // closed ones are those at normal subgroups
  for (const FinGroup& g : {z(4), v4(), s3(), q8()}) {
    SubgroupLattice l = subgroup_lattice(g);
    auto brute = brute_lattice_filters(l);
    CHECK(brute.size() == l.subgroups.size());
    auto ccf_list = conjugate_closed_filters(l);
    std::set<std::vector<int>> conj_closed(ccf_list.begin(), ccf_list.end());
    for (const auto& f : conj_closed) CHECK(brute.count(f) == 1);
    std::set<std::vector<int>> principal_at_normal;
    for (int nn : normal_subgroups(g, l)) {
      std::vector<int> members;
      for (size_t k = 0; k < l.subgroups.size(); ++k)
        if (l.leq[nn][k]) members.push_back(static_cast<int>(k));
      principal_at_normal.insert(members);
    }
    CHECK(conj_closed == principal_at_normal);
  }
}

TEST_CASE("filter to topology round trip") {
  FinGroup g = s3();
  SubgroupLattice l = subgroup_lattice(g);

  // F = {G}: opens are only unions of the single coset G
  std::vector<int> top_only{l.full()};
  GroupTopologyView indiscrete = filter_to_topology(g, l, top_only);
  CHECK(indiscrete.basis.size() == 1);
  CHECK(indiscrete.opens_materialized);
  CHECK(indiscrete.opens.size() == 2);  // empty and G
  CHECK(topology_to_filter(g, l, indiscrete) == top_only);

  // F = all subgroups is not conjugate closed for S3; the discrete topology
  // comes from the trivial subgroup's filter only if that is normal
  std::vector<int> all(l.subgroups.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  GroupTopologyView discrete = filter_to_topology(g, l, all);
  CHECK(discrete.opens_materialized);
  CHECK(discrete.opens.size() == 64);  // 2^|G|
  CHECK(discrete.basis.size() >= 6);
  CHECK(topology_to_filter(g, l, discrete) == all);

  // F = up-set of A3: opens are unions of A3 cosets
  int a3 = -1;
  for (size_t i = 0; i < l.subgroups.size(); ++i)
    if (l.subgroups[i].size() == 3) a3 = static_cast<int>(i);
  std::vector<int> upa3{a3, l.full()};
  GroupTopologyView va3 = filter_to_topology(g, l, upa3);
  CHECK(va3.opens_materialized);
  CHECK(va3.opens.size() == 4);  // empty, A3, its coset, G
  CHECK(topology_to_filter(g, l, va3) == upa3);

  // a non conjugate-closed filter is rejected
  int c2 = -1;
  for (size_t i = 0; i < l.subgroups.size(); ++i)
    if (l.subgroups[i].size() == 2) c2 = static_cast<int>(i);
  std::vector<int> upc2;
  for (size_t k = 0; k < l.subgroups.size(); ++k)
    if (l.leq[c2][k]) upc2.push_back(static_cast<int>(k));
  CHECK_THROWS_AS(filter_to_topology(g, l, upc2), Error);

  // round trip over every conjugate closed filter of every corpus group
  for (const FinGroup& gg : {z(2), z(3), z(4), v4(), s3(), d4(), q8()}) {
    SubgroupLattice ll = subgroup_lattice(gg);
    for (const auto& f : conjugate_closed_filters(ll)) {
      GroupTopologyView view = filter_to_topology(gg, ll, f);
      CHECK(topology_to_filter(gg, ll, view) == f);
    }
  }
}

TEST_CASE("generic engine crosscheck") {
  for (const FinGroup& g : {z(2), z(3), z(4), v4(), s3(), d4(), q8()}) {
    CrosscheckReport rep = crosscheck_generic(g);
    CHECK(rep.ok);
    CHECK(rep.checks.size() == 7);
  }
  CrosscheckReport z2 = crosscheck_generic(z(2));
  CHECK(z2.fiber_size == 2);
  CHECK(z2.filter_count == 2);
  CrosscheckReport z4 = crosscheck_generic(z(4));
  CHECK(z4.fiber_size == 3);
  CHECK(z4.filter_count == 3);
  CrosscheckReport s3r = crosscheck_generic(s3());
  CHECK(s3r.fiber_size == 6);
  CHECK(s3r.filter_count == 3);

  Budget tight;
  tight.max_generic_group = 4;
  CHECK_THROWS_AS(crosscheck_generic(s3(), tight), Error);
}

TEST_CASE("species quotient counts") {
  auto counts = species_quotient_counts(5);
  CHECK(counts == std::vector<std::uint64_t>{1, 1, 2, 3, 4, 3});
  CHECK(species_quotient_counts(0) == std::vector<std::uint64_t>{1});

  // independent check through the lattice route up to degree five
  for (int k = 2; k <= 5; ++k) {
    FinGroup sym = symmetric_group(k);
    SubgroupLattice l = subgroup_lattice(sym);
    CHECK(counts[k] == normal_subgroups(sym, l).size());
  }
  CHECK_THROWS_AS(species_quotient_counts(8), Error);
}

TEST_CASE("lattice dot export") {
  FinGroup g = v4();
  SubgroupLattice l = subgroup_lattice(g);
  std::string dot = subgroup_lattice_dot(g, l, "subV4");
  CHECK(l.subgroups.size() == 5);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 6);  // paper's diamond: 6 covers
}
