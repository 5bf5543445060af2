#ifndef TOPOS_GROUPTOPOS_HPP
#define TOPOS_GROUPTOPOS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "topos/fincat.hpp"

namespace topos {

/// A finite group, as a Cayley table over named elements. Groups built from
/// permutation generators also keep the permutations.
struct FinGroup {
  std::string name;
  std::vector<std::string> elems;
  std::vector<std::vector<int>> table;  // table[a][b] = a * b
  int id = -1;
  std::vector<int> inv;
  int degree = 0;
  std::vector<std::vector<int>> perms;  // one-line notation, aligned with elems

  int size() const { return static_cast<int>(elems.size()); }
  int mult(int a, int b) const { return table[a][b]; }
};

FinGroup group_from_table(std::string name, std::vector<std::string> elems,
                          std::vector<std::vector<int>> table);
FinGroup group_from_generators(std::string name, int degree,
                               const std::vector<std::vector<int>>& generators,
                               const Budget& budget = {});
FinGroup symmetric_group(int degree, const Budget& budget = {});

CatPtr group_category(const FinGroup& g);

struct SubgroupLattice {
  std::vector<std::vector<int>> subgroups;  // ascending element lists, canonical order
  std::vector<std::vector<char>> leq;       // inclusion
  std::vector<std::vector<int>> conj;       // conj[h][g]: index of g^-1 H g
  std::vector<std::vector<int>> meet;       // intersection

  int find(const std::vector<int>& elements) const;
  int full() const { return static_cast<int>(subgroups.size()) - 1; }
};

SubgroupLattice subgroup_lattice(const FinGroup& g, const Budget& budget = {});

// filters of the subgroup lattice closed under conjugation, as ascending
// member index lists in canonical order
std::vector<std::vector<int>> conjugate_closed_filters(const SubgroupLattice& l);

std::vector<int> normal_subgroups(const FinGroup& g, const SubgroupLattice& l);

/// The coset topology generated by a conjugate-closed filter. Subsets of the
/// group are bit masks; the full open family is materialized only while the
/// index of the minimal open subgroup stays small.
struct GroupTopologyView {
  std::vector<int> filter;  // subgroup indices, ascending
  int min_subgroup = -1;    // lattice index of the generator
  std::vector<std::uint64_t> basis;
  std::vector<std::uint64_t> opens;
  bool opens_materialized = false;
};

GroupTopologyView filter_to_topology(const FinGroup& g, const SubgroupLattice& l,
                                     const std::vector<int>& filter,
                                     const Budget& budget = {});
std::vector<int> topology_to_filter(const FinGroup& g, const SubgroupLattice& l,
                                    const GroupTopologyView& view);

struct CrosscheckReport {
  bool ok = true;
  std::vector<std::string> checks;
  std::string witness;
  int fiber_size = 0;
  int filter_count = 0;
  int quotient_count = 0;
};

/// Runs the group through the generic engine and matches every layer against
/// the lattice-side computation: fiber vs subgroups (order and conjugation),
/// filters vs conjugate-closed filters, quotient counts, and stabilizer
/// states of coset actions.
CrosscheckReport crosscheck_generic(const FinGroup& g, const Budget& budget = {});

// normal subgroup counts of the symmetric groups for degrees 0..max_degree
std::vector<std::uint64_t> species_quotient_counts(int max_degree, const Budget& budget = {});

std::string subgroup_lattice_dot(const FinGroup& g, const SubgroupLattice& l,
                                 const std::string& name);

}  // namespace topos

#endif
