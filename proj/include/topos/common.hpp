#ifndef TOPOS_COMMON_HPP
#define TOPOS_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace topos {

enum class errc {
  missing_composite,
  associativity_violation,
  identity_violation,
  unknown_catalog_key,
  invalid_cayley_table,
  invalid_poset,
  unknown_object,
  unknown_element,
  shape_unsupported,
  not_a_congruence,
  budget_exceeded,
  not_locally_determined,
  not_a_semilattice_hom,
  not_conjugate_closed,
  not_a_sheaf,
  axiom_violation,
  parse_error,
  unknown_command,
  internal_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

// Enumeration limits. All engine entry points that can blow up take one of
// these; exceeding a limit raises errc::budget_exceeded instead of grinding.
struct Budget {
  int max_objects = 64;
  int max_morphisms = 4096;
  std::uint64_t max_carrier = 1u << 20;      // total elements of one presheaf
  std::uint64_t max_enumeration = 1u << 20;  // candidates / results per enumeration
  int max_group_order = 360;                 // subgroup lattice
  int max_generic_group = 24;                // group fed through the generic engine
  int max_topology_group = 60;               // explicit coset topology
  int max_hom_fiber = 12;                    // fiber size cap for hom-set search
  int max_closure_object = 16;               // carrier cap for derived corpus objects
};

inline void check_budget(bool ok, const std::string& what) {
  if (!ok) fail(errc::budget_exceeded, what);
}

}  // namespace topos

#endif
