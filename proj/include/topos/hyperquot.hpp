#ifndef TOPOS_HYPERQUOT_HPP
#define TOPOS_HYPERQUOT_HPP

#include <memory>
#include <string>
#include <vector>

#include "topos/classifiers.hpp"

namespace topos {

struct CoherentFamily {
  std::vector<Presheaf> family;
  std::vector<Subpresheaf> subs;
};

struct CoherenceVerdict {
  bool ok = true;
  std::string witness;
};

/// A hyperconnected quotient, represented by its defining internal filter of
/// the local state classifier.
struct HyperconnectedQuotient {
  std::shared_ptr<const XiObject> xi;
  InternalFilter filter;
};

CoherentFamily family_from_subobject(const XiObject& xi, const Subpresheaf& s,
                                     const std::vector<Presheaf>& objects);

CoherenceVerdict is_coherent(const CoherentFamily& fam, const Budget& budget = {});

HyperconnectedQuotient quotient_from_filter(std::shared_ptr<const XiObject> xi,
                                            InternalFilter f);

bool membership(const HyperconnectedQuotient& q, const Presheaf& x);

struct Coreflection {
  Subpresheaf sub;
  Presheaf object;
  NatTrans counit;  // inclusion into x
};
Coreflection coreflect(const HyperconnectedQuotient& q, const Presheaf& x);

std::vector<HyperconnectedQuotient> enumerate_quotients(const CatPtr& cat,
                                                        const Budget& budget = {});
std::vector<HyperconnectedQuotient> enumerate_quotients(std::shared_ptr<const XiObject> xi,
                                                        const Budget& budget = {});

struct ClosureReport {
  bool ok = true;
  std::vector<std::string> checks;  // one line per verified closure property
  std::string witness;
};

/// Closes the corpus under subobjects, quotients and binary products, then
/// verifies membership closure and counit couniversality for the quotient.
/// The subobject of Xi behind the quotient handle may be any subobject; a
/// non-filter makes couniversality fail, which the report records.
ClosureReport verify_closure(const XiObject& xi, const Subpresheaf& s,
                             const std::vector<Presheaf>& corpus, const Budget& budget = {});

bool is_boolean(const CatPtr& cat, const Budget& budget = {});

// corpus closure helper shared by verify_closure and the test suites
std::vector<Presheaf> close_corpus(const CatPtr& cat, std::vector<Presheaf> corpus,
                                   const Budget& budget = {});

}  // namespace topos

#endif
