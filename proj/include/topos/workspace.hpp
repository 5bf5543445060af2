#ifndef TOPOS_WORKSPACE_HPP
#define TOPOS_WORKSPACE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topos/grouptopos.hpp"
#include "topos/presheaf.hpp"
#include "topos/site.hpp"

namespace topos {

/// One parsed input file: category, named presheaves, a group, a site and
/// budget overrides, every section optional.
struct Workspace {
  CatPtr cat;
  std::vector<std::pair<std::string, Presheaf>> presheaves;  // sorted by name
  std::optional<FinGroup> group;
  std::optional<GrothendieckTopology> site;
  Budget budget;
};

Workspace load_workspace(const std::string& json_text);
Workspace load_workspace_file(const std::string& path);

}  // namespace topos

#endif
