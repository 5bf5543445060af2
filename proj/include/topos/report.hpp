#ifndef TOPOS_REPORT_HPP
#define TOPOS_REPORT_HPP

#include <string>
#include <vector>

#include "topos/workspace.hpp"

namespace topos {

enum class Format { text, json, tsv, dot };
Format parse_format(const std::string& name);

std::string report_omega(const Workspace& ws, Format fmt);
std::string report_lsc(const Workspace& ws, Format fmt);
std::string report_filters(const Workspace& ws, Format fmt);
std::string report_quotients(const Workspace& ws, Format fmt);
std::string report_coreflect(const Workspace& ws, Format fmt);
std::string report_group(const Workspace& ws, Format fmt);
std::string report_species(int max_degree, Format fmt, const Budget& budget = {});
std::string report_site_lsc(const Workspace& ws, Format fmt);

/// One named index category with its test objects, as used by `check`.
struct CorpusEntry {
  std::string name;
  CatPtr cat;
  std::vector<Presheaf> objects;
};

std::vector<CorpusEntry> bundled_corpus();

struct CheckResult {
  bool ok = true;
  std::string text;
};

/// Runs the full invariant suite over the bundled corpus (plus any extra
/// entries). Output is canonical regardless of the number of jobs.
CheckResult run_check(int jobs, const Budget& budget,
                      const std::vector<CorpusEntry>& extra = {});

}  // namespace topos

#endif
