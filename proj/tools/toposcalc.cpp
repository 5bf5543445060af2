// Batch front end: loads a workspace file, runs one pipeline, prints a
// deterministic report. Exit codes: 0 success, 1 verification failure,
// 2 input error, 3 budget exceeded.
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "topos/report.hpp"

namespace {

int exit_code_for(const topos::Error& e) {
  switch (e.code()) {
    case topos::errc::budget_exceeded:
      return 3;
    default:
      return 2;
  }
}

std::vector<topos::CorpusEntry> corpus_from_dir(const std::string& dir) {
  std::vector<topos::CorpusEntry> extra;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    topos::Workspace ws = topos::load_workspace_file(path.string());
    if (!ws.cat) continue;
    topos::CorpusEntry e;
    e.name = path.stem().string();
    e.cat = ws.cat;
    for (auto& [name, p] : ws.presheaves) e.objects.push_back(std::move(p));
    if (e.objects.empty()) e.objects.push_back(topos::terminal_presheaf(e.cat));
    extra.push_back(std::move(e));
  }
  return extra;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite presheaf topos calculator"};
  std::string command, file, format = "text", corpus_dir;
  int max_size = -1, max_degree = 5, jobs = 1;
  app.add_option("command", command,
                 "omega | lsc | filters | quotients | coreflect | group | species | "
                 "site-lsc | check")
      ->required();
  app.add_option("file", file, "workspace file (JSON)");
  app.add_option("--format", format, "text | json | tsv | dot");
  app.add_option("--max-size", max_size, "enumeration budget override");
  app.add_option("--max-degree", max_degree, "species degree bound");
  app.add_option("--corpus", corpus_dir, "extra corpus directory for check");
  app.add_option("--jobs", jobs, "parallel workers for check");
  CLI11_PARSE(app, argc, argv);

  try {
    topos::Format fmt = topos::parse_format(format);
    topos::Budget budget;
    auto load = [&] {
      if (file.empty()) topos::fail(topos::errc::parse_error, "this command needs a file");
      topos::Workspace ws = topos::load_workspace_file(file);
      if (max_size > 0) {
        ws.budget.max_enumeration = static_cast<std::uint64_t>(max_size);
        ws.budget.max_carrier = static_cast<std::uint64_t>(max_size);
      }
      budget = ws.budget;
      return ws;
    };

    if (command == "omega") {
      std::cout << topos::report_omega(load(), fmt);
    } else if (command == "lsc") {
      std::cout << topos::report_lsc(load(), fmt);
    } else if (command == "filters") {
      std::cout << topos::report_filters(load(), fmt);
    } else if (command == "quotients") {
      std::cout << topos::report_quotients(load(), fmt);
    } else if (command == "coreflect") {
      std::cout << topos::report_coreflect(load(), fmt);
    } else if (command == "group") {
      std::cout << topos::report_group(load(), fmt);
    } else if (command == "species") {
      std::cout << topos::report_species(max_degree, fmt);
    } else if (command == "site-lsc") {
      std::cout << topos::report_site_lsc(load(), fmt);
    } else if (command == "check") {
      if (!file.empty()) load();  // surfaces input errors with location info
      std::vector<topos::CorpusEntry> extra;
      if (!corpus_dir.empty()) extra = corpus_from_dir(corpus_dir);
      if (max_size > 0) {
        budget.max_enumeration = static_cast<std::uint64_t>(max_size);
        budget.max_carrier = static_cast<std::uint64_t>(max_size);
      }
      topos::CheckResult result = topos::run_check(jobs, budget, extra);
      std::cout << result.text;
      return result.ok ? 0 : 1;
    } else {
      topos::fail(topos::errc::unknown_command, "no command '" + command + "'");
    }
    return 0;
  } catch (const topos::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
