#include <CLI11.hpp>
#include <iostream>

#include "cube/oracle.hpp"

// check / normalize are wired in once the loader lands; see loader.hpp.
#if __has_include("loader.hpp")
#include "loader.hpp"
#define CUBECK_HAVE_LOADER 1
#endif

int main(int argc, char** argv) {
  CLI::App app{"cubeck: a proof checker for a small cubical type theory"};
  app.require_subcommand(1);

  // ---- oracle
  auto* oracle = app.add_subcommand(
      "oracle", "run finite presheaf model checks over the cube category");
  std::string suite = "all";
  ctt::cube::OracleOptions opt;
  bool json = false;
  oracle->add_option("suite", suite, "one of: box interval cof-completeness "
                                     "delta-nabla discrete wprime "
                                     "coproduct-null all");
  oracle->add_option("--dim", opt.dim, "dimension bound (<= 3)")
      ->check(CLI::Range(0, 3));
  oracle->add_option("--depth", opt.depth, "tree depth bound");
  oracle->add_flag("--json", json, "one JSON record per line");

#ifdef CUBECK_HAVE_LOADER
  auto* check = app.add_subcommand("check", "type check .ct files");
  std::vector<std::string> paths;
  bool check_json = false, lint = false;
  check->add_option("paths", paths, "files or directories")->required();
  check->add_flag("--json", check_json, "structured diagnostics");
  check->add_flag("--lint", lint, "require reference annotations");

  auto* normalize =
      app.add_subcommand("normalize", "print the normal form of a definition");
  std::string nfile, nname;
  normalize->add_option("file", nfile)->required();
  normalize->add_option("name", nname)->required();

  auto* lemmas = app.add_subcommand(
      "lemmas", "print the definition-to-reference map of checked files");
  std::vector<std::string> lpaths;
  lemmas->add_option("paths", lpaths)->required();
#endif

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle->parsed()) {
      auto recs = ctt::cube::run_suite(suite, opt);
      ctt::cube::print_records(std::cout, recs, json);
      for (const auto& r : recs)
        if (!r.pass) return 1;
      return 0;
    }
#ifdef CUBECK_HAVE_LOADER
    if (check->parsed()) return ctt::cmd_check(paths, check_json, lint);
    if (normalize->parsed()) return ctt::cmd_normalize(nfile, nname);
    if (lemmas->parsed()) return ctt::cmd_lemmas(lpaths);
#endif
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
