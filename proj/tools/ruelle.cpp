#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ruelle/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pollicott-Ruelle resonances and invariant Ruelle distributions on Schottky surfaces"};
  app.require_subcommand(1);
  std::string config_path;
  const char* names[][2] = {
      {"resonances", "Locate resonances in the scan window"},
      {"distribution-section", "Invariant distribution on the Poincare section"},
      {"distribution-base", "Invariant distribution projected to the base"},
      {"words-stats", "Counts of closed words, classes and orbit representatives"},
      {"surface-validate", "Build the surface and its symmetry group and report"},
  };
  for (auto& n : names) app.add_subcommand(n[0], n[1])->add_option("--config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ruelle::exit_validation;
  }

  std::ifstream f(config_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read config '" << config_path << "'\n";
    return ruelle::exit_validation;
  }
  std::ostringstream text;
  text << f.rdbuf();
  return ruelle::run_command(app.get_subcommands().front()->get_name(), text.str(), std::cout, std::cerr);
}
