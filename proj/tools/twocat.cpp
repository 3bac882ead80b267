#include <iostream>

#include "CLI11.hpp"

#include "twocat/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite 2-colimits, 2-limits and their interchange"};
  app.require_subcommand(1);

  std::string format = "human";
  int max_elab = 64;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--max-elab", max_elab, "Morphism bound for presentations")->check(CLI::PositiveNumber);

  twocat::Command cmd;

  auto* validate = app.add_subcommand("validate", "Parse and validate .catml files");
  validate->add_option("files", cmd.files, "Input files")->required();

  auto* filtered = app.add_subcommand("filtered", "Decide whether a category is filtered");
  filtered->add_option("files", cmd.files, "Input files")->required();
  filtered->add_option("--category", cmd.category, "Category name")->required();

  auto* colim = app.add_subcommand("colim", "Build the 2-colimit of a pseudofunctor");
  colim->add_option("files", cmd.files, "Input files")->required();
  colim->add_option("--pseudofunctor", cmd.pseudofunctor, "Pseudofunctor name")->required();

  auto* lim = app.add_subcommand("lim", "Build the 2-limit of a pseudofunctor");
  lim->add_option("files", cmd.files, "Input files")->required();
  lim->add_option("--pseudofunctor", cmd.pseudofunctor, "Pseudofunctor name")->required();

  auto* factor = app.add_subcommand("factor", "Factor a cocone through the 2-colimit or a cone through the 2-limit");
  factor->add_option("files", cmd.files, "Input files")->required();
  factor->add_option("--pseudofunctor", cmd.pseudofunctor, "Pseudofunctor name")->required();
  auto* cocone = factor->add_option("--cocone", cmd.cocone, "Cocone name");
  auto* cone = factor->add_option("--cone", cmd.cone, "Cone name");
  cocone->excludes(cone);

  auto* interchange = app.add_subcommand("interchange", "Check that 2colim_I 2lim_J a -> 2lim_J 2colim_I a is an equivalence");
  interchange->add_option("files", cmd.files, "Input files")->required();
  interchange->add_option("--pseudofunctor", cmd.pseudofunctor, "Pseudofunctor name")->required();
  interchange->add_flag("--diagnostic-skip-filter-check", cmd.skip_filter_check,
                        "Run on a non-filtered I and report what fails");

  auto* fuzz = app.add_subcommand("fuzz", "Check generated instances");
  fuzz->add_option("--cases", cmd.cases, "Number of instances")->required()->check(CLI::NonNegativeNumber);
  fuzz->add_option("--seed", cmd.seed, "Seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cmd.name = app.get_subcommands().front()->get_name();
  if (cmd.name == "factor" && cmd.cocone.empty() && cmd.cone.empty()) {
    std::cerr << "factor needs --cocone or --cone\n";
    return 2;
  }
  cmd.max_elab = max_elab;
  const twocat::Report r = twocat::run(cmd);
  std::cout << (format == "json" ? r.json : r.human);
  return r.exit_status;
}
