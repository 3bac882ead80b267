#pragma once

// Commands of the twocat driver and the reports they produce.
//
// JSON schema (keys in this order):
//   {
//     "command": {"name": ..., "files": [...], <options given>},
//     "status":  "ok" | "error",
//     "exit":    0 | 1 | 2 | 3,
//     "result":  { per command, see below }          # when status is ok
//     "error":   {"code": ..., "message": ..., "witness": [...]}   # otherwise
//   }
//
//   validate     {"categories": [table], "functors": [...], "nats": [...],
//                 "pseudofunctors": [...], "cocones": [...], "cones": [...]}
//   filtered     {"category", "verdict", "counterexample"?: {"condition", "objects", "morphisms"}}
//   colim        {"pseudofunctor", "category": table, "homs": [{"from", "to", "classes":
//                 [{"morphism", "apex", "left", "right", "representative"}]}]}
//   lim          {"pseudofunctor", "category": table, "families": [{"morphism", "components"}]}
//   factor       {"pseudofunctor", "cocone"|"cone", "functor": {"objects", "morphisms"},
//                 "on_the_nose", "lax_factorization"|"functorial"}
//   interchange  {"pseudofunctor", "filtered", "counterexample"?, "colim_of_lims": {"objects", "morphisms"},
//                 "lim_of_colims": {"objects"}, "psi_functorial", "psi_matches_formula",
//                 "fully_faithful", "non_bijective_homs", "essentially_surjective",
//                 "preimages": [...], "verdict"}
//   fuzz         {"seed", "cases", "passed", "failed", "results": [...]}
//
// A table is {"name", "objects": [...], "morphisms": [{"name", "dom", "cod"}],
// "compose": [[g, f, g o f], ...]} with identities named id_<object>.

#include <cstdint>
#include <string>
#include <vector>

#include "twocat/catml.hpp"

namespace twocat {

struct Command {
  std::string name;
  std::vector<std::string> files;
  std::string category;
  std::string pseudofunctor;
  std::string cocone;
  std::string cone;
  bool skip_filter_check = false;
  int cases = 0;
  std::uint64_t seed = 0;
  int max_elab = 64;
};

struct Report {
  std::string json;
  std::string human;
  int exit_status = 0;
};

/// Runs a command against an already parsed workspace. Module errors are
/// turned into error reports.
Report run_command(const Workspace& w, const Command& c);

/// Parses c.files and runs the command.
Report run(const Command& c);

}  // namespace twocat
