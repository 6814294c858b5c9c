#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tpack {

/// Runs one subcommand (gen | pack | verify | oracle | sweep). args excludes
/// the program name. Returns 0 on success, 1 on a verification or packing
/// failure, 2 on a usage or I/O error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_dispatch(int argc, char** argv);

}  // namespace tpack
