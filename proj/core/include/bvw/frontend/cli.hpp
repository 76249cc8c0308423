#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bvw {

// Subcommands validate, check-sb, check-axioms, extend, member, report.
// Writes one JSON document to out and diagnostics to err. Returns 0 when
// every check passes, 1 when a check fails, 2 on input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bvw
