#ifndef BALLMAP_CLI_CLI_HPP
#define BALLMAP_CLI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ballmap::cli
{

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNonMember = 1; // check: sampled test failed; suite: a check failed
inline constexpr int kExitInvalid = 2;   // bad arguments or input files
inline constexpr int kExitNumeric = 3;   // numerical failure during evaluation

// Runs the `ballmap` command line with the given arguments (argv[0] excluded),
// writing primary output to `out` and diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// "start:end:count" or a single value.
std::vector<double> parse_radii(const std::string &spec);

} // namespace ballmap::cli

#endif
