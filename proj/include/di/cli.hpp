#ifndef DI_CLI_HPP
#define DI_CLI_HPP

/** @file
 * Command-line front end (subcommands: info, gamble, portfolio,
 * compress, hyptest, example1). Exposed as a function so tests can
 * drive the CLI in process.
 *
 * Exit codes: 0 success; 2 usage; 3 parse; 4 capacity; 5 support;
 * 6 domain; 7 convergence. Errors print a one-line JSON object
 * {"error": kind, "message": ...} to stderr.
 */

namespace di {

int run_cli(int argc, const char* const* argv);

}  // namespace di

#endif  // DI_CLI_HPP
