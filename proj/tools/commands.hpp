#ifndef CUSPIDAL_TOOLS_COMMANDS_HPP
#define CUSPIDAL_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cuspidal/lattice.hpp"
#include "cuspidal/scenario_io.hpp"

namespace cuspidal::cli {

/** Output of one command: the structured document, its text rendering and the exit status. */
struct Report
{
  Json doc;
  std::string text;
  int status = 0;
};

/** "E7sc", "E6:ad", "G2" (adjoint when no label), or a series letter with `rank`.
 * `isogeny` overrides a label in the name. */
RootDatum group_from_flags(std::string const &name, std::string const &isogeny, int rank);

Report cmd_roots(std::string const &type, int rank);
Report cmd_cuspidal_levis(std::string const &type, std::string const &isogeny, int rank, int p);
Report cmd_m_classify(std::string const &g, std::string const &isogeny, int p, std::string const &l,
                      std::string const &m);
/** `checks` empty means all. Status 1 when a check fails. */
Report cmd_verify(std::string const &scenario, std::vector<std::string> const &checks);
Report cmd_pairing(std::string const &scenario);

/** Parses arguments and runs one command. Exit status 0 on success, 1 on a
 * failed verification, 2 on an input error. */
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace cuspidal::cli

#endif // CUSPIDAL_TOOLS_COMMANDS_HPP
