/**
 * @file cli.h
 *
 * Command line front end: eval, explain, rewrite, game, bench.
 * Exit codes: 0 ok, 1 semantic error, 2 IO or format error.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace whyprov {

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int runCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace whyprov
