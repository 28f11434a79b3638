#pragma once
// agriroute command line. Exit codes: 0 success, 1 domain error, 2 usage error.
// Domain errors print one line to the error stream:
//   error kind=<Kind> message="<text>"

#include <iosfwd>
#include <string>
#include <vector>

namespace agriroute::cli
{

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agriroute::cli
