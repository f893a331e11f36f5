#ifndef PLSSTOP_CLI_HPP
#define PLSSTOP_CLI_HPP

#include <string>
#include <vector>

namespace plsstop {

// Exit codes: 0 success, 1 usage/config error, 2 data error,
// 3 grid completed with per-cell failures.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace plsstop

#endif
