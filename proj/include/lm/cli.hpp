#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lm {

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int non_convergence = 3;
} // namespace exit_code

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace lm
