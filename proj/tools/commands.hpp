#pragma once

#include <string>

#include "io.hpp"

namespace cli {

// Each returns an exit status; library errors propagate to the caller.
int run_tree(const std::string& sub, const Context& ctx);
int run_dendrite(const std::string& sub, const Context& ctx);
int run_shift(const std::string& sub, const Context& ctx);
int run_group(const std::string& sub, const Context& ctx);

}  // namespace cli
