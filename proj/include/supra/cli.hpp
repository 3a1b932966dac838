#pragma once

#include "supra/types.hpp"

#include <string>
#include <vector>

namespace supra::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kValidation = 2, kNonConvergence = 3 };

/// Parses `--interlayer` specs: alltoall, alltoall-noself, chain,
/// teleport:<gamma>, blocks:sizes=a,b,..;intra=x;inter=y, file:<path>.
/// `layer_ids` maps file layer ids for file: specs.
InterlayerMatrix parse_interlayer_spec(const std::string& spec, Index n_layers,
                                       const std::vector<long long>* layer_ids = nullptr);

/// Runs one command line and returns its exit code. Diagnostics go to stderr.
int dispatch(int argc, const char* const* argv);

} // namespace supra::cli
