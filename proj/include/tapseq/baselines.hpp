#pragma once

#include "tapseq/aiger.hpp"
#include "tapseq/trace.hpp"

#include <cstdint>

namespace tapseq
{

struct RandConfig
{
    std::uint64_t max_tries = 10'000;
    // States per random walk, including the initial state.
    std::uint64_t max_length = 100;
    std::uint64_t seed = 0;
    double time_limit_s = 180;
};

// Random walks from the initial state. Each visited state is checked for the
// bad output under the input sampled for that step, which then drives the
// transition. One RNG stream serves the whole run.
Verdict run_rand( const AigModel& model, const RandConfig& config = {} );

struct BmcConfig
{
    std::size_t max_depth = 100;
    // Conflict cap per depth; 0 means unlimited.
    std::uint64_t conflict_limit = 1'000'000;
    double time_limit_s = 180;
};

// Bounded model checking with increasing depth; the first satisfiable depth
// gives a shortest counterexample.
Verdict run_bmc( const AigModel& model, const BmcConfig& config = {} );

} // namespace tapseq
