#pragma once

#include "tapseq/aiger.hpp"
#include "tapseq/trace.hpp"

#include <cstdint>
#include <optional>

namespace tapseq
{

enum class OracleVerdict : std::uint8_t
{
    reachable,
    unreachable,
    inconclusive,
};

struct OracleResult
{
    OracleVerdict verdict = OracleVerdict::inconclusive;
    // Minimal number of transitions from the initial state to a bad state.
    std::size_t depth = 0;
    std::size_t states_explored = 0;
    // A shortest counterexample when reachable.
    std::optional< Counterexample > counterexample;
};

// Exhaustive breadth-first reachability. Successors come from input
// enumeration for up to 12 inputs and from SAT enumeration with blocking
// clauses otherwise. Inconclusive once more than max_states states are seen.
OracleResult explicit_oracle( const AigModel& model, std::size_t max_states = 1u << 20 );

} // namespace tapseq
