#pragma once

#include "tapseq/aiger.hpp"
#include "tapseq/bits.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tapseq
{

// s1..sk with the transition inputs x1..x(k-1) and the input under which sk
// raises the bad output.
struct Counterexample
{
    std::vector< State > states;
    std::vector< InputVector > inputs;
    InputVector final_bad_input;

    std::size_t length() const { return states.size(); }
};

struct TraceCheck
{
    bool ok = false;
    std::string diagnostic;

    explicit operator bool() const { return ok; }
};

// Replays the counterexample from the initial state by simulation.
TraceCheck validate_counterexample( const AigModel& model, const Counterexample& cex );

// Named counters in insertion order, printed as key=value lines.
class RunStats
{
public:
    void set( const std::string& key, std::uint64_t value );
    void add( const std::string& key, std::uint64_t delta );
    std::uint64_t get( const std::string& key ) const;
    bool has( const std::string& key ) const;

    const std::vector< std::pair< std::string, std::uint64_t > >& entries() const { return entries_; }
    std::string to_key_values() const;

private:
    std::vector< std::pair< std::string, std::uint64_t > > entries_;
};

enum class VerdictKind : std::uint8_t
{
    bug,
    converged,
    budget_exhausted,
};

std::string_view to_string( VerdictKind kind );

struct Verdict
{
    VerdictKind kind = VerdictKind::budget_exhausted;
    std::optional< Counterexample > counterexample;
    RunStats stats;
    double seconds = 0;
};

// AIGER witness: "1", "b<index>", the initial state, one input line per
// state of the trace, ".".
std::string write_witness( const Counterexample& cex, std::size_t property_index );

// Replays a witness from reset; true iff the bad output fires at the final
// frame.
TraceCheck validate_witness( const AigModel& model, std::string_view witness );

} // namespace tapseq
