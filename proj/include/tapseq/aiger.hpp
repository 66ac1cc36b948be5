#pragma once

#include "tapseq/bits.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tapseq
{

// AIGER literal: 2 * variable + sign. Literal 0 is constant false, 1 is
// constant true.
using aig_lit = std::uint32_t;

constexpr aig_lit aig_false = 0;
constexpr aig_lit aig_true = 1;

constexpr std::uint32_t aig_var( aig_lit lit ) { return lit >> 1; }
constexpr bool aig_sign( aig_lit lit ) { return ( lit & 1u ) != 0; }
constexpr aig_lit aig_not( aig_lit lit ) { return lit ^ 1u; }

enum class latch_reset : std::uint8_t
{
    zero,
    one,
    uninitialized, // reset literal equal to the latch itself
};

struct aig_latch
{
    aig_lit lit;
    aig_lit next;
    latch_reset reset = latch_reset::zero;

    friend bool operator==( const aig_latch&, const aig_latch& ) = default;
};

struct aig_and
{
    aig_lit lhs;
    aig_lit rhs0;
    aig_lit rhs1;

    friend bool operator==( const aig_and&, const aig_and& ) = default;
};

// Parsed and-inverter graph. Immutable after parsing; and-gates are stored in
// topological order so a single forward pass evaluates them.
struct AigModel
{
    std::uint32_t max_var = 0;
    std::vector< aig_lit > inputs;
    std::vector< aig_latch > latches;
    std::vector< aig_lit > outputs;
    std::vector< aig_lit > bad_states;
    std::vector< aig_and > and_gates;

    // The property being checked: bad_states[i] if the file declares any bad
    // states, otherwise outputs[i].
    aig_lit bad = aig_false;
    std::size_t property_index = 0;

    std::size_t num_inputs() const { return inputs.size(); }
    std::size_t num_latches() const { return latches.size(); }

    friend bool operator==( const AigModel&, const AigModel& ) = default;
};

// Parse failure. The offset points at the byte where the problem was found.
class aiger_error : public std::runtime_error
{
public:
    aiger_error( std::size_t offset, const std::string& message )
        : std::runtime_error( "offset " + std::to_string( offset ) + ": " + message ),
          offset_( offset )
    {
    }

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// The model is well-formed but uses a feature the engines do not support.
class unsupported_model : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Parses ASCII ("aag") or binary ("aig") AIGER 1.0 / 1.9. Symbol tables and
// comments are skipped. Constraint, justice and fairness sections are
// rejected.
AigModel parse_aiger( std::string_view bytes, std::size_t property_index = 0 );

AigModel read_aiger_file( const std::string& path, std::size_t property_index = 0 );

// Writes the model back as ASCII AIGER (1.9 header when bad states or
// non-zero resets are present).
std::string write_aiger_ascii( const AigModel& model );

// Binary AIGER; requires the canonical variable layout (inputs, then latches,
// then gates, numbered consecutively).
std::string write_aiger_binary( const AigModel& model );

State initial_state( const AigModel& model );

State simulate_step( const AigModel& model, const State& state, const InputVector& inputs );

bool eval_bad( const AigModel& model, const State& state, const InputVector& inputs );

// Full evaluation of every AIGER variable under (state, inputs); index is the
// variable number.
std::vector< bool > evaluate( const AigModel& model, const State& state, const InputVector& inputs );

} // namespace tapseq
