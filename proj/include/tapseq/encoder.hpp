#pragma once

#include "tapseq/aiger.hpp"
#include "tapseq/cnf.hpp"

#include <vector>

namespace tapseq
{

// Links CNF variables back to circuit signals. Vectors are indexed by latch
// or input position; empty vectors mean the formula has no such copy.
struct VarMap
{
    // Constant present state substituted into the formula.
    State present_state;
    // Present-state variables, only when the state is kept symbolic.
    std::vector< Var > present_state_vars;
    std::vector< Var > next_state_vars;
    // Inputs of the transition (or of the bad check for encode_bad_check).
    std::vector< Var > input_vars;
    // Second input copy driving the bad output at the next state.
    std::vector< Var > bad_input_vars;

    bool is_present_state( Var v ) const;
    // Latch position of a present-state variable.
    std::size_t latch_of( Var v ) const;
};

struct StepFormula
{
    Cnf cnf;
    VarMap map;
};

struct EncodeOptions
{
    // Substitute the present state as constants (the default). When false,
    // present-state variables stay in the formula, pinned by unit clauses.
    bool substitute_state = true;
};

// F(s) = T(s, S', Z) & bad(S', X2). Satisfiable iff some successor of s is bad.
StepFormula encode_step_formula( const AigModel& model, const State& state, EncodeOptions options = {} );

// Satisfiable iff bad(s, x) holds for some input x.
StepFormula encode_bad_check( const AigModel& model, const State& state );

// T(S, X, S', Z) with symbolic present state and no property.
StepFormula encode_transition( const AigModel& model );

struct DecodedPoint
{
    State state;
    State next;
    InputVector inputs;
    InputVector bad_inputs;
};

// Projects a point onto the state and input copies of the formula.
DecodedPoint decode_model( const Point& point, const VarMap& map );

struct Unrolling
{
    Cnf cnf;
    // frame_inputs[i] are the input variables of frame i, for i = 0..depth;
    // the last frame's inputs drive the bad output.
    std::vector< std::vector< Var > > frame_inputs;
};

// Initial state as constants, depth copies of T, bad at the final frame.
Unrolling encode_unrolled( const AigModel& model, const State& init, std::size_t depth );

} // namespace tapseq
