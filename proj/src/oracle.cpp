#include "tapseq/oracle.hpp"

#include "tapseq/encoder.hpp"
#include "tapseq/sat.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace tapseq
{

namespace
{

constexpr std::size_t max_enumerated_inputs = 12;

InputVector input_from_mask( std::size_t width, std::uint64_t mask )
{
    InputVector x( width );
    for ( std::size_t i = 0; i < width; ++i )
        x.set( i, ( ( mask >> i ) & 1u ) != 0 );
    return x;
}

struct step_info
{
    std::optional< InputVector > bad_input;
    std::vector< std::pair< State, InputVector > > successors;
};

step_info expand_by_enumeration( const AigModel& model, const State& s )
{
    step_info info;
    const std::uint64_t count = std::uint64_t{ 1 } << model.num_inputs();
    for ( std::uint64_t mask = 0; mask < count; ++mask )
    {
        const auto x = input_from_mask( model.num_inputs(), mask );
        if ( !info.bad_input && eval_bad( model, s, x ) )
            info.bad_input = x;
        info.successors.emplace_back( simulate_step( model, s, x ), x );
    }
    return info;
}

step_info expand_by_sat( const AigModel& model, const State& s )
{
    step_info info;
    SolveOptions options;
    options.log_proof = false;

    const auto bad = encode_bad_check( model, s );
    if ( const auto r = solve( bad.cnf, options ); is_sat( r ) )
        info.bad_input = decode_model( std::get< Point >( r ), bad.map ).inputs;

    auto transition = encode_transition( model );
    std::vector< Lit > assumptions;
    for ( std::size_t i = 0; i < model.num_latches(); ++i )
        assumptions.push_back( Lit( transition.map.present_state_vars[ i ], !s[ i ] ) );
    SavedPhasePolicy policy;
    for ( ;; )
    {
        const auto r = solve( transition.cnf, assumptions, policy, options );
        if ( !is_sat( r ) )
            break;
        const auto decoded = decode_model( std::get< Point >( r ), transition.map );
        std::vector< Lit > block;
        for ( std::size_t i = 0; i < model.num_latches(); ++i )
            block.push_back( Lit( transition.map.next_state_vars[ i ], decoded.next[ i ] ) );
        info.successors.emplace_back( decoded.next, decoded.inputs );
        if ( block.empty() )
            break;
        transition.cnf.add( Clause( std::move( block ) ) );
    }
    return info;
}

} // namespace

OracleResult explicit_oracle( const AigModel& model, std::size_t max_states )
{
    struct node
    {
        std::optional< State > parent;
        InputVector input;
        std::size_t depth = 0;
    };

    OracleResult result;
    const State init = initial_state( model );
    std::unordered_map< State, node > seen;
    std::deque< State > frontier{ init };
    seen.emplace( init, node{} );
    const bool enumerate = model.num_inputs() <= max_enumerated_inputs;

    while ( !frontier.empty() )
    {
        const State s = frontier.front();
        frontier.pop_front();
        const std::size_t depth = seen.at( s ).depth;
        auto info = enumerate ? expand_by_enumeration( model, s ) : expand_by_sat( model, s );

        if ( info.bad_input )
        {
            Counterexample cex;
            for ( std::optional< State > at = s; at; at = seen.at( *at ).parent )
            {
                cex.states.push_back( *at );
                if ( seen.at( *at ).parent )
                    cex.inputs.push_back( seen.at( *at ).input );
            }
            std::reverse( cex.states.begin(), cex.states.end() );
            std::reverse( cex.inputs.begin(), cex.inputs.end() );
            cex.final_bad_input = *info.bad_input;
            result.verdict = OracleVerdict::reachable;
            result.depth = depth;
            result.states_explored = seen.size();
            result.counterexample = std::move( cex );
            return result;
        }

        for ( auto& [ next, x ] : info.successors )
        {
            if ( seen.count( next ) != 0 )
                continue;
            if ( seen.size() >= max_states )
            {
                result.verdict = OracleVerdict::inconclusive;
                result.states_explored = seen.size();
                return result;
            }
            seen.emplace( next, node{ s, x, depth + 1 } );
            frontier.push_back( next );
        }
    }
    result.verdict = OracleVerdict::unreachable;
    result.states_explored = seen.size();
    return result;
}

} // namespace tapseq
