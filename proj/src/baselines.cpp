#include "tapseq/baselines.hpp"

#include "tapseq/encoder.hpp"
#include "tapseq/sat.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

namespace tapseq
{

namespace
{

double seconds_since( std::chrono::steady_clock::time_point start )
{
    return std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
}

void require_valid( const AigModel& model, const Counterexample& cex )
{
    if ( const auto check = validate_counterexample( model, cex ); !check )
        throw std::logic_error( "baseline produced an invalid counterexample: " + check.diagnostic );
}

} // namespace

Verdict run_rand( const AigModel& model, const RandConfig& config )
{
    if ( config.max_tries == 0 || config.max_length == 0 )
        throw std::invalid_argument( "max_tries and max_length must be positive" );
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng( config.seed );
    const State init = initial_state( model );

    Verdict verdict;
    verdict.stats.set( "steps", 0 );
    verdict.stats.set( "tries", 0 );

    Counterexample walk;
    walk.states.push_back( init );
    std::uint64_t tries = 0;
    std::uint64_t length = 0;
    std::uint64_t steps = 0;

    auto finish = [ & ]( VerdictKind kind ) {
        verdict.kind = kind;
        verdict.stats.set( "steps", steps );
        verdict.stats.set( "tries", tries );
        verdict.seconds = seconds_since( start );
        return verdict;
    };

    while ( tries < config.max_tries )
    {
        if ( length == config.max_length )
        {
            walk.states.assign( 1, init );
            walk.inputs.clear();
            length = 0;
            ++tries;
            continue;
        }
        if ( config.time_limit_s > 0 && ( steps & 0x3ffu ) == 0 && seconds_since( start ) >= config.time_limit_s )
            return finish( VerdictKind::budget_exhausted );

        InputVector x( model.num_inputs() );
        for ( std::size_t i = 0; i < x.size(); ++i )
            x.set( i, ( rng() & 1u ) != 0 );
        ++steps;

        const State& curr = walk.states.back();
        if ( eval_bad( model, curr, x ) )
        {
            walk.final_bad_input = x;
            require_valid( model, walk );
            verdict.stats.set( "cex_length", walk.length() );
            verdict.counterexample = std::move( walk );
            return finish( VerdictKind::bug );
        }
        State next = simulate_step( model, curr, x );
        walk.inputs.push_back( std::move( x ) );
        walk.states.push_back( std::move( next ) );
        ++length;
    }
    return finish( VerdictKind::budget_exhausted );
}

Verdict run_bmc( const AigModel& model, const BmcConfig& config )
{
    if ( config.max_depth < 1 )
        throw std::invalid_argument( "max_depth must be at least 1" );
    const auto start = std::chrono::steady_clock::now();
    const State init = initial_state( model );

    Verdict verdict;
    verdict.stats.set( "depths_refuted", 0 );
    verdict.stats.set( "sat_calls", 0 );
    auto finish = [ & ]( VerdictKind kind ) {
        verdict.kind = kind;
        verdict.seconds = seconds_since( start );
        return verdict;
    };

    SavedPhasePolicy policy;
    SolveOptions options;
    options.log_proof = false;
    options.conflict_limit = config.conflict_limit;

    for ( std::size_t depth = 0; depth <= config.max_depth; ++depth )
    {
        if ( config.time_limit_s > 0 && seconds_since( start ) >= config.time_limit_s )
            return finish( VerdictKind::budget_exhausted );
        const auto unrolled = encode_unrolled( model, init, depth );
        const auto result = solve( unrolled.cnf, {}, policy, options );
        verdict.stats.add( "sat_calls", 1 );
        if ( is_unknown( result ) )
            return finish( VerdictKind::budget_exhausted );
        if ( is_unsat( result ) )
        {
            verdict.stats.set( "depths_refuted", depth + 1 );
            continue;
        }

        const auto& point = std::get< Point >( result );
        auto frame_input = [ & ]( std::size_t frame ) {
            InputVector x( model.num_inputs() );
            for ( std::size_t i = 0; i < x.size(); ++i )
                x.set( i, point.value( unrolled.frame_inputs[ frame ][ i ] ) );
            return x;
        };
        Counterexample cex;
        cex.states.push_back( init );
        for ( std::size_t frame = 0; frame < depth; ++frame )
        {
            cex.inputs.push_back( frame_input( frame ) );
            cex.states.push_back( simulate_step( model, cex.states.back(), cex.inputs.back() ) );
        }
        cex.final_bad_input = frame_input( depth );
        require_valid( model, cex );
        verdict.stats.set( "cex_length", cex.length() );
        verdict.counterexample = std::move( cex );
        return finish( VerdictKind::bug );
    }
    return finish( VerdictKind::budget_exhausted );
}

} // namespace tapseq
