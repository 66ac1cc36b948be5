#include "tapseq/trace.hpp"

#include <algorithm>
#include <sstream>

namespace tapseq
{

TraceCheck validate_counterexample( const AigModel& model, const Counterexample& cex )
{
    auto fail = []( std::string message ) { return TraceCheck{ false, std::move( message ) }; };
    if ( cex.states.empty() )
        return fail( "empty trace" );
    if ( cex.inputs.size() + 1 != cex.states.size() )
        return fail( "trace of " + std::to_string( cex.states.size() ) + " states carries " +
                     std::to_string( cex.inputs.size() ) + " transition inputs" );
    const State init = initial_state( model );
    if ( cex.states.front() != init )
        return fail( "trace does not start in the initial state" );
    for ( std::size_t i = 0; i < cex.inputs.size(); ++i )
    {
        if ( cex.inputs[ i ].size() != model.num_inputs() )
            return fail( "input " + std::to_string( i ) + " has the wrong width" );
        if ( simulate_step( model, cex.states[ i ], cex.inputs[ i ] ) != cex.states[ i + 1 ] )
            return fail( "transition " + std::to_string( i ) + " does not follow the transition relation" );
    }
    if ( cex.final_bad_input.size() != model.num_inputs() )
        return fail( "final input has the wrong width" );
    if ( !eval_bad( model, cex.states.back(), cex.final_bad_input ) )
        return fail( "final state does not raise the bad output" );
    return { true, {} };
}

void RunStats::set( const std::string& key, std::uint64_t value )
{
    const auto it = std::find_if( entries_.begin(), entries_.end(), [ & ]( const auto& e ) { return e.first == key; } );
    if ( it == entries_.end() )
        entries_.emplace_back( key, value );
    else
        it->second = value;
}

void RunStats::add( const std::string& key, std::uint64_t delta )
{
    set( key, get( key ) + delta );
}

std::uint64_t RunStats::get( const std::string& key ) const
{
    const auto it = std::find_if( entries_.begin(), entries_.end(), [ & ]( const auto& e ) { return e.first == key; } );
    return it == entries_.end() ? 0 : it->second;
}

bool RunStats::has( const std::string& key ) const
{
    return std::any_of( entries_.begin(), entries_.end(), [ & ]( const auto& e ) { return e.first == key; } );
}

std::string RunStats::to_key_values() const
{
    std::ostringstream out;
    for ( const auto& [ key, value ] : entries_ )
        out << key << '=' << value << '\n';
    return out.str();
}

std::string_view to_string( VerdictKind kind )
{
    switch ( kind )
    {
    case VerdictKind::bug: return "bug";
    case VerdictKind::converged: return "converged";
    case VerdictKind::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

std::string write_witness( const Counterexample& cex, std::size_t property_index )
{
    std::ostringstream out;
    out << "1\n";
    out << 'b' << property_index << '\n';
    out << cex.states.front().to_string() << '\n';
    for ( const auto& x : cex.inputs )
        out << x.to_string() << '\n';
    out << cex.final_bad_input.to_string() << '\n';
    out << ".\n";
    return out.str();
}

TraceCheck validate_witness( const AigModel& model, std::string_view witness )
{
    auto fail = []( std::string message ) { return TraceCheck{ false, std::move( message ) }; };

    std::vector< std::string > lines;
    {
        std::istringstream in{ std::string( witness ) };
        std::string line;
        while ( std::getline( in, line ) )
        {
            if ( !line.empty() && line.back() == '\r' )
                line.pop_back();
            if ( !line.empty() && line[ 0 ] == 'c' && lines.empty() )
                continue;
            lines.push_back( line );
        }
    }
    if ( lines.size() < 4 )
        return fail( "witness too short" );
    if ( lines[ 0 ] != "1" )
        return fail( "witness status line must be '1'" );
    if ( lines[ 1 ] != "b" + std::to_string( model.property_index ) )
        return fail( "witness names property '" + lines[ 1 ] + "' but the model checks b" +
                     std::to_string( model.property_index ) );

    const auto dot = std::find( lines.begin() + 2, lines.end(), "." );
    if ( dot == lines.end() )
        return fail( "witness lacks the terminating '.' line" );
    if ( dot - ( lines.begin() + 2 ) < 2 )
        return fail( "witness has no input frames" );

    State state;
    try
    {
        state = State::from_string( lines[ 2 ] );
    }
    catch ( const std::invalid_argument& )
    {
        return fail( "initial-state line is not a bit string" );
    }
    if ( state.size() != model.num_latches() )
        return fail( "initial-state line has " + std::to_string( state.size() ) + " bits, model has " +
                     std::to_string( model.num_latches() ) + " latches" );
    if ( state != initial_state( model ) )
        return fail( "initial-state line disagrees with the latch reset values" );

    for ( auto it = lines.begin() + 3; it != dot; ++it )
    {
        InputVector x;
        try
        {
            x = InputVector::from_string( *it );
        }
        catch ( const std::invalid_argument& )
        {
            return fail( "input line '" + *it + "' is not a bit string" );
        }
        if ( x.size() != model.num_inputs() )
            return fail( "input line has " + std::to_string( x.size() ) + " bits, model has " +
                         std::to_string( model.num_inputs() ) + " inputs" );
        if ( it + 1 == dot )
            return eval_bad( model, state, x ) ? TraceCheck{ true, {} }
                                               : fail( "bad output does not fire at the final frame" );
        state = simulate_step( model, state, x );
    }
    return fail( "unreachable" );
}

} // namespace tapseq
