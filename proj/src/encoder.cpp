#include "tapseq/encoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace tapseq
{

namespace
{

// Value of a circuit signal during encoding: a constant or a CNF literal.
struct signal
{
    enum class kind : std::uint8_t { constant, literal } k = kind::constant;
    bool value = false;
    Lit lit;

    static signal constant( bool v ) { return { kind::constant, v, {} }; }
    static signal of( Lit l ) { return { kind::literal, false, l }; }

    bool is_const() const { return k == kind::constant; }
    bool is( bool v ) const { return is_const() && value == v; }

    signal operator~() const { return is_const() ? constant( !value ) : of( ~lit ); }
};

// Encodes one time-frame copy of the combinational logic. Gates are clausified
// lazily, only for the cones that are actually requested.
class frame_encoder
{
public:
    frame_encoder( const AigModel& model, Cnf& cnf )
        : model_( model ), cnf_( cnf ), values_( model.max_var + 1 ), known_( model.max_var + 1, false ),
          gate_of_( model.max_var + 1, -1 )
    {
        values_[ 0 ] = signal::constant( false );
        known_[ 0 ] = true;
        for ( std::size_t i = 0; i < model.and_gates.size(); ++i )
            gate_of_[ aig_var( model.and_gates[ i ].lhs ) ] = static_cast< std::int64_t >( i );
    }

    void set_latch( std::size_t i, signal s ) { assign( model_.latches[ i ].lit, s ); }
    void set_input( std::size_t i, signal s ) { assign( model_.inputs[ i ], s ); }

    signal encode( aig_lit lit )
    {
        const auto var = aig_var( lit );
        if ( !known_[ var ] )
        {
            if ( gate_of_[ var ] < 0 )
                throw std::logic_error( "frame leaf " + std::to_string( var ) + " has no value" );
            encode_cone( var );
        }
        return aig_sign( lit ) ? ~values_[ var ] : values_[ var ];
    }

private:
    void assign( aig_lit lit, signal s )
    {
        values_[ aig_var( lit ) ] = s;
        known_[ aig_var( lit ) ] = true;
    }

    void encode_cone( std::uint32_t root )
    {
        std::vector< std::size_t > cone;
        std::vector< std::uint32_t > stack{ root };
        std::vector< bool > seen( known_.size(), false );
        seen[ root ] = true;
        while ( !stack.empty() )
        {
            const auto var = stack.back();
            stack.pop_back();
            const auto g = static_cast< std::size_t >( gate_of_[ var ] );
            cone.push_back( g );
            for ( aig_lit operand : { model_.and_gates[ g ].rhs0, model_.and_gates[ g ].rhs1 } )
            {
                const auto v = aig_var( operand );
                if ( known_[ v ] || seen[ v ] )
                    continue;
                if ( gate_of_[ v ] < 0 )
                    throw std::logic_error( "frame leaf " + std::to_string( v ) + " has no value" );
                seen[ v ] = true;
                stack.push_back( v );
            }
        }
        std::sort( cone.begin(), cone.end() );
        for ( auto g : cone )
            encode_gate( model_.and_gates[ g ] );
    }

    void encode_gate( const aig_and& gate )
    {
        const signal a = encode( gate.rhs0 );
        const signal b = encode( gate.rhs1 );
        signal out;
        if ( a.is( false ) || b.is( false ) )
            out = signal::constant( false );
        else if ( a.is( true ) )
            out = b;
        else if ( b.is( true ) )
            out = a;
        else if ( a.lit == b.lit )
            out = a;
        else if ( a.lit == ~b.lit )
            out = signal::constant( false );
        else
        {
            const Var z = cnf_.new_var( VarRole::internal );
            cnf_.add( Clause{ Lit::neg( z ), a.lit } );
            cnf_.add( Clause{ Lit::neg( z ), b.lit } );
            cnf_.add( Clause{ Lit::pos( z ), ~a.lit, ~b.lit } );
            out = signal::of( Lit::pos( z ) );
        }
        assign( gate.lhs, out );
    }

    const AigModel& model_;
    Cnf& cnf_;
    std::vector< signal > values_;
    std::vector< bool > known_;
    std::vector< std::int64_t > gate_of_;
};

// Adds clauses forcing var == s.
void equate( Cnf& cnf, Var var, signal s )
{
    if ( s.is_const() )
    {
        cnf.add( Clause{ Lit( var, !s.value ) } );
        return;
    }
    cnf.add( Clause{ Lit::neg( var ), s.lit } );
    cnf.add( Clause{ Lit::pos( var ), ~s.lit } );
}

// Adds the requirement that s is true. A constant-false s yields the empty
// clause.
void require( Cnf& cnf, signal s )
{
    if ( s.is( true ) )
        return;
    if ( s.is( false ) )
    {
        cnf.add( Clause{} );
        return;
    }
    cnf.add( Clause{ s.lit } );
}

std::vector< Var > fresh_vars( Cnf& cnf, std::size_t count, VarRole role )
{
    std::vector< Var > vars;
    vars.reserve( count );
    for ( std::size_t i = 0; i < count; ++i )
        vars.push_back( cnf.new_var( role ) );
    return vars;
}

void check_width( const AigModel& model, const State& state )
{
    if ( state.size() != model.num_latches() )
        throw std::invalid_argument( "state width " + std::to_string( state.size() ) + " does not match " +
                                     std::to_string( model.num_latches() ) + " latches" );
}

// Next-state copy: S' variables equated to the latch next-state functions.
void encode_next_state( const AigModel& model, frame_encoder& frame, StepFormula& out )
{
    out.map.next_state_vars = fresh_vars( out.cnf, model.num_latches(), VarRole::next_state );
    for ( std::size_t i = 0; i < model.num_latches(); ++i )
        equate( out.cnf, out.map.next_state_vars[ i ], frame.encode( model.latches[ i ].next ) );
}

} // namespace

bool VarMap::is_present_state( Var v ) const
{
    return std::find( present_state_vars.begin(), present_state_vars.end(), v ) != present_state_vars.end();
}

std::size_t VarMap::latch_of( Var v ) const
{
    const auto it = std::find( present_state_vars.begin(), present_state_vars.end(), v );
    if ( it == present_state_vars.end() )
        throw std::invalid_argument( "variable " + std::to_string( v ) + " is not a present-state variable" );
    return static_cast< std::size_t >( it - present_state_vars.begin() );
}

StepFormula encode_step_formula( const AigModel& model, const State& state, EncodeOptions options )
{
    check_width( model, state );
    StepFormula out;
    out.map.present_state = state;
    out.map.input_vars = fresh_vars( out.cnf, model.num_inputs(), VarRole::input );

    frame_encoder current( model, out.cnf );
    for ( std::size_t i = 0; i < model.num_inputs(); ++i )
        current.set_input( i, signal::of( Lit::pos( out.map.input_vars[ i ] ) ) );
    if ( options.substitute_state )
    {
        for ( std::size_t i = 0; i < model.num_latches(); ++i )
            current.set_latch( i, signal::constant( state[ i ] ) );
    }
    else
    {
        out.map.present_state_vars = fresh_vars( out.cnf, model.num_latches(), VarRole::present_state );
        for ( std::size_t i = 0; i < model.num_latches(); ++i )
        {
            const Var s = out.map.present_state_vars[ i ];
            out.cnf.add( Clause{ Lit( s, !state[ i ] ) } );
            current.set_latch( i, signal::of( Lit::pos( s ) ) );
        }
    }
    encode_next_state( model, current, out );

    out.map.bad_input_vars = fresh_vars( out.cnf, model.num_inputs(), VarRole::input );
    frame_encoder next( model, out.cnf );
    for ( std::size_t i = 0; i < model.num_inputs(); ++i )
        next.set_input( i, signal::of( Lit::pos( out.map.bad_input_vars[ i ] ) ) );
    for ( std::size_t i = 0; i < model.num_latches(); ++i )
        next.set_latch( i, signal::of( Lit::pos( out.map.next_state_vars[ i ] ) ) );
    require( out.cnf, next.encode( model.bad ) );
    return out;
}

StepFormula encode_bad_check( const AigModel& model, const State& state )
{
    check_width( model, state );
    StepFormula out;
    out.map.present_state = state;
    out.map.input_vars = fresh_vars( out.cnf, model.num_inputs(), VarRole::input );
    frame_encoder frame( model, out.cnf );
    for ( std::size_t i = 0; i < model.num_inputs(); ++i )
        frame.set_input( i, signal::of( Lit::pos( out.map.input_vars[ i ] ) ) );
    for ( std::size_t i = 0; i < model.num_latches(); ++i )
        frame.set_latch( i, signal::constant( state[ i ] ) );
    require( out.cnf, frame.encode( model.bad ) );
    return out;
}

StepFormula encode_transition( const AigModel& model )
{
    StepFormula out;
    out.map.input_vars = fresh_vars( out.cnf, model.num_inputs(), VarRole::input );
    out.map.present_state_vars = fresh_vars( out.cnf, model.num_latches(), VarRole::present_state );
    frame_encoder frame( model, out.cnf );
    for ( std::size_t i = 0; i < model.num_inputs(); ++i )
        frame.set_input( i, signal::of( Lit::pos( out.map.input_vars[ i ] ) ) );
    for ( std::size_t i = 0; i < model.num_latches(); ++i )
        frame.set_latch( i, signal::of( Lit::pos( out.map.present_state_vars[ i ] ) ) );
    encode_next_state( model, frame, out );
    return out;
}

DecodedPoint decode_model( const Point& point, const VarMap& map )
{
    auto project = [ &point ]( const std::vector< Var >& vars, auto& out ) {
        for ( std::size_t i = 0; i < vars.size(); ++i )
        {
            if ( vars[ i ] > point.var_count() )
                throw std::invalid_argument( "point does not assign variable " + std::to_string( vars[ i ] ) );
            out.set( i, point.value( vars[ i ] ) );
        }
    };
    DecodedPoint out;
    if ( map.present_state_vars.empty() )
    {
        out.state = map.present_state;
    }
    else
    {
        out.state = State( map.present_state_vars.size() );
        project( map.present_state_vars, out.state );
    }
    out.next = State( map.next_state_vars.size() );
    project( map.next_state_vars, out.next );
    out.inputs = InputVector( map.input_vars.size() );
    project( map.input_vars, out.inputs );
    out.bad_inputs = InputVector( map.bad_input_vars.size() );
    project( map.bad_input_vars, out.bad_inputs );
    return out;
}

Unrolling encode_unrolled( const AigModel& model, const State& init, std::size_t depth )
{
    check_width( model, init );
    Unrolling out;
    std::vector< signal > latches;
    for ( std::size_t i = 0; i < model.num_latches(); ++i )
        latches.push_back( signal::constant( init[ i ] ) );

    for ( std::size_t frame_index = 0;; ++frame_index )
    {
        auto inputs = fresh_vars( out.cnf, model.num_inputs(), VarRole::input );
        frame_encoder frame( model, out.cnf );
        for ( std::size_t i = 0; i < model.num_inputs(); ++i )
            frame.set_input( i, signal::of( Lit::pos( inputs[ i ] ) ) );
        for ( std::size_t i = 0; i < model.num_latches(); ++i )
            frame.set_latch( i, latches[ i ] );
        out.frame_inputs.push_back( std::move( inputs ) );
        if ( frame_index == depth )
        {
            require( out.cnf, frame.encode( model.bad ) );
            break;
        }
        std::vector< signal > next;
        next.reserve( model.num_latches() );
        for ( std::size_t i = 0; i < model.num_latches(); ++i )
            next.push_back( frame.encode( model.latches[ i ].next ) );
        latches = std::move( next );
    }
    return out;
}

} // namespace tapseq
