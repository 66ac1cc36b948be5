#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tapseq::testing
{

std::optional< Point > truth_table_model( const Cnf& f )
{
    const Var n = f.var_count();
    if ( n > 24 )
        throw std::invalid_argument( "truth table limited to 24 variables" );
    const std::uint64_t total = std::uint64_t{ 1 } << n;
    const std::uint64_t all = total - 1;
    std::vector< bool > falsified( total, false );
    for ( const auto& c : f.clauses )
    {
        std::uint64_t fixed = 0;
        std::uint64_t pattern = 0;
        for ( auto lit : c )
        {
            const std::uint64_t bit = std::uint64_t{ 1 } << ( lit.var() - 1 );
            fixed |= bit;
            // The clause is false when each literal is false.
            if ( lit.negative() )
                pattern |= bit;
        }
        const std::uint64_t free = all & ~fixed;
        std::uint64_t sub = 0;
        do
        {
            falsified[ pattern | sub ] = true;
            sub = ( sub - free ) & free;
        } while ( sub != 0 );
    }
    for ( std::uint64_t a = 0; a < total; ++a )
    {
        if ( falsified[ a ] )
            continue;
        Point p( n );
        for ( Var v = 1; v <= n; ++v )
            p.set( v, ( ( a >> ( v - 1 ) ) & 1u ) != 0 );
        return p;
    }
    return std::nullopt;
}

namespace
{

Cnf with_vars( Var n )
{
    Cnf f;
    for ( Var v = 1; v <= n; ++v )
        f.new_var( VarRole::internal );
    return f;
}

Clause random_clause( std::mt19937_64& rng, Var n, std::size_t width )
{
    std::vector< Var > vars( n );
    for ( Var v = 1; v <= n; ++v )
        vars[ v - 1 ] = v;
    std::shuffle( vars.begin(), vars.end(), rng );
    std::vector< Lit > lits;
    for ( std::size_t i = 0; i < width; ++i )
        lits.push_back( Lit( vars[ i ], ( rng() & 1u ) != 0 ) );
    return Clause( std::move( lits ) );
}

} // namespace

Cnf random_kcnf( std::mt19937_64& rng, Var n, std::size_t clauses, std::size_t k )
{
    Cnf f = with_vars( n );
    for ( std::size_t i = 0; i < clauses; ++i )
        f.add( random_clause( rng, n, std::min< std::size_t >( k, n ) ) );
    return f;
}

Cnf random_small_cnf( std::mt19937_64& rng, Var n, std::size_t clauses, std::size_t max_width )
{
    Cnf f = with_vars( n );
    std::uniform_int_distribution< std::size_t > width( 1, std::min< std::size_t >( max_width, n ) );
    for ( std::size_t i = 0; i < clauses; ++i )
        f.add( random_clause( rng, n, width( rng ) ) );
    return f;
}

AigModel random_aig( std::mt19937_64& rng, std::size_t inputs, std::size_t latches, std::size_t gates )
{
    AigModel m;
    std::uint32_t var = 0;
    for ( std::size_t i = 0; i < inputs; ++i )
        m.inputs.push_back( 2 * ++var );
    for ( std::size_t i = 0; i < latches; ++i )
        m.latches.push_back( { 2 * ++var, 0, ( rng() & 1u ) ? latch_reset::one : latch_reset::zero } );
    auto pick = [ & ]( std::uint32_t below ) {
        // Any literal of variables 0..below-1, constants included but rare.
        if ( below <= 1 || rng() % 32 == 0 )
            return static_cast< aig_lit >( rng() & 1u );
        std::uniform_int_distribution< std::uint32_t > d( 2, 2 * below - 1 );
        return d( rng );
    };
    for ( std::size_t i = 0; i < gates; ++i )
    {
        const std::uint32_t lhs_var = ++var;
        const aig_lit a = pick( lhs_var );
        const aig_lit b = pick( lhs_var );
        m.and_gates.push_back( { 2 * lhs_var, std::max( a, b ), std::min( a, b ) } );
    }
    m.max_var = var;
    for ( auto& l : m.latches )
        l.next = pick( var + 1 );
    m.outputs.push_back( pick( var + 1 ) );
    m.bad = m.outputs.front();
    return m;
}

State random_state( std::mt19937_64& rng, std::size_t width )
{
    State s( width );
    for ( std::size_t i = 0; i < width; ++i )
        s.set( i, ( rng() & 1u ) != 0 );
    return s;
}

InputVector random_inputs( std::mt19937_64& rng, std::size_t width )
{
    InputVector x( width );
    for ( std::size_t i = 0; i < width; ++i )
        x.set( i, ( rng() & 1u ) != 0 );
    return x;
}

NaiveInterpreter::NaiveInterpreter( const AigModel& model )
    : model_( model ),
      gate_of_( model.max_var + 1, nullptr ),
      input_pos_( model.max_var + 1, -1 ),
      latch_pos_( model.max_var + 1, -1 )
{
    for ( const auto& g : model.and_gates )
        gate_of_[ aig_var( g.lhs ) ] = &g;
    for ( std::size_t i = 0; i < model.inputs.size(); ++i )
        input_pos_[ aig_var( model.inputs[ i ] ) ] = static_cast< int >( i );
    for ( std::size_t i = 0; i < model.latches.size(); ++i )
        latch_pos_[ aig_var( model.latches[ i ].lit ) ] = static_cast< int >( i );
}

bool NaiveInterpreter::value( aig_lit lit, const State& s, const InputVector& x ) const
{
    std::unordered_map< std::uint32_t, bool > memo;
    auto eval = [ & ]( auto&& self, aig_lit l ) -> bool {
        const std::uint32_t v = aig_var( l );
        bool result = false;
        if ( v == 0 )
            result = false;
        else if ( auto it = memo.find( v ); it != memo.end() )
            result = it->second;
        else
        {
            if ( input_pos_[ v ] >= 0 )
                result = x[ static_cast< std::size_t >( input_pos_[ v ] ) ];
            else if ( latch_pos_[ v ] >= 0 )
                result = s[ static_cast< std::size_t >( latch_pos_[ v ] ) ];
            else if ( gate_of_[ v ] )
                result = self( self, gate_of_[ v ]->rhs0 ) && self( self, gate_of_[ v ]->rhs1 );
            else
                throw std::logic_error( "undefined AIG variable" );
            memo.emplace( v, result );
        }
        return result != aig_sign( l );
    };
    return eval( eval, lit );
}

State NaiveInterpreter::next( const State& s, const InputVector& x ) const
{
    State out( model_.latches.size() );
    for ( std::size_t i = 0; i < model_.latches.size(); ++i )
        out.set( i, value( model_.latches[ i ].next, s, x ) );
    return out;
}

bool NaiveInterpreter::bad( const State& s, const InputVector& x ) const
{
    return value( model_.bad, s, x );
}

bool brute_force_legal( const std::vector< Point >& points, const Clause& c1, const Clause& c2, Var v )
{
    for ( const auto& a : points )
    {
        if ( !a.falsifies( c1 ) )
            continue;
        for ( const auto& b : points )
        {
            if ( !b.falsifies( c2 ) || a.var_count() != b.var_count() )
                continue;
            bool only_v = a.value( v ) != b.value( v );
            for ( Var u = 1; only_v && u <= a.var_count(); ++u )
                if ( u != v && a.value( u ) != b.value( u ) )
                    only_v = false;
            if ( only_v )
                return true;
        }
    }
    return false;
}

std::vector< Point > all_points( Var n )
{
    if ( n > 20 )
        throw std::invalid_argument( "all_points limited to 20 variables" );
    std::vector< Point > out;
    for ( std::uint64_t a = 0; a < ( std::uint64_t{ 1 } << n ); ++a )
    {
        Point p( n );
        for ( Var v = 1; v <= n; ++v )
            p.set( v, ( ( a >> ( v - 1 ) ) & 1u ) != 0 );
        out.push_back( std::move( p ) );
    }
    return out;
}

bool classify_boundary( const Cnf& f, const Point& p, Var v )
{
    bool falsifies_some = false;
    for ( const auto& c : f.clauses )
    {
        bool sat = false;
        bool mentions_v = false;
        for ( auto lit : c )
        {
            sat = sat || p.value( lit.var() ) != lit.negative();
            mentions_v = mentions_v || lit.var() == v;
        }
        if ( sat )
            continue;
        if ( !mentions_v )
            return false;
        falsifies_some = true;
    }
    return falsifies_some;
}

} // namespace tapseq::testing
