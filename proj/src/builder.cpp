#include "tapseq/builder.hpp"

#include <algorithm>
#include <stdexcept>

namespace tapseq
{

aig_lit AigBuilder::add( node n )
{
    nodes_.push_back( n );
    return static_cast< aig_lit >( 2 * nodes_.size() );
}

aig_lit AigBuilder::input()
{
    return add( { kind::input } );
}

aig_lit AigBuilder::latch( latch_reset reset )
{
    node n{ kind::latch };
    n.reset = reset;
    return add( n );
}

void AigBuilder::set_next( aig_lit latch, aig_lit next )
{
    const auto index = aig_var( latch );
    if ( aig_sign( latch ) || index == 0 || index > nodes_.size() || nodes_[ index - 1 ].k != kind::latch )
        throw std::invalid_argument( "set_next expects a latch literal" );
    nodes_[ index - 1 ].a = next;
    nodes_[ index - 1 ].next_set = true;
}

aig_lit AigBuilder::land( aig_lit a, aig_lit b )
{
    if ( a == aig_false || b == aig_false || a == aig_not( b ) )
        return aig_false;
    if ( a == aig_true || a == b )
        return b;
    if ( b == aig_true )
        return a;
    node n{ kind::gate };
    n.a = a;
    n.b = b;
    return add( n );
}

aig_lit AigBuilder::all( std::span< const aig_lit > lits )
{
    aig_lit acc = aig_true;
    for ( auto l : lits )
        acc = land( acc, l );
    return acc;
}

aig_lit AigBuilder::any( std::span< const aig_lit > lits )
{
    aig_lit acc = aig_false;
    for ( auto l : lits )
        acc = lor( acc, l );
    return acc;
}

aig_lit AigBuilder::matches( std::span< const aig_lit > lits, const std::vector< bool >& bits )
{
    if ( lits.size() != bits.size() )
        throw std::invalid_argument( "matches: width mismatch" );
    aig_lit acc = aig_true;
    for ( std::size_t i = 0; i < lits.size(); ++i )
        acc = land( acc, bits[ i ] ? lits[ i ] : aig_not( lits[ i ] ) );
    return acc;
}

AigModel AigBuilder::build() const
{
    std::vector< std::uint32_t > renumber( nodes_.size() + 1, 0 );
    std::uint32_t next_var = 0;
    for ( kind k : { kind::input, kind::latch, kind::gate } )
        for ( std::size_t i = 0; i < nodes_.size(); ++i )
            if ( nodes_[ i ].k == k )
                renumber[ i + 1 ] = ++next_var;

    auto map = [ & ]( aig_lit lit ) { return 2 * renumber[ aig_var( lit ) ] + ( lit & 1u ); };

    AigModel model;
    model.max_var = next_var;
    for ( std::size_t i = 0; i < nodes_.size(); ++i )
    {
        const auto& n = nodes_[ i ];
        const aig_lit self = 2 * renumber[ i + 1 ];
        switch ( n.k )
        {
        case kind::input: model.inputs.push_back( self ); break;
        case kind::latch:
            if ( !n.next_set )
                throw std::logic_error( "latch without next-state function" );
            model.latches.push_back( { self, map( n.a ), n.reset } );
            break;
        case kind::gate:
        {
            const aig_lit x = map( n.a );
            const aig_lit y = map( n.b );
            model.and_gates.push_back( { self, std::max( x, y ), std::min( x, y ) } );
            break;
        }
        }
    }
    for ( auto l : outputs_ )
        model.outputs.push_back( map( l ) );
    for ( auto l : bad_ )
        model.bad_states.push_back( map( l ) );
    if ( model.outputs.empty() && model.bad_states.empty() )
        throw std::logic_error( "model needs an output or a bad-state property" );
    model.bad = model.bad_states.empty() ? model.outputs.front() : model.bad_states.front();
    return model;
}

} // namespace tapseq
