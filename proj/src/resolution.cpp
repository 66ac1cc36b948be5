#include "tapseq/resolution.hpp"

#include <sstream>

namespace tapseq
{

Clause resolve( const Clause& c1, const Clause& c2, Var v )
{
    const auto l1 = c1.find( v );
    const auto l2 = c2.find( v );
    if ( !l1 || !l2 || *l1 != ~*l2 )
        throw resolution_error( "clauses " + c1.to_string() + " and " + c2.to_string() +
                                " are not resolvable on " + std::to_string( v ) );

    std::vector< Lit > out;
    out.reserve( c1.size() + c2.size() );
    auto a = c1.begin();
    auto b = c2.begin();
    while ( a != c1.end() || b != c2.end() )
    {
        Lit next;
        if ( b == c2.end() || ( a != c1.end() && a->var() < b->var() ) )
            next = *a++;
        else if ( a == c1.end() || b->var() < a->var() )
            next = *b++;
        else
        {
            if ( *a != *b && a->var() != v )
                throw resolution_error( "resolving " + c1.to_string() + " and " + c2.to_string() + " on " +
                                        std::to_string( v ) + " would produce a tautology on " +
                                        std::to_string( a->var() ) );
            next = *a;
            ++a;
            ++b;
        }
        if ( next.var() != v )
            out.push_back( next );
    }
    return Clause::from_sorted( std::move( out ) );
}

ProofCheck check_proof( const Cnf& f, const ResolutionProof& proof, std::span< const Lit > assumptions )
{
    auto fail = []( std::string message ) { return ProofCheck{ false, std::move( message ) }; };

    if ( proof.input_clauses.size() != f.clauses.size() + assumptions.size() )
        return fail( "input clause count differs from formula plus assumptions" );
    for ( std::size_t i = 0; i < f.clauses.size(); ++i )
        if ( proof.input_clauses[ i ] != f.clauses[ i ] )
            return fail( "input clause " + std::to_string( i ) + " differs from the formula" );
    for ( std::size_t i = 0; i < assumptions.size(); ++i )
        if ( proof.input_clauses[ f.clauses.size() + i ] != Clause{ assumptions[ i ] } )
            return fail( "assumption unit " + std::to_string( i ) + " is missing" );

    for ( std::size_t i = 0; i < proof.steps.size(); ++i )
    {
        const auto& step = proof.steps[ i ];
        for ( const auto& parent : { step.left, step.right } )
        {
            const bool in_range = parent.is_input() ? parent.index < proof.input_clauses.size() : parent.index < i;
            if ( !in_range )
                return fail( "step " + std::to_string( i ) + " references a clause that does not precede it" );
        }
        try
        {
            const Clause expected = resolve( proof.clause( step.left ), proof.clause( step.right ), step.pivot );
            if ( expected != step.resolvent )
                return fail( "step " + std::to_string( i ) + " records resolvent " + step.resolvent.to_string() +
                             " but its parents resolve to " + expected.to_string() );
        }
        catch ( const resolution_error& e )
        {
            return fail( "step " + std::to_string( i ) + ": " + e.what() );
        }
    }

    const auto& c = proof.conclusion;
    const bool valid_ref = c.is_input() ? c.index < proof.input_clauses.size() : c.index < proof.steps.size();
    if ( !valid_ref )
        return fail( "conclusion reference out of range" );
    if ( !c.is_input() && c.index + 1 != proof.steps.size() )
        return fail( "conclusion is not the final step" );
    if ( !proof.clause( c ).empty() )
        return fail( "conclusion " + proof.clause( c ).to_string() + " is not the empty clause" );
    return { true, {} };
}

ResolutionProof trim_proof( const ResolutionProof& proof )
{
    ResolutionProof out;
    out.input_clauses = proof.input_clauses;
    out.conclusion = proof.conclusion;
    if ( proof.conclusion.is_input() )
        return out;

    std::vector< bool > needed( proof.steps.size(), false );
    needed[ proof.conclusion.index ] = true;
    for ( std::size_t i = proof.steps.size(); i-- > 0; )
    {
        if ( !needed[ i ] )
            continue;
        for ( const auto& parent : { proof.steps[ i ].left, proof.steps[ i ].right } )
            if ( !parent.is_input() )
                needed[ parent.index ] = true;
    }

    std::vector< std::uint32_t > renumber( proof.steps.size(), 0 );
    for ( std::size_t i = 0; i < proof.steps.size(); ++i )
    {
        if ( !needed[ i ] )
            continue;
        renumber[ i ] = static_cast< std::uint32_t >( out.steps.size() );
        auto step = proof.steps[ i ];
        for ( auto* parent : { &step.left, &step.right } )
            if ( !parent->is_input() )
                parent->index = renumber[ parent->index ];
        out.steps.push_back( std::move( step ) );
    }
    out.conclusion = ProofRef::step( renumber[ proof.conclusion.index ] );
    return out;
}

std::string write_proof( const ResolutionProof& proof )
{
    const auto n = proof.input_clauses.size();
    auto id = [ n ]( ProofRef ref ) { return ref.is_input() ? ref.index + 1 : n + ref.index + 1; };
    std::ostringstream out;
    for ( std::size_t i = 0; i < proof.steps.size(); ++i )
    {
        const auto& step = proof.steps[ i ];
        out << n + i + 1 << ' ' << step.pivot << ' ' << id( step.left ) << ' ' << id( step.right ) << " :";
        for ( auto lit : step.resolvent )
            out << ' ' << lit.to_dimacs();
        out << " 0\n";
    }
    return out.str();
}

ResolutionProof parse_proof( std::string_view text, std::vector< Clause > input_clauses )
{
    ResolutionProof proof;
    proof.input_clauses = std::move( input_clauses );
    const auto n = proof.input_clauses.size();
    auto ref_of = [ & ]( std::size_t id, std::size_t line_no ) {
        if ( id == 0 )
            throw std::invalid_argument( "proof line " + std::to_string( line_no ) + ": clause id 0" );
        return id <= n ? ProofRef::input( static_cast< std::uint32_t >( id - 1 ) )
                       : ProofRef::step( static_cast< std::uint32_t >( id - n - 1 ) );
    };

    std::istringstream in{ std::string( text ) };
    std::string line;
    std::size_t line_no = 0;
    while ( std::getline( in, line ) )
    {
        ++line_no;
        if ( line.empty() || line[ 0 ] == 'c' )
            continue;
        std::istringstream fields( line );
        std::size_t sid = 0, left = 0, right = 0;
        Var pivot = 0;
        std::string colon;
        if ( !( fields >> sid >> pivot >> left >> right >> colon ) || colon != ":" )
            throw std::invalid_argument( "proof line " + std::to_string( line_no ) + " is malformed" );
        if ( sid != n + proof.steps.size() + 1 )
            throw std::invalid_argument( "proof line " + std::to_string( line_no ) + ": step ids must be consecutive" );
        std::vector< Lit > lits;
        int value = 0;
        bool terminated = false;
        while ( fields >> value )
        {
            if ( value == 0 )
            {
                terminated = true;
                break;
            }
            lits.push_back( Lit::from_dimacs( value ) );
        }
        if ( !terminated )
            throw std::invalid_argument( "proof line " + std::to_string( line_no ) + " lacks the terminating 0" );
        proof.steps.push_back( { Clause( std::move( lits ) ), pivot, ref_of( left, line_no ), ref_of( right, line_no ) } );
    }
    if ( proof.steps.empty() )
    {
        for ( std::size_t i = 0; i < n; ++i )
            if ( proof.input_clauses[ i ].empty() )
                proof.conclusion = ProofRef::input( static_cast< std::uint32_t >( i ) );
    }
    else
    {
        proof.conclusion = ProofRef::step( static_cast< std::uint32_t >( proof.steps.size() - 1 ) );
    }
    return proof;
}

} // namespace tapseq
