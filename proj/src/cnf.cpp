#include "tapseq/cnf.hpp"

#include <algorithm>
#include <sstream>

namespace tapseq
{

Clause::Clause( std::vector< Lit > lits ) : lits_( std::move( lits ) )
{
    std::sort( lits_.begin(), lits_.end() );
    lits_.erase( std::unique( lits_.begin(), lits_.end() ), lits_.end() );
    for ( std::size_t i = 1; i < lits_.size(); ++i )
        if ( lits_[ i ].var() == lits_[ i - 1 ].var() )
            throw std::invalid_argument( "clause contains both literals of variable " +
                                         std::to_string( lits_[ i ].var() ) );
    for ( auto lit : lits_ )
        if ( lit.var() == 0 )
            throw std::invalid_argument( "variable 0 is not a CNF variable" );
}

Clause Clause::from_sorted( std::vector< Lit > lits )
{
    Clause c;
    c.lits_ = std::move( lits );
    return c;
}

std::optional< Lit > Clause::find( Var var ) const
{
    // Positive and negative literal codes of var are adjacent, so the lower
    // bound on the positive literal lands on either one.
    auto it = std::lower_bound( lits_.begin(), lits_.end(), Lit::pos( var ) );
    if ( it != lits_.end() && it->var() == var )
        return *it;
    return std::nullopt;
}

bool Clause::contains( Lit lit ) const
{
    const auto found = find( lit.var() );
    return found && *found == lit;
}

std::string Clause::to_string() const
{
    std::ostringstream out;
    out << '(';
    for ( std::size_t i = 0; i < lits_.size(); ++i )
        out << ( i ? " " : "" ) << lits_[ i ].to_dimacs();
    out << ')';
    return out.str();
}

bool Point::satisfies( const Clause& clause ) const
{
    return std::any_of( clause.begin(), clause.end(), [ this ]( Lit l ) { return satisfies( l ); } );
}

bool Point::satisfies( const Cnf& cnf ) const
{
    return std::all_of( cnf.clauses.begin(), cnf.clauses.end(),
                        [ this ]( const Clause& c ) { return satisfies( c ); } );
}

std::vector< std::size_t > Point::falsified_clauses( const Cnf& cnf ) const
{
    std::vector< std::size_t > out;
    for ( std::size_t i = 0; i < cnf.clauses.size(); ++i )
        if ( falsifies( cnf.clauses[ i ] ) )
            out.push_back( i );
    return out;
}

std::string Point::to_string() const
{
    std::ostringstream out;
    for ( Var v = 1; v <= var_count(); ++v )
        out << ( v > 1 ? " " : "" ) << ( value( v ) ? "" : "-" ) << v;
    return out.str();
}

std::string write_dimacs( const Cnf& cnf )
{
    std::ostringstream out;
    out << "p cnf " << cnf.var_count() << ' ' << cnf.clauses.size() << '\n';
    for ( const auto& clause : cnf.clauses )
    {
        for ( auto lit : clause )
            out << lit.to_dimacs() << ' ';
        out << "0\n";
    }
    return out.str();
}

Cnf parse_dimacs( std::string_view text )
{
    std::istringstream in{ std::string( text ) };
    Cnf cnf;
    std::string line;
    bool have_header = false;
    std::vector< Lit > pending;
    long declared_vars = 0;
    while ( std::getline( in, line ) )
    {
        if ( line.empty() || line[ 0 ] == 'c' || line[ 0 ] == '%' )
            continue;
        std::istringstream fields( line );
        if ( line[ 0 ] == 'p' )
        {
            std::string p, format;
            long clauses = 0;
            if ( !( fields >> p >> format >> declared_vars >> clauses ) || format != "cnf" || declared_vars < 0 )
                throw std::invalid_argument( "malformed DIMACS header: " + line );
            have_header = true;
            continue;
        }
        if ( !have_header )
            throw std::invalid_argument( "DIMACS clause before header" );
        long value = 0;
        while ( fields >> value )
        {
            if ( value == 0 )
            {
                std::sort( pending.begin(), pending.end() );
                pending.erase( std::unique( pending.begin(), pending.end() ), pending.end() );
                bool tautology = false;
                for ( std::size_t i = 1; i < pending.size(); ++i )
                    tautology = tautology || pending[ i ].var() == pending[ i - 1 ].var();
                if ( !tautology )
                    cnf.add( Clause::from_sorted( pending ) );
                pending.clear();
                continue;
            }
            if ( std::labs( value ) > declared_vars )
                throw std::invalid_argument( "DIMACS literal exceeds declared variable count" );
            pending.push_back( Lit::from_dimacs( static_cast< int >( value ) ) );
        }
        if ( !fields.eof() )
            throw std::invalid_argument( "malformed DIMACS clause line: " + line );
    }
    if ( !pending.empty() )
        throw std::invalid_argument( "DIMACS clause missing terminating 0" );
    cnf.var_roles.assign( static_cast< std::size_t >( declared_vars ) + 1, VarRole::internal );
    return cnf;
}

} // namespace tapseq
