#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tapseq
{

// CNF variable, 1-based. Separate from the AIGER variable namespace.
using Var = std::uint32_t;

class Lit
{
public:
    constexpr Lit() = default;
    constexpr Lit( Var var, bool negative ) : code_( 2 * var + ( negative ? 1u : 0u ) ) {}

    static constexpr Lit pos( Var var ) { return Lit( var, false ); }
    static constexpr Lit neg( Var var ) { return Lit( var, true ); }
    // DIMACS integer, e.g. -3 for the negation of variable 3.
    static Lit from_dimacs( int value )
    {
        if ( value == 0 )
            throw std::invalid_argument( "0 is not a literal" );
        return value > 0 ? pos( static_cast< Var >( value ) ) : neg( static_cast< Var >( -value ) );
    }
    static constexpr Lit from_code( std::uint32_t code )
    {
        Lit l;
        l.code_ = code;
        return l;
    }

    constexpr Var var() const { return code_ >> 1; }
    constexpr bool negative() const { return ( code_ & 1u ) != 0; }
    constexpr std::uint32_t code() const { return code_; }
    int to_dimacs() const { return negative() ? -static_cast< int >( var() ) : static_cast< int >( var() ); }

    constexpr Lit operator~() const { return from_code( code_ ^ 1u ); }

    friend constexpr bool operator==( Lit, Lit ) = default;
    friend constexpr auto operator<=>( Lit, Lit ) = default;

private:
    std::uint32_t code_ = 0;
};

// Disjunction of literals over distinct variables, kept sorted by variable.
class Clause
{
public:
    Clause() = default;
    Clause( std::initializer_list< Lit > lits ) : Clause( std::vector< Lit >( lits ) ) {}
    // Sorts and removes duplicates; throws if two literals of one variable
    // have opposite signs.
    explicit Clause( std::vector< Lit > lits );

    // Trusted constructor for already-canonical literal vectors.
    static Clause from_sorted( std::vector< Lit > lits );

    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    std::span< const Lit > lits() const { return lits_; }
    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }

    bool contains( Lit lit ) const;
    // Literal of var in this clause, if any.
    std::optional< Lit > find( Var var ) const;
    bool has_var( Var var ) const { return find( var ).has_value(); }

    std::string to_string() const;

    friend bool operator==( const Clause&, const Clause& ) = default;
    friend auto operator<=>( const Clause&, const Clause& ) = default;

private:
    std::vector< Lit > lits_;
};

enum class VarRole : std::uint8_t
{
    present_state,
    next_state,
    input,
    internal,
};

struct Cnf
{
    std::vector< Clause > clauses;
    // Index 0 unused; var_roles[v] is the role of variable v.
    std::vector< VarRole > var_roles{ VarRole::internal };

    Var var_count() const { return static_cast< Var >( var_roles.size() - 1 ); }

    Var new_var( VarRole role )
    {
        var_roles.push_back( role );
        return var_count();
    }

    void add( Clause clause ) { clauses.push_back( std::move( clause ) ); }
};

// Complete assignment to variables 1..n of a formula.
class Point
{
public:
    Point() = default;
    explicit Point( Var var_count ) : values_( static_cast< std::size_t >( var_count ) + 1, false ) {}

    Var var_count() const { return static_cast< Var >( values_.empty() ? 0 : values_.size() - 1 ); }

    bool value( Var v ) const { return values_.at( v ); }
    void set( Var v, bool value ) { values_.at( v ) = value; }
    bool satisfies( Lit lit ) const { return value( lit.var() ) != lit.negative(); }

    Point flipped( Var v ) const
    {
        Point p = *this;
        p.values_.at( v ) = !p.values_.at( v );
        return p;
    }

    bool satisfies( const Clause& clause ) const;
    bool falsifies( const Clause& clause ) const { return !satisfies( clause ); }
    bool satisfies( const Cnf& cnf ) const;
    // Indices of clauses of cnf falsified by this point.
    std::vector< std::size_t > falsified_clauses( const Cnf& cnf ) const;

    const std::vector< bool >& values() const { return values_; }

    std::string to_string() const;

    friend bool operator==( const Point&, const Point& ) = default;
    friend bool operator<( const Point& a, const Point& b ) { return a.values_ < b.values_; }

private:
    std::vector< bool > values_;
};

// Standard "p cnf V C" header, one 0-terminated clause per line.
std::string write_dimacs( const Cnf& cnf );
// Duplicate literals are merged and tautological clauses dropped. All
// variables get the internal role.
Cnf parse_dimacs( std::string_view text );

} // namespace tapseq

template <>
struct std::hash< tapseq::Point >
{
    std::size_t operator()( const tapseq::Point& p ) const noexcept
    {
        return std::hash< std::vector< bool > >{}( p.values() );
    }
};
