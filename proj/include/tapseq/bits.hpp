#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tapseq
{

// Fixed-width bit vector. The tag keeps states and input vectors apart at the
// type level even though they share a representation.
template < typename Tag >
class bit_vector
{
public:
    bit_vector() = default;
    explicit bit_vector( std::size_t width, bool value = false )
        : bits_( width, value )
    {
    }
    explicit bit_vector( std::vector< bool > bits ) : bits_( std::move( bits ) ) {}

    // Parses a string of '0'/'1' characters, first character is bit 0.
    static bit_vector from_string( std::string_view text )
    {
        bit_vector result( text.size() );
        for ( std::size_t i = 0; i < text.size(); ++i )
        {
            if ( text[ i ] != '0' && text[ i ] != '1' )
                throw std::invalid_argument( "bit string contains a character other than 0/1" );
            result.bits_[ i ] = text[ i ] == '1';
        }
        return result;
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool operator[]( std::size_t i ) const { return bits_[ i ]; }
    void set( std::size_t i, bool value ) { bits_[ i ] = value; }
    void flip( std::size_t i ) { bits_[ i ] = !bits_[ i ]; }

    const std::vector< bool >& bits() const { return bits_; }

    std::string to_string() const
    {
        std::string out;
        out.reserve( bits_.size() );
        for ( bool b : bits_ )
            out.push_back( b ? '1' : '0' );
        return out;
    }

    friend bool operator==( const bit_vector&, const bit_vector& ) = default;
    friend bool operator<( const bit_vector& a, const bit_vector& b ) { return a.bits_ < b.bits_; }

private:
    std::vector< bool > bits_;
};

struct state_tag {};
struct input_tag {};

// One bit per latch, in latch declaration order.
using State = bit_vector< state_tag >;
// One bit per input, in input declaration order.
using InputVector = bit_vector< input_tag >;

} // namespace tapseq

template < typename Tag >
struct std::hash< tapseq::bit_vector< Tag > >
{
    std::size_t operator()( const tapseq::bit_vector< Tag >& v ) const noexcept
    {
        return std::hash< std::vector< bool > >{}( v.bits() );
    }
};
