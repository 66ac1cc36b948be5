#include "tapseq/aiger.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace tapseq
{

namespace
{

class cursor
{
public:
    explicit cursor( std::string_view data ) : data_( data ) {}

    std::size_t offset() const { return pos_; }
    bool at_end() const { return pos_ >= data_.size(); }

    [[noreturn]] void fail( const std::string& message ) const { throw aiger_error( pos_, message ); }

    void expect_char( char c, const char* what )
    {
        if ( at_end() || data_[ pos_ ] != c )
            fail( std::string( "expected " ) + what );
        ++pos_;
    }

    void expect_space() { expect_char( ' ', "space" ); }
    void expect_newline() { expect_char( '\n', "newline" ); }

    bool peek_is( char c ) const { return !at_end() && data_[ pos_ ] == c; }

    bool consume( std::string_view word )
    {
        if ( data_.substr( pos_, word.size() ) != word )
            return false;
        pos_ += word.size();
        return true;
    }

    std::uint32_t read_uint( const char* what )
    {
        if ( at_end() || data_[ pos_ ] < '0' || data_[ pos_ ] > '9' )
            fail( std::string( "expected unsigned integer (" ) + what + ")" );
        std::uint64_t value = 0;
        while ( !at_end() && data_[ pos_ ] >= '0' && data_[ pos_ ] <= '9' )
        {
            value = value * 10 + static_cast< std::uint64_t >( data_[ pos_ ] - '0' );
            if ( value > std::numeric_limits< std::uint32_t >::max() / 2 )
                fail( std::string( "integer too large (" ) + what + ")" );
            ++pos_;
        }
        return static_cast< std::uint32_t >( value );
    }

    // 7-bit little-endian varint of the binary and-gate section.
    std::uint32_t read_delta()
    {
        std::uint64_t value = 0;
        unsigned shift = 0;
        for ( ;; )
        {
            if ( at_end() )
                fail( "unexpected end of file in binary and-gate section" );
            const auto byte = static_cast< unsigned char >( data_[ pos_++ ] );
            value |= static_cast< std::uint64_t >( byte & 0x7fu ) << shift;
            if ( value > std::numeric_limits< std::uint32_t >::max() )
                fail( "binary delta overflows 32 bits" );
            if ( ( byte & 0x80u ) == 0 )
                break;
            shift += 7;
            if ( shift > 28 )
                fail( "binary delta too long" );
        }
        return static_cast< std::uint32_t >( value );
    }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

enum class definition : std::uint8_t
{
    none,
    input,
    latch,
    gate,
};

struct header
{
    bool binary = false;
    std::uint32_t max_var = 0;
    std::uint32_t inputs = 0;
    std::uint32_t latches = 0;
    std::uint32_t outputs = 0;
    std::uint32_t ands = 0;
    std::uint32_t bad = 0;
    std::uint32_t constraints = 0;
    std::uint32_t justice = 0;
    std::uint32_t fairness = 0;
};

header read_header( cursor& in )
{
    header h;
    const auto start = in.offset();
    if ( in.consume( "aag" ) )
        h.binary = false;
    else if ( in.consume( "aig" ) )
        h.binary = true;
    else
        throw aiger_error( start, "malformed header: expected 'aag' or 'aig'" );

    in.expect_space();
    h.max_var = in.read_uint( "M" );
    in.expect_space();
    h.inputs = in.read_uint( "I" );
    in.expect_space();
    h.latches = in.read_uint( "L" );
    in.expect_space();
    h.outputs = in.read_uint( "O" );
    in.expect_space();
    h.ands = in.read_uint( "A" );

    std::uint32_t* optional_fields[] = { &h.bad, &h.constraints, &h.justice, &h.fairness };
    const char* names[] = { "B", "C", "J", "F" };
    for ( int i = 0; i < 4 && in.peek_is( ' ' ); ++i )
    {
        in.expect_space();
        *optional_fields[ i ] = in.read_uint( names[ i ] );
    }
    const auto header_end = in.offset();
    in.expect_newline();

    if ( h.constraints != 0 )
        throw aiger_error( header_end, "invariant constraints are not supported" );
    if ( h.justice != 0 || h.fairness != 0 )
        throw aiger_error( header_end, "justice/fairness properties are not supported" );
    if ( static_cast< std::uint64_t >( h.inputs ) + h.latches + h.ands > h.max_var )
        throw aiger_error( header_end, "malformed header: M < I + L + A" );
    if ( h.binary && static_cast< std::uint64_t >( h.inputs ) + h.latches + h.ands != h.max_var )
        throw aiger_error( header_end, "malformed header: binary AIGER requires M = I + L + A" );
    if ( h.outputs == 0 && h.bad == 0 )
        throw aiger_error( header_end, "model has neither outputs nor bad-state properties" );
    return h;
}

class validator
{
public:
    explicit validator( std::uint32_t max_var ) : max_var_( max_var ), defined_( max_var + 1, definition::none ) {}

    void check_range( std::size_t offset, aig_lit lit ) const
    {
        if ( aig_var( lit ) > max_var_ )
            throw aiger_error( offset, "literal " + std::to_string( lit ) + " exceeds maximum variable index" );
    }

    void define( std::size_t offset, aig_lit lit, definition kind )
    {
        if ( aig_var( lit ) > max_var_ )
            throw aiger_error( offset, "literal " + std::to_string( lit ) + " exceeds maximum variable index" );
        if ( aig_sign( lit ) )
            throw aiger_error( offset, "defined literal " + std::to_string( lit ) + " must be even" );
        if ( lit < 2 )
            throw aiger_error( offset, "constant cannot be redefined" );
        auto& slot = defined_[ aig_var( lit ) ];
        if ( slot != definition::none )
            throw aiger_error( offset, "variable " + std::to_string( aig_var( lit ) ) + " defined twice" );
        slot = kind;
    }

    bool is_defined( aig_lit lit ) const { return aig_var( lit ) == 0 || defined_[ aig_var( lit ) ] != definition::none; }
    definition kind( std::uint32_t var ) const { return defined_[ var ]; }

private:
    std::uint32_t max_var_;
    std::vector< definition > defined_;
};

// Orders gates so every operand is defined before use. Gates that are already
// in order keep their relative position.
std::vector< aig_and > topological_order( const std::vector< aig_and >& gates,
                                          const std::vector< std::size_t >& offsets,
                                          std::uint32_t max_var )
{
    std::vector< std::int64_t > gate_of( max_var + 1, -1 );
    for ( std::size_t i = 0; i < gates.size(); ++i )
        gate_of[ aig_var( gates[ i ].lhs ) ] = static_cast< std::int64_t >( i );

    enum class mark : std::uint8_t { fresh, active, done };
    std::vector< mark > marks( gates.size(), mark::fresh );
    std::vector< aig_and > ordered;
    ordered.reserve( gates.size() );

    for ( std::size_t root = 0; root < gates.size(); ++root )
    {
        if ( marks[ root ] != mark::fresh )
            continue;
        // Iterative DFS: (gate index, operand cursor).
        std::vector< std::pair< std::size_t, int > > stack{ { root, 0 } };
        marks[ root ] = mark::active;
        while ( !stack.empty() )
        {
            auto& [ g, next ] = stack.back();
            if ( next < 2 )
            {
                const aig_lit operand = next == 0 ? gates[ g ].rhs0 : gates[ g ].rhs1;
                ++next;
                const auto dep = gate_of[ aig_var( operand ) ];
                if ( dep < 0 )
                    continue;
                const auto d = static_cast< std::size_t >( dep );
                if ( marks[ d ] == mark::active )
                    throw aiger_error( offsets[ d ], "combinational cycle through and-gate " +
                                                         std::to_string( gates[ d ].lhs ) );
                if ( marks[ d ] == mark::fresh )
                {
                    marks[ d ] = mark::active;
                    stack.emplace_back( d, 0 );
                }
                continue;
            }
            marks[ g ] = mark::done;
            ordered.push_back( gates[ g ] );
            stack.pop_back();
        }
    }
    return ordered;
}

} // namespace

AigModel parse_aiger( std::string_view bytes, std::size_t property_index )
{
    cursor in( bytes );
    const header h = read_header( in );

    AigModel model;
    model.max_var = h.max_var;
    validator defs( h.max_var );

    // Literals whose definedness is checked once all definitions are known.
    std::vector< std::pair< std::size_t, aig_lit > > uses;

    for ( std::uint32_t i = 0; i < h.inputs; ++i )
    {
        aig_lit lit = 2 * ( i + 1 );
        const auto offset = in.offset();
        if ( !h.binary )
        {
            lit = in.read_uint( "input literal" );
            in.expect_newline();
        }
        defs.define( offset, lit, definition::input );
        model.inputs.push_back( lit );
    }

    std::vector< std::pair< std::size_t, aig_lit > > reset_literals;
    for ( std::uint32_t i = 0; i < h.latches; ++i )
    {
        aig_latch latch{};
        const auto offset = in.offset();
        if ( h.binary )
        {
            latch.lit = 2 * ( h.inputs + i + 1 );
        }
        else
        {
            latch.lit = in.read_uint( "latch literal" );
            in.expect_space();
        }
        defs.define( offset, latch.lit, definition::latch );
        const auto next_offset = in.offset();
        latch.next = in.read_uint( "latch next-state literal" );
        defs.check_range( next_offset, latch.next );
        uses.emplace_back( next_offset, latch.next );
        if ( in.peek_is( ' ' ) )
        {
            in.expect_space();
            const auto reset_offset = in.offset();
            const aig_lit reset = in.read_uint( "latch reset" );
            if ( reset == aig_false )
                latch.reset = latch_reset::zero;
            else if ( reset == aig_true )
                latch.reset = latch_reset::one;
            else if ( reset == latch.lit )
                latch.reset = latch_reset::uninitialized;
            else
                throw aiger_error( reset_offset, "latch reset must be 0, 1 or the latch literal" );
        }
        in.expect_newline();
        model.latches.push_back( latch );
    }

    auto read_literal_lines = [ & ]( std::uint32_t count, std::vector< aig_lit >& out, const char* what ) {
        for ( std::uint32_t i = 0; i < count; ++i )
        {
            const auto offset = in.offset();
            const aig_lit lit = in.read_uint( what );
            defs.check_range( offset, lit );
            uses.emplace_back( offset, lit );
            in.expect_newline();
            out.push_back( lit );
        }
    };
    read_literal_lines( h.outputs, model.outputs, "output literal" );
    read_literal_lines( h.bad, model.bad_states, "bad-state literal" );

    std::vector< aig_and > gates;
    std::vector< std::size_t > gate_offsets;
    gates.reserve( h.ands );
    for ( std::uint32_t i = 0; i < h.ands; ++i )
    {
        aig_and gate{};
        const auto offset = in.offset();
        if ( h.binary )
        {
            gate.lhs = 2 * ( h.inputs + h.latches + i + 1 );
            const auto delta0 = in.read_delta();
            if ( delta0 == 0 || delta0 > gate.lhs )
                throw aiger_error( offset, "non-monotone binary delta encoding (first operand)" );
            gate.rhs0 = gate.lhs - delta0;
            const auto delta1 = in.read_delta();
            if ( delta1 > gate.rhs0 )
                throw aiger_error( offset, "non-monotone binary delta encoding (second operand)" );
            gate.rhs1 = gate.rhs0 - delta1;
        }
        else
        {
            gate.lhs = in.read_uint( "and-gate lhs" );
            in.expect_space();
            const auto rhs0_offset = in.offset();
            gate.rhs0 = in.read_uint( "and-gate rhs0" );
            defs.check_range( rhs0_offset, gate.rhs0 );
            uses.emplace_back( rhs0_offset, gate.rhs0 );
            in.expect_space();
            const auto rhs1_offset = in.offset();
            gate.rhs1 = in.read_uint( "and-gate rhs1" );
            defs.check_range( rhs1_offset, gate.rhs1 );
            uses.emplace_back( rhs1_offset, gate.rhs1 );
            in.expect_newline();
        }
        defs.define( offset, gate.lhs, definition::gate );
        gates.push_back( gate );
        gate_offsets.push_back( offset );
    }
    // Symbol table and comment section follow; both are ignored.

    for ( const auto& [ offset, lit ] : uses )
        if ( !defs.is_defined( lit ) )
            throw aiger_error( offset, "literal " + std::to_string( lit ) + " refers to an undefined variable" );

    model.and_gates = h.binary ? std::move( gates ) : topological_order( gates, gate_offsets, h.max_var );

    const auto& properties = model.bad_states.empty() ? model.outputs : model.bad_states;
    if ( property_index >= properties.size() )
        throw std::invalid_argument( "property index " + std::to_string( property_index ) + " out of range (model has " +
                                     std::to_string( properties.size() ) + ")" );
    model.property_index = property_index;
    model.bad = properties[ property_index ];
    return model;
}

AigModel read_aiger_file( const std::string& path, std::size_t property_index )
{
    std::ifstream file( path, std::ios::binary );
    if ( !file )
        throw std::runtime_error( "cannot open " + path );
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_aiger( buffer.str(), property_index );
}

namespace
{

aig_lit reset_literal( const aig_latch& latch )
{
    switch ( latch.reset )
    {
    case latch_reset::zero: return aig_false;
    case latch_reset::one: return aig_true;
    case latch_reset::uninitialized: return latch.lit;
    }
    return aig_false;
}

bool needs_extended_header( const AigModel& model )
{
    return !model.bad_states.empty();
}

void write_header( std::ostringstream& out, const AigModel& model, const char* magic )
{
    out << magic << ' ' << model.max_var << ' ' << model.inputs.size() << ' ' << model.latches.size() << ' '
        << model.outputs.size() << ' ' << model.and_gates.size();
    if ( needs_extended_header( model ) )
        out << ' ' << model.bad_states.size();
    out << '\n';
}

void write_latch_tail( std::ostringstream& out, const aig_latch& latch )
{
    out << latch.next;
    if ( latch.reset != latch_reset::zero )
        out << ' ' << reset_literal( latch );
    out << '\n';
}

} // namespace

std::string write_aiger_ascii( const AigModel& model )
{
    std::ostringstream out;
    write_header( out, model, "aag" );
    for ( auto lit : model.inputs )
        out << lit << '\n';
    for ( const auto& latch : model.latches )
    {
        out << latch.lit << ' ';
        write_latch_tail( out, latch );
    }
    for ( auto lit : model.outputs )
        out << lit << '\n';
    for ( auto lit : model.bad_states )
        out << lit << '\n';
    for ( const auto& gate : model.and_gates )
        out << gate.lhs << ' ' << gate.rhs0 << ' ' << gate.rhs1 << '\n';
    return out.str();
}

std::string write_aiger_binary( const AigModel& model )
{
    const auto num_inputs = static_cast< std::uint32_t >( model.inputs.size() );
    const auto num_latches = static_cast< std::uint32_t >( model.latches.size() );
    if ( model.max_var != num_inputs + num_latches + model.and_gates.size() )
        throw std::invalid_argument( "binary AIGER requires M = I + L + A" );
    for ( std::uint32_t i = 0; i < num_inputs; ++i )
        if ( model.inputs[ i ] != 2 * ( i + 1 ) )
            throw std::invalid_argument( "binary AIGER requires canonical input numbering" );
    for ( std::uint32_t i = 0; i < num_latches; ++i )
        if ( model.latches[ i ].lit != 2 * ( num_inputs + i + 1 ) )
            throw std::invalid_argument( "binary AIGER requires canonical latch numbering" );

    std::ostringstream out;
    write_header( out, model, "aig" );
    for ( const auto& latch : model.latches )
        write_latch_tail( out, latch );
    for ( auto lit : model.outputs )
        out << lit << '\n';
    for ( auto lit : model.bad_states )
        out << lit << '\n';

    auto put_delta = [ &out ]( std::uint32_t delta ) {
        while ( delta & ~0x7fu )
        {
            out.put( static_cast< char >( ( delta & 0x7fu ) | 0x80u ) );
            delta >>= 7;
        }
        out.put( static_cast< char >( delta ) );
    };
    for ( std::size_t i = 0; i < model.and_gates.size(); ++i )
    {
        const auto& gate = model.and_gates[ i ];
        const aig_lit lhs = 2 * ( num_inputs + num_latches + static_cast< std::uint32_t >( i ) + 1 );
        const aig_lit hi = std::max( gate.rhs0, gate.rhs1 );
        const aig_lit lo = std::min( gate.rhs0, gate.rhs1 );
        if ( gate.lhs != lhs || hi >= lhs )
            throw std::invalid_argument( "binary AIGER requires canonical, topologically numbered gates" );
        put_delta( lhs - hi );
        put_delta( hi - lo );
    }
    return out.str();
}

State initial_state( const AigModel& model )
{
    State state( model.latches.size() );
    for ( std::size_t i = 0; i < model.latches.size(); ++i )
    {
        switch ( model.latches[ i ].reset )
        {
        case latch_reset::zero: break;
        case latch_reset::one: state.set( i, true ); break;
        case latch_reset::uninitialized:
            throw unsupported_model( "latch " + std::to_string( model.latches[ i ].lit ) +
                                     " is uninitialized; only models with a single initial state are supported" );
        }
    }
    return state;
}

std::vector< bool > evaluate( const AigModel& model, const State& state, const InputVector& inputs )
{
    if ( state.size() != model.latches.size() || inputs.size() != model.inputs.size() )
        throw std::invalid_argument( "state/input width does not match the model" );
    std::vector< bool > values( model.max_var + 1, false );
    for ( std::size_t i = 0; i < model.inputs.size(); ++i )
        values[ aig_var( model.inputs[ i ] ) ] = inputs[ i ];
    for ( std::size_t i = 0; i < model.latches.size(); ++i )
        values[ aig_var( model.latches[ i ].lit ) ] = state[ i ];
    auto lit_value = [ &values ]( aig_lit lit ) { return values[ aig_var( lit ) ] != aig_sign( lit ); };
    for ( const auto& gate : model.and_gates )
        values[ aig_var( gate.lhs ) ] = lit_value( gate.rhs0 ) && lit_value( gate.rhs1 );
    return values;
}

State simulate_step( const AigModel& model, const State& state, const InputVector& inputs )
{
    const auto values = evaluate( model, state, inputs );
    State next( model.latches.size() );
    for ( std::size_t i = 0; i < model.latches.size(); ++i )
    {
        const aig_lit lit = model.latches[ i ].next;
        next.set( i, values[ aig_var( lit ) ] != aig_sign( lit ) );
    }
    return next;
}

bool eval_bad( const AigModel& model, const State& state, const InputVector& inputs )
{
    const auto values = evaluate( model, state, inputs );
    return values[ aig_var( model.bad ) ] != aig_sign( model.bad );
}

} // namespace tapseq
