#pragma once

#include "tapseq/aiger.hpp"

#include <span>
#include <vector>

namespace tapseq
{

// Programmatic AIG construction. Literals handed out by the builder are
// builder-local; build() renumbers everything canonically (inputs, latches,
// then gates in creation order), so the result can be written as binary
// AIGER.
class AigBuilder
{
public:
    aig_lit input();
    aig_lit latch( latch_reset reset = latch_reset::zero );
    void set_next( aig_lit latch, aig_lit next );

    aig_lit land( aig_lit a, aig_lit b );
    aig_lit lor( aig_lit a, aig_lit b ) { return aig_not( land( aig_not( a ), aig_not( b ) ) ); }
    aig_lit lxor( aig_lit a, aig_lit b ) { return lor( land( a, aig_not( b ) ), land( aig_not( a ), b ) ); }
    aig_lit lxnor( aig_lit a, aig_lit b ) { return aig_not( lxor( a, b ) ); }
    aig_lit mux( aig_lit sel, aig_lit then_lit, aig_lit else_lit )
    {
        return lor( land( sel, then_lit ), land( aig_not( sel ), else_lit ) );
    }
    aig_lit all( std::span< const aig_lit > lits );
    aig_lit any( std::span< const aig_lit > lits );
    // Conjunction of lits[i] == bits[i].
    aig_lit matches( std::span< const aig_lit > lits, const std::vector< bool >& bits );

    void output( aig_lit lit ) { outputs_.push_back( lit ); }
    void bad( aig_lit lit ) { bad_.push_back( lit ); }

    AigModel build() const;

private:
    enum class kind : std::uint8_t { input, latch, gate };
    struct node
    {
        kind k;
        aig_lit a = 0; // gate operand / latch next
        aig_lit b = 0; // gate operand
        latch_reset reset = latch_reset::zero;
        bool next_set = false;
    };

    aig_lit add( node n );

    // Node i has builder literal 2 * (i + 1).
    std::vector< node > nodes_;
    std::vector< aig_lit > outputs_;
    std::vector< aig_lit > bad_;
};

} // namespace tapseq
