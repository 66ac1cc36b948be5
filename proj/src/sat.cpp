#include "tapseq/sat.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>

namespace tapseq
{

namespace
{

constexpr std::uint32_t no_reason = UINT32_MAX;

// Max-heap of variables keyed by activity.
class var_order
{
public:
    explicit var_order( const std::vector< double >& activity ) : activity_( activity ) {}

    void reserve( Var n ) { index_.assign( static_cast< std::size_t >( n ) + 1, -1 ); }

    bool contains( Var v ) const { return index_[ v ] >= 0; }
    bool empty() const { return heap_.empty(); }

    void insert( Var v )
    {
        if ( contains( v ) )
            return;
        index_[ v ] = static_cast< int >( heap_.size() );
        heap_.push_back( v );
        up( heap_.size() - 1 );
    }

    void increased( Var v )
    {
        if ( contains( v ) )
            up( static_cast< std::size_t >( index_[ v ] ) );
    }

    Var pop()
    {
        const Var top = heap_.front();
        heap_.front() = heap_.back();
        index_[ heap_.front() ] = 0;
        heap_.pop_back();
        index_[ top ] = -1;
        if ( !heap_.empty() )
            down( 0 );
        return top;
    }

private:
    bool before( Var a, Var b ) const
    {
        return activity_[ a ] > activity_[ b ] || ( activity_[ a ] == activity_[ b ] && a < b );
    }

    void up( std::size_t i )
    {
        const Var v = heap_[ i ];
        while ( i > 0 )
        {
            const std::size_t parent = ( i - 1 ) / 2;
            if ( !before( v, heap_[ parent ] ) )
                break;
            heap_[ i ] = heap_[ parent ];
            index_[ heap_[ i ] ] = static_cast< int >( i );
            i = parent;
        }
        heap_[ i ] = v;
        index_[ v ] = static_cast< int >( i );
    }

    void down( std::size_t i )
    {
        const Var v = heap_[ i ];
        for ( ;; )
        {
            std::size_t child = 2 * i + 1;
            if ( child >= heap_.size() )
                break;
            if ( child + 1 < heap_.size() && before( heap_[ child + 1 ], heap_[ child ] ) )
                ++child;
            if ( !before( heap_[ child ], v ) )
                break;
            heap_[ i ] = heap_[ child ];
            index_[ heap_[ i ] ] = static_cast< int >( i );
            i = child;
        }
        heap_[ i ] = v;
        index_[ v ] = static_cast< int >( i );
    }

    const std::vector< double >& activity_;
    std::vector< Var > heap_;
    std::vector< int > index_;
};

double luby( double y, std::uint64_t x )
{
    std::uint64_t size = 1;
    int seq = 0;
    while ( size < x + 1 )
    {
        ++seq;
        size = 2 * size + 1;
    }
    while ( size - 1 != x )
    {
        size = ( size - 1 ) >> 1;
        --seq;
        x = x % size;
    }
    double result = 1;
    for ( int i = 0; i < seq; ++i )
        result *= y;
    return result;
}

struct clause_data
{
    // Watched literals are lits[0] and lits[1].
    std::vector< Lit > lits;
    ProofRef ref;
};

// One resolution of a conflict-analysis chain: resolve on var with the
// reason clause.
using chain_link = std::pair< Var, std::uint32_t >;

class cdcl
{
public:
    cdcl( const Cnf& f, std::span< const Lit > assumptions, PhasePolicy& policy, const SolveOptions& options )
        : policy_( policy ), options_( options ), num_vars_( f.var_count() ), order_( activity_ )
    {
        const auto grow = static_cast< std::size_t >( num_vars_ ) + 1;
        values_.assign( grow, -1 );
        level_.assign( grow, 0 );
        reason_.assign( grow, no_reason );
        trail_pos_.assign( grow, 0 );
        saved_.assign( grow, false );
        seen_.assign( grow, 0 );
        activity_.assign( grow, 0.0 );
        watches_.resize( 2 * grow );
        order_.reserve( num_vars_ );
        for ( Var v = 1; v <= num_vars_; ++v )
            order_.insert( v );

        proof_.input_clauses = f.clauses;
        for ( Lit a : assumptions )
        {
            if ( a.var() == 0 || a.var() > num_vars_ )
                throw std::invalid_argument( "assumption on variable " + std::to_string( a.var() ) +
                                             " outside the formula" );
            proof_.input_clauses.push_back( Clause{ a } );
        }
        for ( const auto& clause : proof_.input_clauses )
            for ( Lit l : clause )
                if ( l.var() > num_vars_ )
                    throw std::invalid_argument( "clause " + clause.to_string() + " uses an undeclared variable" );
    }

    SatResult run( SolveStats& stats )
    {
        std::vector< std::uint32_t > units;
        for ( std::size_t i = 0; i < proof_.input_clauses.size(); ++i )
        {
            const auto& clause = proof_.input_clauses[ i ];
            if ( clause.empty() )
            {
                proof_.conclusion = ProofRef::input( static_cast< std::uint32_t >( i ) );
                return finish_unsat();
            }
            const auto ci = add_clause( { clause.begin(), clause.end() }, ProofRef::input( static_cast< std::uint32_t >( i ) ) );
            if ( clause.size() == 1 )
                units.push_back( ci );
        }
        for ( auto ci : units )
        {
            const Lit unit = clauses_[ ci ].lits[ 0 ];
            if ( value( unit ) == 0 )
                return refute_at_root( ci );
            if ( value( unit ) < 0 )
                enqueue( unit, ci );
        }

        std::uint64_t restart_index = 0;
        std::uint64_t conflicts_until_restart = static_cast< std::uint64_t >( luby( 2, restart_index ) * 100 );
        for ( ;; )
        {
            const auto conflict = propagate( stats );
            if ( conflict != no_reason )
            {
                ++stats.conflicts;
                if ( decision_level() == 0 )
                    return refute_at_root( conflict );
                if ( options_.conflict_limit != 0 && stats.conflicts >= options_.conflict_limit )
                    return BudgetExceeded{ stats.conflicts };
                learn( conflict );
                decay_activity();
                if ( --conflicts_until_restart == 0 )
                {
                    ++stats.restarts;
                    ++restart_index;
                    conflicts_until_restart = static_cast< std::uint64_t >( luby( 2, restart_index ) * 100 );
                    backtrack( 0 );
                }
                continue;
            }

            Var next = 0;
            while ( !order_.empty() )
            {
                const Var v = order_.pop();
                if ( values_[ v ] < 0 )
                {
                    next = v;
                    break;
                }
            }
            if ( next == 0 )
                return model();
            ++stats.decisions;
            trail_lim_.push_back( trail_.size() );
            enqueue( Lit( next, !policy_.choose( next, saved_[ next ] ) ), no_reason );
        }
    }

private:
    int decision_level() const { return static_cast< int >( trail_lim_.size() ); }

    // 1 true, 0 false, -1 unassigned.
    int value( Lit l ) const
    {
        const int v = values_[ l.var() ];
        return v < 0 ? -1 : ( v == 1 ) != l.negative();
    }

    std::uint32_t add_clause( std::vector< Lit > lits, ProofRef ref )
    {
        const auto ci = static_cast< std::uint32_t >( clauses_.size() );
        if ( lits.size() >= 2 )
        {
            watches_[ lits[ 0 ].code() ].push_back( ci );
            watches_[ lits[ 1 ].code() ].push_back( ci );
        }
        clauses_.push_back( { std::move( lits ), ref } );
        return ci;
    }

    void enqueue( Lit l, std::uint32_t reason )
    {
        const Var v = l.var();
        values_[ v ] = l.negative() ? 0 : 1;
        level_[ v ] = decision_level();
        reason_[ v ] = reason;
        trail_pos_[ v ] = static_cast< std::uint32_t >( trail_.size() );
        trail_.push_back( l );
    }

    std::uint32_t propagate( SolveStats& stats )
    {
        while ( head_ < trail_.size() )
        {
            const Lit false_lit = ~trail_[ head_++ ];
            ++stats.propagations;
            auto& ws = watches_[ false_lit.code() ];
            std::size_t keep = 0;
            for ( std::size_t i = 0; i < ws.size(); ++i )
            {
                const auto ci = ws[ i ];
                auto& lits = clauses_[ ci ].lits;
                if ( lits[ 0 ] == false_lit )
                    std::swap( lits[ 0 ], lits[ 1 ] );
                if ( value( lits[ 0 ] ) == 1 )
                {
                    ws[ keep++ ] = ci;
                    continue;
                }
                bool moved = false;
                for ( std::size_t k = 2; k < lits.size(); ++k )
                {
                    if ( value( lits[ k ] ) != 0 )
                    {
                        std::swap( lits[ 1 ], lits[ k ] );
                        watches_[ lits[ 1 ].code() ].push_back( ci );
                        moved = true;
                        break;
                    }
                }
                if ( moved )
                    continue;
                ws[ keep++ ] = ci;
                if ( value( lits[ 0 ] ) == 0 )
                {
                    for ( ++i; i < ws.size(); ++i )
                        ws[ keep++ ] = ws[ i ];
                    ws.resize( keep );
                    head_ = trail_.size();
                    return ci;
                }
                enqueue( lits[ 0 ], ci );
            }
            ws.resize( keep );
        }
        return no_reason;
    }

    void bump( Var v )
    {
        activity_[ v ] += activity_inc_;
        if ( activity_[ v ] > 1e100 )
        {
            for ( auto& a : activity_ )
                a *= 1e-100;
            activity_inc_ *= 1e-100;
        }
        order_.increased( v );
    }

    void decay_activity() { activity_inc_ /= 0.95; }

    // Appends the level-0 eliminations to chain: every root-level literal
    // collected in root_vars is resolved away with its reason, latest first.
    void eliminate_root_literals( const std::vector< Var >& root_vars, std::vector< chain_link >& chain )
    {
        auto later = [ this ]( Var a, Var b ) { return trail_pos_[ a ] < trail_pos_[ b ]; };
        std::priority_queue< Var, std::vector< Var >, decltype( later ) > pending( later );
        std::vector< Var > marked;
        auto mark = [ & ]( Var v ) {
            if ( seen_[ v ] == 2 )
                return;
            seen_[ v ] = 2;
            marked.push_back( v );
            pending.push( v );
        };
        for ( Var v : root_vars )
            mark( v );
        while ( !pending.empty() )
        {
            const Var v = pending.top();
            pending.pop();
            const auto reason = reason_[ v ];
            chain.emplace_back( v, reason );
            for ( Lit q : clauses_[ reason ].lits )
                if ( q.var() != v )
                    mark( q.var() );
        }
        for ( Var v : marked )
            seen_[ v ] = 0;
    }

    // Records the resolutions of chain starting from the clause start and
    // returns the reference of the final resolvent.
    ProofRef replay( ProofRef start, const std::vector< chain_link >& chain )
    {
        ProofRef current = start;
        for ( const auto& [ pivot, reason ] : chain )
        {
            const ProofRef other = clauses_[ reason ].ref;
            Clause resolvent = resolve( proof_.clause( current ), proof_.clause( other ), pivot );
            proof_.steps.push_back( { std::move( resolvent ), pivot, current, other } );
            current = ProofRef::step( static_cast< std::uint32_t >( proof_.steps.size() - 1 ) );
        }
        return current;
    }

    // First-UIP learning with the resolution chain recorded for the proof.
    void learn( std::uint32_t conflict )
    {
        const int level = decision_level();
        std::vector< Lit > learnt{ Lit{} };
        std::vector< Var > root_vars;
        std::vector< chain_link > chain;
        int path = 0;
        std::size_t index = trail_.size();
        Var pivot = 0;
        std::uint32_t clause = conflict;

        for ( ;; )
        {
            for ( Lit q : clauses_[ clause ].lits )
            {
                const Var v = q.var();
                if ( v == pivot || seen_[ v ] != 0 )
                    continue;
                if ( level_[ v ] == 0 )
                {
                    if ( options_.log_proof )
                    {
                        seen_[ v ] = 3;
                        root_vars.push_back( v );
                    }
                    continue;
                }
                seen_[ v ] = 1;
                bump( v );
                if ( level_[ v ] == level )
                    ++path;
                else
                    learnt.push_back( q );
            }
            do
                --index;
            while ( seen_[ trail_[ index ].var() ] != 1 );
            pivot = trail_[ index ].var();
            seen_[ pivot ] = 0;
            if ( --path == 0 )
                break;
            clause = reason_[ pivot ];
            chain.emplace_back( pivot, clause );
        }
        learnt[ 0 ] = ~trail_[ index ];
        for ( std::size_t i = 1; i < learnt.size(); ++i )
            seen_[ learnt[ i ].var() ] = 0;
        for ( Var v : root_vars )
            seen_[ v ] = 0;

        ProofRef ref = clauses_[ conflict ].ref;
        if ( options_.log_proof )
        {
            eliminate_root_literals( root_vars, chain );
            ref = replay( ref, chain );
            if ( proof_.clause( ref ) != Clause( learnt ) )
                throw std::logic_error( "recorded derivation does not match the learnt clause" );
        }

        int backjump = 0;
        if ( learnt.size() > 1 )
        {
            std::size_t highest = 1;
            for ( std::size_t i = 2; i < learnt.size(); ++i )
                if ( level_[ learnt[ i ].var() ] > level_[ learnt[ highest ].var() ] )
                    highest = i;
            std::swap( learnt[ 1 ], learnt[ highest ] );
            backjump = level_[ learnt[ 1 ].var() ];
        }
        backtrack( backjump );
        const Lit asserting = learnt[ 0 ];
        const auto ci = add_clause( std::move( learnt ), ref );
        enqueue( asserting, ci );
    }

    SatResult refute_at_root( std::uint32_t conflict )
    {
        if ( !options_.log_proof )
            return ResolutionProof{};
        std::vector< Var > root_vars;
        for ( Lit q : clauses_[ conflict ].lits )
            root_vars.push_back( q.var() );
        std::vector< chain_link > chain;
        eliminate_root_literals( root_vars, chain );
        proof_.conclusion = replay( clauses_[ conflict ].ref, chain );
        if ( !proof_.clause( proof_.conclusion ).empty() )
            throw std::logic_error( "root-level refutation did not reach the empty clause" );
        return finish_unsat();
    }

    SatResult finish_unsat()
    {
        if ( !options_.log_proof )
            return ResolutionProof{};
        return options_.trim ? trim_proof( proof_ ) : std::move( proof_ );
    }

    void backtrack( int level )
    {
        if ( decision_level() <= level )
            return;
        const auto bottom = trail_lim_[ static_cast< std::size_t >( level ) ];
        for ( std::size_t i = trail_.size(); i-- > bottom; )
        {
            const Var v = trail_[ i ].var();
            saved_[ v ] = values_[ v ] == 1;
            values_[ v ] = -1;
            reason_[ v ] = no_reason;
            order_.insert( v );
        }
        trail_.resize( bottom );
        trail_lim_.resize( static_cast< std::size_t >( level ) );
        head_ = trail_.size();
    }

    Point model() const
    {
        Point p( num_vars_ );
        for ( Var v = 1; v <= num_vars_; ++v )
            p.set( v, values_[ v ] == 1 );
        return p;
    }

    PhasePolicy& policy_;
    const SolveOptions& options_;
    Var num_vars_;

    std::vector< clause_data > clauses_;
    std::vector< std::vector< std::uint32_t > > watches_;
    std::vector< int > values_;
    std::vector< int > level_;
    std::vector< std::uint32_t > reason_;
    std::vector< std::uint32_t > trail_pos_;
    std::vector< bool > saved_;
    std::vector< std::uint8_t > seen_;
    std::vector< double > activity_;
    double activity_inc_ = 1.0;
    var_order order_;

    std::vector< Lit > trail_;
    std::vector< std::size_t > trail_lim_;
    std::size_t head_ = 0;

    ResolutionProof proof_;
};

} // namespace

SatResult solve( const Cnf& f, std::span< const Lit > assumptions, PhasePolicy& policy, const SolveOptions& options,
                 SolveStats* stats )
{
    SolveStats local;
    cdcl solver( f, assumptions, policy, options );
    SatResult result = solver.run( stats ? *stats : local );

    if ( const auto* point = std::get_if< Point >( &result ) )
    {
        if ( !point->satisfies( f ) )
            throw std::logic_error( "solver returned a point that falsifies the formula" );
        for ( Lit a : assumptions )
            if ( !point->satisfies( a ) )
                throw std::logic_error( "solver returned a point that violates an assumption" );
    }
#ifndef NDEBUG
    if ( const auto* proof = std::get_if< ResolutionProof >( &result ); proof && options.log_proof )
        if ( const auto check = check_proof( f, *proof, assumptions ); !check )
            throw std::logic_error( "solver produced an invalid proof: " + check.diagnostic );
#endif
    return result;
}

} // namespace tapseq
