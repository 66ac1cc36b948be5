#include "tapseq/boundary.hpp"

#include <unordered_set>

namespace tapseq
{

bool is_boundary_point( const Cnf& f, const Point& p, Var v )
{
    bool falsifies = false;
    for ( const auto& clause : f.clauses )
    {
        if ( p.satisfies( clause ) )
            continue;
        if ( !clause.has_var( v ) )
            return false;
        falsifies = true;
    }
    return falsifies;
}

ClauseEncoding enc_clause( const Cnf& f, const Clause& c, Var v, const VarMap& map, PhasePolicy& policy,
                           std::uint64_t conflict_limit )
{
    Cnf relaxed;
    relaxed.var_roles = f.var_roles;
    for ( const auto& clause : f.clauses )
        if ( !clause.has_var( v ) )
            relaxed.add( clause );
    for ( Lit l : c )
        relaxed.add( Clause{ ~l } );

    SolveOptions options;
    options.log_proof = false;
    options.conflict_limit = conflict_limit;
    auto result = solve( relaxed, {}, policy, options );
    if ( is_unknown( result ) )
        return { ClauseEncodingOutcome::budget_exceeded, std::nullopt };
    if ( is_unsat( result ) )
        return { ClauseEncodingOutcome::no_point, std::nullopt };

    Point p = std::get< Point >( std::move( result ) );
    if ( map.is_present_state( v ) )
        p.set( v, map.present_state[ map.latch_of( v ) ] );
    if ( !p.falsifies( c ) || !is_boundary_point( f, p, v ) )
        return { ClauseEncodingOutcome::rejected, std::nullopt };

    BoundaryPoint bp;
    bp.falsified_clauses = p.falsified_clauses( f ).size();
    bp.point = std::move( p );
    bp.pivot = v;
    return { ClauseEncodingOutcome::found, std::move( bp ) };
}

bool PointEncoding::add( const Point& point, Var pivot, std::size_t step, bool mark_flip )
{
    if ( const auto it = index_.find( point ); it != index_.end() )
    {
        auto& existing = points_[ it->second ];
        existing.steps.push_back( step );
        // A point reused for another pivot can only mark the flip of its
        // first pivot; other flips stay out of the encoding.
        if ( existing.pivot == pivot )
            existing.flip_marked = existing.flip_marked || mark_flip;
        return false;
    }
    index_.emplace( point, points_.size() );
    points_.push_back( { point, pivot, { step }, mark_flip } );
    return true;
}

std::vector< Point > PointEncoding::expanded() const
{
    std::vector< Point > out;
    std::unordered_set< Point > seen;
    for ( const auto& entry : points_ )
    {
        if ( seen.insert( entry.point ).second )
            out.push_back( entry.point );
        if ( entry.flip_marked )
        {
            Point flip = entry.point.flipped( entry.pivot );
            if ( seen.insert( flip ).second )
                out.push_back( std::move( flip ) );
        }
    }
    return out;
}

PointEncoding enc_resolutions( const Cnf& f, const ResolutionProof& proof, const VarMap& map, PhasePolicy& policy,
                               const EncodingOptions& options,
                               const std::function< void( const BoundaryPoint& ) >& on_point, EncodingStats* stats )
{
    EncodingStats local;
    EncodingStats& st = stats ? *stats : local;
    PointEncoding encoding;
    for ( std::size_t i = 0; i < proof.steps.size(); ++i )
    {
        if ( options.stop && options.stop() )
            break;
        const auto& step = proof.steps[ i ];
        ++st.steps_encoded;
        ++st.sat_calls;
        const bool state_pivot = map.is_present_state( step.pivot );
        if ( state_pivot )
            ++st.state_pivot_steps;

        auto result = enc_clause( f, step.resolvent, step.pivot, map, policy, options.conflict_limit );
        switch ( result.outcome )
        {
        case ClauseEncodingOutcome::no_point: ++st.no_point_steps; continue;
        case ClauseEncodingOutcome::budget_exceeded: ++st.budget_steps; continue;
        case ClauseEncodingOutcome::rejected: ++st.rejected_candidates; continue;
        case ClauseEncodingOutcome::found: break;
        }

        auto& bp = *result.point;
        bp.step = i;
        if ( !encoding.add( bp.point, bp.pivot, i, !state_pivot ) )
        {
            ++st.duplicate_points;
            continue;
        }
        ++st.points_found;
        if ( on_point )
            on_point( bp );
    }
    return encoding;
}

bool is_legal_resolution( const std::vector< Point >& points, const Clause& c1, const Clause& c2, Var v )
{
    const auto l1 = c1.find( v );
    const auto l2 = c2.find( v );
    if ( !l1 || !l2 || *l1 != ~*l2 )
        return false;
    const std::unordered_set< Point > members( points.begin(), points.end() );
    for ( const auto& p : points )
    {
        if ( !p.falsifies( c1 ) )
            continue;
        const Point other = p.flipped( v );
        if ( other.falsifies( c2 ) && members.count( other ) != 0 )
            return true;
    }
    return false;
}

bool is_legal_resolution( const PointEncoding& encoding, const Clause& c1, const Clause& c2, Var v )
{
    return is_legal_resolution( encoding.expanded(), c1, c2, v );
}

std::set< InputVector > project_tests( const PointEncoding& encoding, const VarMap& map )
{
    std::set< InputVector > tests;
    for ( const auto& entry : encoding.points() )
    {
        InputVector x( map.input_vars.size() );
        for ( std::size_t i = 0; i < map.input_vars.size(); ++i )
            x.set( i, entry.point.value( map.input_vars[ i ] ) );
        tests.insert( std::move( x ) );
    }
    return tests;
}

} // namespace tapseq
