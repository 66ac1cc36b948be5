#include "tapseq/engine.hpp"

#include "tapseq/sat.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <stdexcept>

namespace tapseq
{

void StateStore::insert_initial( const State& state )
{
    if ( !records_.empty() )
        throw std::logic_error( "initial state inserted into a non-empty store" );
    records_.emplace( state, StateRecord{ state, 0, std::nullopt, std::nullopt } );
    order_of_insertion_.push_back( state );
    activate( state, 0 );
}

bool StateStore::insert( const State& state, const State& parent, const InputVector& input )
{
    if ( records_.count( state ) != 0 )
        return false;
    const auto frame = record( parent ).frame + 1;
    records_.emplace( state, StateRecord{ state, frame, parent, input } );
    order_of_insertion_.push_back( state );
    max_frame_ = std::max( max_frame_, frame );
    activate( state, frame );
    return true;
}

void StateStore::activate( const State& state, std::size_t frame )
{
    active_[ frame ].push_back( state );
    ++active_count_;
}

std::optional< State > StateStore::pop()
{
    if ( active_.empty() )
        return std::nullopt;
    auto bucket = order_ == ExploreOrder::bfs ? active_.begin() : std::prev( active_.end() );
    State state = std::move( bucket->second.front() );
    bucket->second.pop_front();
    if ( bucket->second.empty() )
        active_.erase( bucket );
    --active_count_;
    return state;
}

const StateRecord* StateStore::find( const State& state ) const
{
    const auto it = records_.find( state );
    return it == records_.end() ? nullptr : &it->second;
}

const StateRecord& StateStore::record( const State& state ) const
{
    const auto* rec = find( state );
    if ( rec == nullptr )
        throw std::logic_error( "state " + state.to_string() + " is not in the store" );
    return *rec;
}

bool update_states( StateStore& store, const BoundaryPoint& p, const VarMap& map, const State& curr,
                    const AigModel& model )
{
    const auto decoded = decode_model( p.point, map );
    if ( decoded.state != curr )
        throw std::logic_error( "boundary point decodes to present state " + decoded.state.to_string() +
                                " instead of " + curr.to_string() );
    const State successor = simulate_step( model, curr, decoded.inputs );
    return store.insert( successor, curr, decoded.inputs );
}

Counterexample reconstruct_trace( const AigModel& model, const StateStore& store, const State& last,
                                  const InputVector& final_input,
                                  const std::optional< std::pair< State, InputVector > >& tail )
{
    Counterexample cex;
    const StateRecord* rec = &store.record( last );
    for ( ;; )
    {
        cex.states.push_back( rec->state );
        if ( !rec->parent )
            break;
        cex.inputs.push_back( *rec->input_from_parent );
        const StateRecord* parent = store.find( *rec->parent );
        if ( parent == nullptr || parent->frame + 1 != rec->frame )
            throw std::logic_error( "broken parent chain at state " + rec->state.to_string() );
        rec = parent;
    }
    if ( rec->frame != 0 )
        throw std::logic_error( "parent chain does not end at frame 0" );
    std::reverse( cex.states.begin(), cex.states.end() );
    std::reverse( cex.inputs.begin(), cex.inputs.end() );
    if ( tail )
    {
        cex.inputs.push_back( tail->second );
        cex.states.push_back( tail->first );
    }
    cex.final_bad_input = final_input;

    for ( std::size_t i = 0; i < cex.inputs.size(); ++i )
        if ( simulate_step( model, cex.states[ i ], cex.inputs[ i ] ) != cex.states[ i + 1 ] )
            throw std::logic_error( "trace hop " + std::to_string( i ) + " does not simulate" );
    return cex;
}

namespace
{

class deadline
{
public:
    explicit deadline( double seconds )
        : start_( std::chrono::steady_clock::now() ), limit_( seconds )
    {
    }

    double elapsed() const
    {
        return std::chrono::duration< double >( std::chrono::steady_clock::now() - start_ ).count();
    }
    bool expired() const { return limit_ > 0 && elapsed() >= limit_; }

private:
    std::chrono::steady_clock::time_point start_;
    double limit_;
};

void require_valid( const AigModel& model, const Counterexample& cex )
{
    if ( const auto check = validate_counterexample( model, cex ); !check )
        throw std::logic_error( "engine produced an invalid counterexample: " + check.diagnostic );
}

} // namespace

Verdict run_tapseq( const AigModel& model, const EngineConfig& config )
{
    if ( config.max_states < 1 )
        throw std::invalid_argument( "max_states must be at least 1" );
    const deadline clock( config.time_limit_s );
    Verdict verdict;
    auto& stats = verdict.stats;
    for ( const char* key : { "states_visited", "states_processed", "frames_reached", "sat_calls", "proof_steps",
                              "proof_steps_encoded", "boundary_points", "duplicate_points", "no_point_steps",
                              "budget_steps", "rejected_candidates", "state_pivot_steps", "tests_projected",
                              "budget_checks" } )
        stats.set( key, 0 );

    auto finish = [ & ]( VerdictKind kind, const StateStore& store ) {
        verdict.kind = kind;
        stats.set( "states_visited", store.size() );
        stats.set( "frames_reached", store.max_frame() );
        verdict.seconds = clock.elapsed();
        return verdict;
    };

    const State init = initial_state( model );
    StateStore store( config.order );

    SavedPhasePolicy proof_policy;
    std::unique_ptr< PhasePolicy > point_policy;
    if ( config.randomize )
        point_policy = std::make_unique< RandomizedPhasePolicy >( config.seed );
    else
        point_policy = std::make_unique< SavedPhasePolicy >();

    {
        const auto check = encode_bad_check( model, init );
        stats.add( "sat_calls", 1 );
        SolveOptions options;
        options.log_proof = false;
        options.conflict_limit = config.conflict_limit;
        const auto result = solve( check.cnf, {}, proof_policy, options );
        if ( const auto* point = std::get_if< Point >( &result ) )
        {
            Counterexample cex;
            cex.states.push_back( init );
            cex.final_bad_input = decode_model( *point, check.map ).inputs;
            require_valid( model, cex );
            verdict.counterexample = std::move( cex );
            store.insert_initial( init );
            return finish( VerdictKind::bug, store );
        }
        if ( is_unknown( result ) )
        {
            stats.add( "budget_checks", 1 );
            store.insert_initial( init );
            return finish( VerdictKind::budget_exhausted, store );
        }
    }

    store.insert_initial( init );
    auto over_budget = [ & ] { return store.size() > config.max_states || clock.expired(); };

    for ( ;; )
    {
        if ( store.active_size() == 0 )
            return finish( VerdictKind::converged, store );
        if ( over_budget() )
            return finish( VerdictKind::budget_exhausted, store );

        const State curr = *store.pop();
        const StateRecord& rec = store.record( curr );
        stats.add( "states_processed", 1 );
        if ( config.observer )
            config.observer->on_pop( rec );

        const auto formula = encode_step_formula( model, curr, config.encoding );
        if ( config.observer )
            config.observer->on_step_formula( rec, formula );

        SolveOptions options;
        options.log_proof = true;
        options.trim = config.trim_proofs;
        options.conflict_limit = config.conflict_limit;
        auto result = solve( formula.cnf, {}, proof_policy, options );
        stats.add( "sat_calls", 1 );

        if ( const auto* point = std::get_if< Point >( &result ) )
        {
            const auto decoded = decode_model( *point, formula.map );
            const State successor = simulate_step( model, curr, decoded.inputs );
            if ( successor != decoded.next )
                throw std::logic_error( "step formula model disagrees with simulation" );
            auto cex = reconstruct_trace( model, store, curr, decoded.bad_inputs,
                                          std::make_pair( successor, decoded.inputs ) );
            require_valid( model, cex );
            verdict.counterexample = std::move( cex );
            return finish( VerdictKind::bug, store );
        }
        if ( is_unknown( result ) )
        {
            stats.add( "budget_checks", 1 );
            continue;
        }

        const auto& proof = std::get< ResolutionProof >( result );
        stats.add( "proof_steps", proof.steps.size() );
        if ( config.observer )
            config.observer->on_proof( rec, formula, proof );

        EncodingOptions enc_options;
        enc_options.conflict_limit = config.conflict_limit;
        enc_options.stop = over_budget;
        EncodingStats enc_stats;
        const auto encoding = enc_resolutions(
            formula.cnf, proof, formula.map, *point_policy, enc_options,
            [ & ]( const BoundaryPoint& bp ) {
                const bool inserted = update_states( store, bp, formula.map, curr, model );
                if ( config.observer )
                    config.observer->on_boundary_point( store.record( curr ), formula, bp, inserted );
            },
            &enc_stats );

        if ( encoding.size() > 2 * enc_stats.steps_encoded )
            throw std::logic_error( "point encoding exceeds two points per encoded step" );
        stats.add( "proof_steps_encoded", enc_stats.steps_encoded );
        stats.add( "sat_calls", enc_stats.sat_calls );
        stats.add( "boundary_points", encoding.size() );
        stats.add( "duplicate_points", enc_stats.duplicate_points );
        stats.add( "no_point_steps", enc_stats.no_point_steps );
        stats.add( "budget_steps", enc_stats.budget_steps );
        stats.add( "rejected_candidates", enc_stats.rejected_candidates );
        stats.add( "state_pivot_steps", enc_stats.state_pivot_steps );
        stats.add( "tests_projected", project_tests( encoding, formula.map ).size() );
    }
}

} // namespace tapseq
