#include "corpus.hpp"
#include "oracles.hpp"

#include "tapseq/engine.hpp"
#include "tapseq/oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

using namespace tapseq;
using namespace tapseq::testing;

namespace
{

State bits( const char* s )
{
    return State::from_string( s );
}

// Checks the loop invariants as the engine runs.
class InvariantObserver final : public EngineObserver
{
public:
    InvariantObserver( const AigModel& model, ExploreOrder order = ExploreOrder::bfs )
        : model_( model ), naive_( model ), order_( order )
    {
    }

    void on_pop( const StateRecord& rec ) override
    {
        ++pops;
        EXPECT_TRUE( popped_.insert( rec.state ).second ) << "state popped twice: " << rec.state.to_string();
        if ( order_ == ExploreOrder::bfs )
        {
            EXPECT_GE( rec.frame, last_frame_ ) << "frames popped out of order";
        }
        last_frame_ = rec.frame;
        if ( rec.parent )
        {
            ASSERT_TRUE( rec.input_from_parent.has_value() );
            EXPECT_EQ( naive_.next( *rec.parent, *rec.input_from_parent ), rec.state );
            EXPECT_NE( rec.frame, 0u );
        }
        else
        {
            EXPECT_EQ( rec.frame, 0u );
            EXPECT_EQ( rec.state, initial_state( model_ ) );
        }
    }

    void on_boundary_point( const StateRecord& rec, const StepFormula& f, const BoundaryPoint& bp,
                            bool inserted ) override
    {
        ++points;
        inserted_count += inserted ? 1 : 0;
        EXPECT_TRUE( classify_boundary( f.cnf, bp.point, bp.pivot ) );
        EXPECT_EQ( decode_model( bp.point, f.map ).state, rec.state );
    }

    std::size_t pops = 0;
    std::size_t points = 0;
    std::size_t inserted_count = 0;

private:
    const AigModel& model_;
    NaiveInterpreter naive_;
    ExploreOrder order_;
    std::unordered_set< State > popped_;
    std::size_t last_frame_ = 0;
};

} // namespace

TEST( StateStore, BreadthFirstAndDepthFirstOrder )
{
    const InputVector none;
    StateStore bfs( ExploreOrder::bfs );
    bfs.insert_initial( bits( "00" ) );
    EXPECT_TRUE( bfs.insert( bits( "10" ), bits( "00" ), none ) );
    EXPECT_TRUE( bfs.insert( bits( "11" ), bits( "10" ), none ) );
    EXPECT_TRUE( bfs.insert( bits( "01" ), bits( "00" ), none ) );
    EXPECT_FALSE( bfs.insert( bits( "01" ), bits( "11" ), none ) );
    EXPECT_EQ( bfs.size(), 4u );
    EXPECT_EQ( bfs.record( bits( "11" ) ).frame, 2u );
    EXPECT_EQ( bfs.record( bits( "01" ) ).parent, bits( "00" ) );
    EXPECT_EQ( bfs.max_frame(), 2u );
    std::vector< State > order;
    while ( auto s = bfs.pop() )
        order.push_back( *s );
    EXPECT_EQ( order, ( std::vector< State >{ bits( "00" ), bits( "10" ), bits( "01" ), bits( "11" ) } ) );
    EXPECT_EQ( bfs.active_size(), 0u );
    EXPECT_EQ( bfs.size(), 4u );

    StateStore dfs( ExploreOrder::dfs );
    dfs.insert_initial( bits( "00" ) );
    dfs.insert( bits( "10" ), bits( "00" ), none );
    dfs.insert( bits( "11" ), bits( "10" ), none );
    dfs.insert( bits( "01" ), bits( "00" ), none );
    EXPECT_EQ( dfs.pop(), bits( "11" ) );
    EXPECT_EQ( dfs.pop(), bits( "10" ) );
    EXPECT_THROW( dfs.insert_initial( bits( "00" ) ), std::logic_error );
}

TEST( UpdateStates, DuplicateAndFreshSuccessors )
{
    const auto m = counter3();
    const State curr = bits( "000" );
    const auto f = encode_step_formula( m, curr, { false } );
    BoundaryPoint bp;
    bp.point = Point( f.cnf.var_count() );

    StateStore store;
    store.insert_initial( curr );
    EXPECT_TRUE( update_states( store, bp, f.map, curr, m ) );
    EXPECT_EQ( store.size(), 2u );
    const auto& rec = store.record( bits( "100" ) );
    EXPECT_EQ( rec.frame, 1u );
    EXPECT_EQ( rec.parent, curr );

    EXPECT_FALSE( update_states( store, bp, f.map, curr, m ) );
    EXPECT_EQ( store.size(), 2u );
    EXPECT_EQ( store.active_size(), 2u );

    bp.point.set( f.map.present_state_vars[ 0 ], true );
    EXPECT_THROW( update_states( store, bp, f.map, curr, m ), std::logic_error );
}

TEST( ReconstructTrace, WalksParentsAndChecksHops )
{
    const auto m = counter3();
    const InputVector none;
    StateStore store;
    store.insert_initial( bits( "000" ) );
    store.insert( bits( "100" ), bits( "000" ), none );
    store.insert( bits( "010" ), bits( "100" ), none );

    const auto cex = reconstruct_trace( m, store, bits( "010" ), none );
    EXPECT_EQ( cex.states, ( std::vector< State >{ bits( "000" ), bits( "100" ), bits( "010" ) } ) );
    EXPECT_EQ( cex.inputs.size(), 2u );

    const auto tailed = reconstruct_trace( m, store, bits( "010" ), none, std::make_pair( bits( "110" ), none ) );
    EXPECT_EQ( tailed.length(), 4u );
    EXPECT_EQ( tailed.states.back(), bits( "110" ) );

    const auto single = reconstruct_trace( m, store, bits( "000" ), none );
    EXPECT_EQ( single.length(), 1u );
    EXPECT_TRUE( single.inputs.empty() );

    store.insert( bits( "111" ), bits( "000" ), none );
    EXPECT_THROW( reconstruct_trace( m, store, bits( "111" ), none ), std::logic_error );
    EXPECT_THROW( reconstruct_trace( m, store, bits( "001" ), none ), std::logic_error );
}

TEST( RunTapseq, BadInitialState )
{
    const auto m = bad_initial_state();
    const auto v = run_tapseq( m );
    ASSERT_EQ( v.kind, VerdictKind::bug );
    ASSERT_TRUE( v.counterexample );
    EXPECT_EQ( v.counterexample->length(), 1u );
    EXPECT_TRUE( validate_counterexample( m, *v.counterexample ) );
}

TEST( RunTapseq, SelfLoopConverges )
{
    const auto m = self_loop_latch();
    InvariantObserver observer( m );
    EngineConfig config;
    config.observer = &observer;
    const auto v = run_tapseq( m, config );
    EXPECT_EQ( v.kind, VerdictKind::converged );
    EXPECT_EQ( observer.pops, 1u );
    EXPECT_EQ( observer.inserted_count, 0u );
    EXPECT_EQ( v.stats.get( "states_visited" ), 1u );
}

TEST( RunTapseq, CounterFindsBugWithEightStates )
{
    const auto m = counter3();
    InvariantObserver observer( m );
    EngineConfig config;
    config.observer = &observer;
    const auto v = run_tapseq( m, config );
    ASSERT_EQ( v.kind, VerdictKind::bug );
    ASSERT_TRUE( v.counterexample );
    EXPECT_EQ( v.counterexample->length(), 8u );
    EXPECT_EQ( v.counterexample->states.back(), bits( "111" ) );
    EXPECT_TRUE( validate_counterexample( m, *v.counterexample ) );
    const auto oracle = explicit_oracle( m );
    EXPECT_EQ( oracle.verdict, OracleVerdict::reachable );
    EXPECT_EQ( oracle.depth + 1, v.counterexample->length() );
}

TEST( RunTapseq, RespectsStateBudget )
{
    const auto m = corpus_circuit( "counter5_deep" ).model;
    EngineConfig config;
    config.max_states = 3;
    const auto v = run_tapseq( m, config );
    EXPECT_EQ( v.kind, VerdictKind::budget_exhausted );
    EXPECT_LE( v.stats.get( "states_visited" ), 4u );
    config.max_states = 0;
    EXPECT_THROW( run_tapseq( m, config ), std::invalid_argument );
}

TEST( RunTapseq, CorpusRunsAreSoundAndKeepInvariants )
{
    for ( const auto& c : crafted_corpus() )
    {
        const auto oracle = explicit_oracle( c.model );
        for ( bool randomize : { false, true } )
        {
            for ( auto order : { ExploreOrder::bfs, ExploreOrder::dfs } )
            {
                InvariantObserver observer( c.model, order );
                EngineConfig config;
                config.observer = &observer;
                config.randomize = randomize;
                config.order = order;
                config.seed = 1;
                config.max_states = 2000;
                const auto v = run_tapseq( c.model, config );
                ASSERT_NE( v.kind, VerdictKind::budget_exhausted ) << c.name;
                EXPECT_LE( v.stats.get( "boundary_points" ), 2 * v.stats.get( "proof_steps_encoded" ) ) << c.name;
                EXPECT_LE( v.stats.get( "tests_projected" ), v.stats.get( "boundary_points" ) ) << c.name;
                EXPECT_EQ( v.stats.get( "rejected_candidates" ), 0u ) << c.name;
                EXPECT_EQ( observer.inserted_count + 1, v.stats.get( "states_visited" ) ) << c.name;
                if ( v.kind == VerdictKind::bug )
                {
                    ASSERT_TRUE( v.counterexample );
                    EXPECT_TRUE( validate_counterexample( c.model, *v.counterexample ) ) << c.name;
                    EXPECT_EQ( oracle.verdict, OracleVerdict::reachable ) << c.name;
                    EXPECT_GE( v.counterexample->length(), oracle.depth + 1 ) << c.name;
                }
                else
                {
                    EXPECT_EQ( observer.pops, v.stats.get( "states_visited" ) ) << c.name;
                }
            }
        }
    }
}

TEST( RunTapseq, RandomModelsAreSound )
{
    std::mt19937_64 rng( 51 );
    for ( int i = 0; i < 60; ++i )
    {
        const auto m = random_aig( rng, rng() % 4, 1 + rng() % 6, 5 + rng() % 25 );
        InvariantObserver observer( m );
        EngineConfig config;
        config.observer = &observer;
        config.randomize = ( i % 2 ) != 0;
        config.seed = static_cast< std::uint64_t >( i );
        const auto v = run_tapseq( m, config );
        const auto oracle = explicit_oracle( m );
        ASSERT_NE( oracle.verdict, OracleVerdict::inconclusive );
        if ( v.kind == VerdictKind::bug )
        {
            EXPECT_TRUE( validate_counterexample( m, *v.counterexample ) );
            EXPECT_EQ( oracle.verdict, OracleVerdict::reachable );
        }
    }
}

TEST( RunTapseq, DeterministicForEqualConfig )
{
    const auto m = sticky_enable_counter();
    for ( std::uint64_t seed : { 0u, 3u } )
    {
        EngineConfig config;
        config.randomize = true;
        config.seed = seed;
        const auto a = run_tapseq( m, config );
        const auto b = run_tapseq( m, config );
        EXPECT_EQ( a.kind, b.kind );
        EXPECT_EQ( a.stats.to_key_values(), b.stats.to_key_values() );
        if ( a.counterexample )
        {
            EXPECT_EQ( a.counterexample->states, b.counterexample->states );
        }
    }
}

TEST( ExplicitOracle, Basics )
{
    const auto counter = explicit_oracle( counter3() );
    EXPECT_EQ( counter.verdict, OracleVerdict::reachable );
    EXPECT_EQ( counter.depth, 7u );
    ASSERT_TRUE( counter.counterexample );
    EXPECT_TRUE( validate_counterexample( counter3(), *counter.counterexample ) );

    const auto never = explicit_oracle( constant_false_bad() );
    EXPECT_EQ( never.verdict, OracleVerdict::unreachable );

    const auto initial = explicit_oracle( bad_initial_state() );
    EXPECT_EQ( initial.verdict, OracleVerdict::reachable );
    EXPECT_EQ( initial.depth, 0u );

    EXPECT_EQ( explicit_oracle( corpus_circuit( "counter5_deep" ).model, 4 ).verdict, OracleVerdict::inconclusive );
}
