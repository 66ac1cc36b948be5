#include "oracles.hpp"

#include "tapseq/resolution.hpp"
#include "tapseq/sat.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tapseq;
using namespace tapseq::testing;

namespace
{

Cnf make_cnf( Var n, std::vector< Clause > clauses )
{
    Cnf f;
    for ( Var v = 1; v <= n; ++v )
        f.new_var( VarRole::internal );
    f.clauses = std::move( clauses );
    return f;
}

const Lit a = Lit::pos( 1 );
const Lit b = Lit::pos( 2 );
const Lit v = Lit::pos( 3 );

} // namespace

TEST( Resolve, Examples )
{
    EXPECT_EQ( resolve( Clause{ a, v }, Clause{ b, ~v }, 3 ), ( Clause{ a, b } ) );
    EXPECT_EQ( resolve( Clause{ ~v }, Clause{ v }, 3 ), Clause{} );
    EXPECT_EQ( resolve( Clause{ a, v }, Clause{ a, ~v }, 3 ), Clause{ a } );
    EXPECT_THROW( resolve( Clause{ a, v }, Clause{ ~a, ~v }, 3 ), resolution_error );
    EXPECT_THROW( resolve( Clause{ a, v }, Clause{ b, v }, 3 ), resolution_error );
    EXPECT_THROW( resolve( Clause{ a }, Clause{ b }, 3 ), resolution_error );
}

TEST( Solve, SingleUnitIsSatisfiable )
{
    const auto f = make_cnf( 1, { Clause{ Lit::pos( 1 ) } } );
    const auto r = solve( f );
    ASSERT_TRUE( is_sat( r ) );
    EXPECT_TRUE( std::get< Point >( r ).value( 1 ) );
}

TEST( Solve, ComplementaryUnitsGiveOneStepProof )
{
    const auto f = make_cnf( 1, { Clause{ Lit::pos( 1 ) }, Clause{ Lit::neg( 1 ) } } );
    const auto r = solve( f );
    ASSERT_TRUE( is_unsat( r ) );
    const auto& proof = std::get< ResolutionProof >( r );
    ASSERT_EQ( proof.steps.size(), 1u );
    EXPECT_EQ( proof.steps[ 0 ].pivot, 1u );
    EXPECT_TRUE( proof.steps[ 0 ].resolvent.empty() );
    EXPECT_TRUE( check_proof( f, proof ) );

    auto mislabeled = proof;
    mislabeled.steps[ 0 ].pivot = 2;
    const auto verdict = check_proof( f, mislabeled );
    EXPECT_FALSE( verdict );
    EXPECT_FALSE( verdict.diagnostic.empty() );
}

TEST( Solve, EmptyFormulaAndEmptyClause )
{
    EXPECT_TRUE( is_sat( solve( make_cnf( 3, {} ) ) ) );
    const auto f = make_cnf( 2, { Clause{ a }, Clause{} } );
    const auto r = solve( f );
    ASSERT_TRUE( is_unsat( r ) );
    const auto& proof = std::get< ResolutionProof >( r );
    EXPECT_TRUE( proof.conclusion.is_input() );
    EXPECT_TRUE( check_proof( f, proof ) );
}

TEST( CheckProof, RejectsMalformedProofs )
{
    const auto f = make_cnf( 2, { Clause{ a, b }, Clause{ a, ~b }, Clause{ ~a, b }, Clause{ ~a, ~b } } );
    const auto r = solve( f );
    ASSERT_TRUE( is_unsat( r ) );
    const auto proof = std::get< ResolutionProof >( r );
    ASSERT_TRUE( check_proof( f, proof ) );

    auto wrong_resolvent = proof;
    wrong_resolvent.steps.front().resolvent = Clause{ Lit::pos( 1 ), Lit::pos( 2 ) };
    EXPECT_FALSE( check_proof( f, wrong_resolvent ) );

    auto forward_ref = proof;
    forward_ref.steps.front().left = ProofRef::step( static_cast< std::uint32_t >( proof.steps.size() - 1 ) );
    EXPECT_FALSE( check_proof( f, forward_ref ) );

    auto truncated = proof;
    truncated.steps.pop_back();
    truncated.conclusion = ProofRef::step( static_cast< std::uint32_t >( truncated.steps.size() - 1 ) );
    EXPECT_FALSE( check_proof( f, truncated ) );

    auto other_inputs = proof;
    other_inputs.input_clauses.pop_back();
    EXPECT_FALSE( check_proof( f, other_inputs ) );
}

TEST( Solve, AgreesWithTruthTableOnRandom3Cnf )
{
    std::mt19937_64 rng( 31 );
    int sat = 0;
    int unsat = 0;
    for ( int i = 0; i < 120; ++i )
    {
        const Var n = static_cast< Var >( 5 + rng() % 16 );
        const auto f = random_kcnf( rng, n, static_cast< std::size_t >( 4.3 * n ), 3 );
        const auto r = solve( f );
        ASSERT_FALSE( is_unknown( r ) );
        ASSERT_EQ( is_sat( r ), truth_table_sat( f ) );
        if ( is_sat( r ) )
        {
            ++sat;
            EXPECT_TRUE( std::get< Point >( r ).satisfies( f ) );
        }
        else
        {
            ++unsat;
            const auto check = check_proof( f, std::get< ResolutionProof >( r ) );
            EXPECT_TRUE( check ) << check.diagnostic;
        }
    }
    EXPECT_GT( sat, 10 );
    EXPECT_GT( unsat, 10 );
}

TEST( Solve, AssumptionsBecomeUnitInputs )
{
    std::mt19937_64 rng( 32 );
    for ( int i = 0; i < 100; ++i )
    {
        const Var n = static_cast< Var >( 6 + rng() % 8 );
        const auto f = random_kcnf( rng, n, 3 * n, 3 );
        std::vector< Lit > assumptions;
        for ( Var x = 1; x <= 3; ++x )
            assumptions.push_back( Lit( x, ( rng() & 1u ) != 0 ) );
        auto g = f;
        for ( auto l : assumptions )
            g.add( Clause{ l } );

        SavedPhasePolicy policy;
        const auto r = solve( f, assumptions, policy );
        ASSERT_EQ( is_sat( r ), truth_table_sat( g ) );
        if ( is_sat( r ) )
        {
            for ( auto l : assumptions )
                EXPECT_TRUE( std::get< Point >( r ).satisfies( l ) );
        }
        else
        {
            const auto& proof = std::get< ResolutionProof >( r );
            EXPECT_EQ( proof.input_clauses.size(), f.clauses.size() + assumptions.size() );
            EXPECT_TRUE( check_proof( f, proof, assumptions ) );
        }
    }
    SavedPhasePolicy policy;
    const std::vector< Lit > outside{ Lit::pos( 99 ) };
    EXPECT_THROW( solve( make_cnf( 2, {} ), outside, policy ), std::invalid_argument );
}

TEST( Solve, DeterministicForEqualPolicyState )
{
    std::mt19937_64 rng( 33 );
    for ( int i = 0; i < 30; ++i )
    {
        const auto f = random_kcnf( rng, 18, 80, 3 );
        RandomizedPhasePolicy p1( 7 );
        RandomizedPhasePolicy p2( 7 );
        const auto r1 = solve( f, {}, p1 );
        const auto r2 = solve( f, {}, p2 );
        ASSERT_EQ( r1.index(), r2.index() );
        if ( is_sat( r1 ) )
        {
            EXPECT_EQ( std::get< Point >( r1 ), std::get< Point >( r2 ) );
        }
        else
        {
            EXPECT_EQ( write_proof( std::get< ResolutionProof >( r1 ) ),
                       write_proof( std::get< ResolutionProof >( r2 ) ) );
        }
        EXPECT_EQ( p1.decisions(), p2.decisions() );
    }
}

TEST( Solve, ConflictLimitYieldsBudgetVerdict )
{
    std::mt19937_64 rng( 34 );
    const auto f = random_kcnf( rng, 60, 270, 3 );
    SolveOptions options;
    options.conflict_limit = 1;
    SavedPhasePolicy policy;
    SolveStats stats;
    const auto r = solve( f, {}, policy, options, &stats );
    EXPECT_TRUE( is_unknown( r ) );
    EXPECT_GE( stats.conflicts, 1u );
}

TEST( RandomizedPhasePolicy, EveryTenthDecisionIsRandom )
{
    RandomizedPhasePolicy policy( 5 );
    int random_true = 0;
    for ( int i = 1; i <= 1000; ++i )
    {
        const bool value = policy.choose( 1, false );
        if ( i % 10 != 0 )
            ASSERT_FALSE( value );
        else
            random_true += value ? 1 : 0;
    }
    EXPECT_GT( random_true, 20 );
    EXPECT_LT( random_true, 80 );
    EXPECT_EQ( policy.decisions(), 1000u );
}

TEST( ProofFormat, WriteParseRoundTripAndTrim )
{
    std::mt19937_64 rng( 35 );
    int seen = 0;
    while ( seen < 20 )
    {
        const auto f = random_kcnf( rng, 14, 70, 3 );
        SolveOptions untrimmed;
        untrimmed.trim = false;
        const auto r = solve( f, untrimmed );
        if ( !is_unsat( r ) )
            continue;
        ++seen;
        const auto& proof = std::get< ResolutionProof >( r );
        ASSERT_TRUE( check_proof( f, proof ) );
        const auto parsed = parse_proof( write_proof( proof ), f.clauses );
        EXPECT_EQ( write_proof( parsed ), write_proof( proof ) );
        EXPECT_TRUE( check_proof( f, parsed ) );

        const auto trimmed = trim_proof( proof );
        EXPECT_LE( trimmed.steps.size(), proof.steps.size() );
        EXPECT_TRUE( check_proof( f, trimmed ) );
        EXPECT_EQ( trim_proof( trimmed ).steps.size(), trimmed.steps.size() );
    }
}
