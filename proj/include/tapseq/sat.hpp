#pragma once

#include "tapseq/cnf.hpp"
#include "tapseq/resolution.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <variant>

namespace tapseq
{

// Chooses the value assigned at each decision. Policies are stateful (they
// may count decisions across solver calls) and are not thread-safe.
class PhasePolicy
{
public:
    virtual ~PhasePolicy() = default;
    // saved is the variable's last assigned value (false if never assigned).
    virtual bool choose( Var v, bool saved ) = 0;
};

// Phase saving, initial phase false.
class SavedPhasePolicy final : public PhasePolicy
{
public:
    bool choose( Var, bool saved ) override { return saved; }
};

// Phase saving, except every period-th decision takes a random phase.
class RandomizedPhasePolicy final : public PhasePolicy
{
public:
    explicit RandomizedPhasePolicy( std::uint64_t seed, std::uint32_t period = 10 )
        : rng_( seed ), period_( period )
    {
    }

    bool choose( Var, bool saved ) override
    {
        if ( ++decisions_ % period_ != 0 )
            return saved;
        return ( rng_() & 1u ) != 0;
    }

    std::uint64_t decisions() const { return decisions_; }

private:
    std::mt19937_64 rng_;
    std::uint32_t period_;
    std::uint64_t decisions_ = 0;
};

struct SolveOptions
{
    bool log_proof = true;
    // Drop proof steps the empty clause does not depend on.
    bool trim = true;
    // 0 means unlimited.
    std::uint64_t conflict_limit = 0;
};

struct BudgetExceeded
{
    std::uint64_t conflicts = 0;
};

// A satisfying point, a resolution refutation (empty when proof logging is
// off), or a resource-cap verdict.
using SatResult = std::variant< Point, ResolutionProof, BudgetExceeded >;

struct SolveStats
{
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
};

// Fresh CDCL search over f and the assumption units. Deterministic for equal
// inputs and equal policy state.
SatResult solve( const Cnf& f, std::span< const Lit > assumptions, PhasePolicy& policy, const SolveOptions& options = {},
                 SolveStats* stats = nullptr );

inline SatResult solve( const Cnf& f, const SolveOptions& options = {} )
{
    SavedPhasePolicy policy;
    return solve( f, {}, policy, options );
}

inline bool is_sat( const SatResult& r ) { return std::holds_alternative< Point >( r ); }
inline bool is_unsat( const SatResult& r ) { return std::holds_alternative< ResolutionProof >( r ); }
inline bool is_unknown( const SatResult& r ) { return std::holds_alternative< BudgetExceeded >( r ); }

} // namespace tapseq
