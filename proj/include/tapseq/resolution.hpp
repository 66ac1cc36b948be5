#pragma once

#include "tapseq/cnf.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tapseq
{

// Reference to a clause in a proof: an input clause or an earlier step.
struct ProofRef
{
    enum class kind : std::uint8_t
    {
        input,
        step,
    };

    kind k = kind::input;
    std::uint32_t index = 0;

    static ProofRef input( std::uint32_t i ) { return { kind::input, i }; }
    static ProofRef step( std::uint32_t i ) { return { kind::step, i }; }

    bool is_input() const { return k == kind::input; }

    friend bool operator==( const ProofRef&, const ProofRef& ) = default;
};

struct ResolutionStep
{
    Clause resolvent;
    Var pivot = 0;
    ProofRef left;
    ProofRef right;
};

struct ResolutionProof
{
    // The refuted clause set: the formula's clauses followed by one unit
    // clause per assumption.
    std::vector< Clause > input_clauses;
    std::vector< ResolutionStep > steps;
    // The empty clause. Normally the last step; an input clause when the
    // formula itself contains the empty clause.
    ProofRef conclusion;

    const Clause& clause( ProofRef ref ) const
    {
        return ref.is_input() ? input_clauses.at( ref.index ) : steps.at( ref.index ).resolvent;
    }
};

class resolution_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Resolvent of c1 and c2 on v. Throws resolution_error unless one clause has
// v and the other ~v and no other variable occurs with opposite signs.
Clause resolve( const Clause& c1, const Clause& c2, Var v );

struct ProofCheck
{
    bool ok = false;
    std::string diagnostic;

    explicit operator bool() const { return ok; }
};

// Valid iff the inputs are exactly f plus the assumption units, every step
// resolves earlier clauses on its pivot to its recorded resolvent, and the
// conclusion is the empty clause.
ProofCheck check_proof( const Cnf& f, const ResolutionProof& proof, std::span< const Lit > assumptions = {} );

// Keeps only the steps the conclusion depends on, in their original order.
ResolutionProof trim_proof( const ResolutionProof& proof );

// Line-oriented proof text. Input clauses are numbered 1..n and steps n+1..;
// each step is written as "sid <pivot> <parent> <parent> : <lits> 0".
std::string write_proof( const ResolutionProof& proof );
// Parses write_proof output against the given input clauses.
ResolutionProof parse_proof( std::string_view text, std::vector< Clause > input_clauses );

} // namespace tapseq
