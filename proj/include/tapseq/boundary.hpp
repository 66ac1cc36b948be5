#pragma once

#include "tapseq/bits.hpp"
#include "tapseq/cnf.hpp"
#include "tapseq/encoder.hpp"
#include "tapseq/resolution.hpp"
#include "tapseq/sat.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace tapseq
{

// A point falsifying F such that every falsified clause contains the pivot.
struct BoundaryPoint
{
    Point point;
    Var pivot = 0;
    // Index of the proof step whose resolvent the point falsifies.
    std::size_t step = 0;
    // Number of clauses of F the point falsifies (all contain the pivot).
    std::size_t falsified_clauses = 0;
};

// True iff p falsifies f and every clause of f falsified by p contains v.
bool is_boundary_point( const Cnf& f, const Point& p, Var v );

enum class ClauseEncodingOutcome : std::uint8_t
{
    found,
    // F \ F^v together with the negation of the resolvent is unsatisfiable.
    no_point,
    budget_exceeded,
    // The candidate failed the boundary re-check after the pivot overwrite.
    rejected,
};

struct ClauseEncoding
{
    ClauseEncodingOutcome outcome = ClauseEncodingOutcome::no_point;
    std::optional< BoundaryPoint > point;
};

// Searches for a v-boundary point of f falsifying c by solving
// (f minus the clauses containing v) plus the negated literals of c. A pivot
// that is a present-state variable takes its value from map.present_state.
ClauseEncoding enc_clause( const Cnf& f, const Clause& c, Var v, const VarMap& map, PhasePolicy& policy,
                           std::uint64_t conflict_limit = 10'000 );

struct EncodedPoint
{
    Point point;
    Var pivot = 0;
    // Proof steps this point was produced for.
    std::vector< std::size_t > steps;
    // The pivot flip of this point is implicitly part of the encoding.
    bool flip_marked = false;
};

// Deduplicated set of points encoding (part of) a resolution proof.
class PointEncoding
{
public:
    // Returns true if the point was not present before.
    bool add( const Point& point, Var pivot, std::size_t step, bool mark_flip );

    const std::vector< EncodedPoint >& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    // Materialized points plus the marked flips.
    std::vector< Point > expanded() const;

private:
    std::vector< EncodedPoint > points_;
    std::unordered_map< Point, std::size_t > index_;
};

struct EncodingStats
{
    std::uint64_t steps_encoded = 0;
    std::uint64_t points_found = 0;
    std::uint64_t duplicate_points = 0;
    std::uint64_t no_point_steps = 0;
    std::uint64_t budget_steps = 0;
    // Candidates discarded by the boundary re-check.
    std::uint64_t rejected_candidates = 0;
    // Steps on present-state pivots; their flips are not part of the encoding.
    std::uint64_t state_pivot_steps = 0;
    std::uint64_t sat_calls = 0;
};

struct EncodingOptions
{
    std::uint64_t conflict_limit = 10'000;
    // Polled before each step; returning true ends the encoding early.
    std::function< bool() > stop;
};

// Walks the proof in order and materializes one boundary point per step where
// one exists. on_point sees each new (deduplicated) point as it is found.
PointEncoding enc_resolutions( const Cnf& f, const ResolutionProof& proof, const VarMap& map, PhasePolicy& policy,
                               const EncodingOptions& options,
                               const std::function< void( const BoundaryPoint& ) >& on_point,
                               EncodingStats* stats = nullptr );

// Resolving c1 and c2 on v is legal w.r.t. the encoding if two of its points
// (marked flips included) falsify c1 and c2 respectively and differ only in v.
bool is_legal_resolution( const PointEncoding& encoding, const Clause& c1, const Clause& c2, Var v );
bool is_legal_resolution( const std::vector< Point >& points, const Clause& c1, const Clause& c2, Var v );

// Deduplicated projections of the encoding's points onto the inputs.
std::set< InputVector > project_tests( const PointEncoding& encoding, const VarMap& map );

} // namespace tapseq
