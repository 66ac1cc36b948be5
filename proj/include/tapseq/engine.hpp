#pragma once

#include "tapseq/aiger.hpp"
#include "tapseq/boundary.hpp"
#include "tapseq/encoder.hpp"
#include "tapseq/resolution.hpp"
#include "tapseq/trace.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>

namespace tapseq
{

enum class ExploreOrder : std::uint8_t
{
    // Lowest time frame first, FIFO within a frame.
    bfs,
    // Highest time frame first, FIFO within a frame.
    dfs,
};

struct StateRecord
{
    State state;
    std::size_t frame = 0;
    std::optional< State > parent;
    std::optional< InputVector > input_from_parent;
};

// All visited states with their parent links, plus the active states still
// waiting to be processed.
class StateStore
{
public:
    explicit StateStore( ExploreOrder order = ExploreOrder::bfs ) : order_( order ) {}

    void insert_initial( const State& state );
    // Inserts state as a successor of parent under input. Returns false if the
    // state was already visited.
    bool insert( const State& state, const State& parent, const InputVector& input );

    // Removes and returns the next active state.
    std::optional< State > pop();

    const StateRecord* find( const State& state ) const;
    bool contains( const State& state ) const { return records_.count( state ) != 0; }
    const StateRecord& record( const State& state ) const;

    std::size_t size() const { return records_.size(); }
    std::size_t active_size() const { return active_count_; }
    std::size_t max_frame() const { return max_frame_; }

    // Visited states in insertion order.
    const std::vector< State >& insertion_order() const { return order_of_insertion_; }

private:
    void activate( const State& state, std::size_t frame );

    ExploreOrder order_;
    std::unordered_map< State, StateRecord > records_;
    std::map< std::size_t, std::deque< State > > active_;
    std::size_t active_count_ = 0;
    std::size_t max_frame_ = 0;
    std::vector< State > order_of_insertion_;
};

// Hooks into the engine loop, for dumps and for tests.
class EngineObserver
{
public:
    virtual ~EngineObserver() = default;
    virtual void on_pop( const StateRecord& ) {}
    virtual void on_step_formula( const StateRecord&, const StepFormula& ) {}
    virtual void on_proof( const StateRecord&, const StepFormula&, const ResolutionProof& ) {}
    virtual void on_boundary_point( const StateRecord&, const StepFormula&, const BoundaryPoint&, bool /*inserted*/ ) {}
};

struct EngineConfig
{
    std::size_t max_states = 40'000;
    double time_limit_s = 180;
    ExploreOrder order = ExploreOrder::bfs;
    // Random phase on every 10th decision of the boundary-point searches.
    bool randomize = false;
    std::uint64_t seed = 0;
    std::uint64_t conflict_limit = 10'000;
    bool trim_proofs = true;
    // Present-state bits stay as unit-pinned variables so proofs can resolve
    // on them.
    EncodeOptions encoding{ .substitute_state = false };
    EngineObserver* observer = nullptr;
};

// Adds the successor of curr under the point's inputs. Returns true if the
// successor is a new state.
bool update_states( StateStore& store, const BoundaryPoint& p, const VarMap& map, const State& curr,
                    const AigModel& model );

// Walks parent links from `last` back to the initial state. With `tail`, the
// trace continues from `last` under tail->second into tail->first, which need
// not be stored. Every hop is re-simulated.
Counterexample reconstruct_trace( const AigModel& model, const StateStore& store, const State& last,
                                  const InputVector& final_input,
                                  const std::optional< std::pair< State, InputVector > >& tail = std::nullopt );

Verdict run_tapseq( const AigModel& model, const EngineConfig& config = {} );

} // namespace tapseq
