// Command-line front end: single runs, witness validation and batch runs.
//
// Exit status: 10 when a counterexample is found, 0 for any other finished
// run, 1 on usage errors, 2 when the model cannot be loaded.

#include "tapseq/baselines.hpp"
#include "tapseq/engine.hpp"
#include "tapseq/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace tapseq;

namespace
{

constexpr int exit_bug = 10;
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_model = 2;

struct RunSpec
{
    std::string input;
    std::string mode = "tapseq";
    std::string order = "bfs";
    bool randomize = false;
    std::uint64_t seed = 0;
    std::size_t max_states = 40'000;
    std::uint64_t max_tries = 10'000;
    std::uint64_t max_length = 100;
    std::size_t max_depth = 100;
    double time_limit = 180;
    std::size_t property = 0;
    bool no_trim = false;
    std::string witness_path;
    std::string stats_path;
    std::string dump_cnf;
    std::string dump_proof;
    std::string dump_points;
};

class model_load_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

AigModel load_model( const std::string& path, std::size_t property )
{
    try
    {
        return read_aiger_file( path, property );
    }
    catch ( const std::exception& e )
    {
        throw model_load_error( path + ": " + e.what() );
    }
}

// Writes the engine's intermediate artifacts as it runs.
class DumpObserver final : public EngineObserver
{
public:
    DumpObserver( const RunSpec& spec )
    {
        open( cnf_, spec.dump_cnf );
        open( proof_, spec.dump_proof );
        open( points_, spec.dump_points );
    }

    void on_step_formula( const StateRecord& rec, const StepFormula& f ) override
    {
        if ( cnf_.is_open() )
            cnf_ << "c state " << rec.state.to_string() << " frame " << rec.frame << '\n' << write_dimacs( f.cnf );
    }

    void on_proof( const StateRecord& rec, const StepFormula&, const ResolutionProof& proof ) override
    {
        if ( proof_.is_open() )
            proof_ << "c state " << rec.state.to_string() << '\n' << write_proof( proof );
    }

    void on_boundary_point( const StateRecord& rec, const StepFormula&, const BoundaryPoint& bp,
                            bool inserted ) override
    {
        if ( !points_.is_open() )
            return;
        points_ << "state " << rec.state.to_string() << " step " << bp.step << " pivot " << bp.pivot << " falsified "
                << bp.falsified_clauses << " new " << ( inserted ? 1 : 0 ) << " point ";
        for ( Var v = 1; v <= bp.point.var_count(); ++v )
            points_ << ( bp.point.value( v ) ? '1' : '0' );
        points_ << '\n';
    }

private:
    static void open( std::ofstream& out, const std::string& path )
    {
        if ( path.empty() )
            return;
        out.open( path );
        if ( !out )
            throw std::runtime_error( "cannot write " + path );
    }

    std::ofstream cnf_;
    std::ofstream proof_;
    std::ofstream points_;
};

struct Outcome
{
    // bug, converged, budget_exhausted, or unreachable/inconclusive for the
    // oracle.
    std::string verdict;
    std::optional< Counterexample > counterexample;
    RunStats stats;
    double seconds = 0;
    // Row value for batch output.
    std::uint64_t states = 0;
};

Outcome from_verdict( Verdict v, const char* states_key )
{
    Outcome out;
    out.verdict = std::string( to_string( v.kind ) );
    out.counterexample = std::move( v.counterexample );
    out.stats = std::move( v.stats );
    out.seconds = v.seconds;
    out.states = out.stats.get( states_key );
    return out;
}

Outcome run_mode( const AigModel& model, const RunSpec& spec )
{
    if ( spec.mode == "tapseq" )
    {
        EngineConfig config;
        config.max_states = spec.max_states;
        config.time_limit_s = spec.time_limit;
        config.order = spec.order == "dfs" ? ExploreOrder::dfs : ExploreOrder::bfs;
        config.randomize = spec.randomize;
        config.seed = spec.seed;
        config.trim_proofs = !spec.no_trim;
        std::unique_ptr< DumpObserver > dumps;
        if ( !spec.dump_cnf.empty() || !spec.dump_proof.empty() || !spec.dump_points.empty() )
        {
            dumps = std::make_unique< DumpObserver >( spec );
            config.observer = dumps.get();
        }
        return from_verdict( run_tapseq( model, config ), "states_visited" );
    }
    if ( spec.mode == "rand" )
    {
        RandConfig config;
        config.max_tries = spec.max_tries;
        config.max_length = spec.max_length;
        config.seed = spec.seed;
        config.time_limit_s = spec.time_limit;
        return from_verdict( run_rand( model, config ), "steps" );
    }
    if ( spec.mode == "bmc" )
    {
        BmcConfig config;
        config.max_depth = spec.max_depth;
        config.time_limit_s = spec.time_limit;
        return from_verdict( run_bmc( model, config ), "depths_refuted" );
    }

    const auto start = std::chrono::steady_clock::now();
    const auto result = explicit_oracle( model );
    Outcome out;
    switch ( result.verdict )
    {
    case OracleVerdict::reachable: out.verdict = "bug"; break;
    case OracleVerdict::unreachable: out.verdict = "unreachable"; break;
    case OracleVerdict::inconclusive: out.verdict = "inconclusive"; break;
    }
    out.counterexample = result.counterexample;
    out.stats.set( "states_explored", result.states_explored );
    if ( result.verdict == OracleVerdict::reachable )
        out.stats.set( "depth", result.depth );
    out.states = result.states_explored;
    out.seconds = std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
    return out;
}

void write_file( const std::string& path, const std::string& text )
{
    std::ofstream out( path, std::ios::binary );
    if ( !out )
        throw std::runtime_error( "cannot write " + path );
    out << text;
}

std::string read_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw std::runtime_error( "cannot open " + path );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// The stats file omits wall-clock time so equal runs give equal files.
std::string stats_text( const RunSpec& spec, const Outcome& out )
{
    std::ostringstream text;
    text << "mode=" << spec.mode << '\n' << "verdict=" << out.verdict << '\n';
    text << out.stats.to_key_values();
    if ( out.counterexample )
        text << "cex_length=" << out.counterexample->length() << '\n';
    return text.str();
}

int run_command( const RunSpec& spec )
{
    const auto model = load_model( spec.input, spec.property );
    const auto out = run_mode( model, spec );

    std::cerr << stats_text( spec, out );
    std::cerr << "seconds=" << out.seconds << '\n';
    if ( !spec.stats_path.empty() )
        write_file( spec.stats_path, stats_text( spec, out ) );

    if ( !out.counterexample )
        return exit_ok;
    const auto witness = write_witness( *out.counterexample, model.property_index );
    if ( const auto check = validate_witness( model, witness ); !check )
        throw std::logic_error( "emitted witness does not replay: " + check.diagnostic );
    if ( spec.witness_path.empty() )
        std::cout << witness;
    else
        write_file( spec.witness_path, witness );
    return exit_bug;
}

int validate_command( const std::string& model_path, const std::string& witness_path, std::size_t property )
{
    const auto model = load_model( model_path, property );
    const auto check = validate_witness( model, read_file( witness_path ) );
    if ( check )
    {
        std::cout << "valid\n";
        return exit_ok;
    }
    std::cout << "invalid: " << check.diagnostic << '\n';
    return exit_usage;
}

std::vector< std::string > split_modes( const std::string& text )
{
    std::vector< std::string > modes;
    std::stringstream in( text );
    std::string item;
    while ( std::getline( in, item, ',' ) )
        if ( !item.empty() )
            modes.push_back( item );
    return modes;
}

int batch_command( const RunSpec& base, const std::vector< std::string >& inputs, const std::string& modes,
                   const std::string& csv_path )
{
    std::vector< std::string > files;
    for ( const auto& input : inputs )
    {
        if ( fs::is_directory( input ) )
        {
            for ( const auto& entry : fs::directory_iterator( input ) )
            {
                const auto ext = entry.path().extension();
                if ( entry.is_regular_file() && ( ext == ".aag" || ext == ".aig" ) )
                    files.push_back( entry.path().string() );
            }
        }
        else
            files.push_back( input );
    }
    std::sort( files.begin(), files.end() );

    std::ostringstream csv;
    csv << "name,mode,verdict,states,cex_length,seconds\n";
    bool failures = false;
    for ( const auto& file : files )
    {
        for ( const auto& mode : split_modes( modes ) )
        {
            RunSpec spec = base;
            spec.input = file;
            spec.mode = mode;
            const auto name = fs::path( file ).stem().string();
            try
            {
                const auto model = load_model( file, spec.property );
                const auto out = run_mode( model, spec );
                if ( out.counterexample &&
                     !validate_witness( model, write_witness( *out.counterexample, model.property_index ) ) )
                    throw std::logic_error( "witness does not replay" );
                csv << name << ',' << mode << ',' << out.verdict << ',' << out.states << ','
                    << ( out.counterexample ? out.counterexample->length() : 0 ) << ',' << out.seconds << '\n';
            }
            catch ( const std::exception& e )
            {
                std::cerr << name << ": " << e.what() << '\n';
                csv << name << ',' << mode << ",error,0,0,0\n";
                failures = true;
            }
        }
    }
    if ( csv_path.empty() )
        std::cout << csv.str();
    else
        write_file( csv_path, csv.str() );
    return failures ? exit_model : exit_ok;
}

void add_budget_options( CLI::App& cmd, RunSpec& spec )
{
    cmd.add_option( "--order", spec.order, "State exploration order" )
        ->check( CLI::IsMember( { "bfs", "dfs" } ) )
        ->capture_default_str();
    cmd.add_flag( "--randomize", spec.randomize, "Random phase on every 10th boundary-point decision" );
    cmd.add_option( "--seed", spec.seed, "Seed for randomized modes" )->capture_default_str();
    cmd.add_option( "--max-states", spec.max_states, "TapSeq state budget" )
        ->check( CLI::PositiveNumber )
        ->capture_default_str();
    cmd.add_option( "--max-tries", spec.max_tries, "RandAlg walks" )->check( CLI::PositiveNumber )->capture_default_str();
    cmd.add_option( "--max-length", spec.max_length, "RandAlg walk length" )
        ->check( CLI::PositiveNumber )
        ->capture_default_str();
    cmd.add_option( "--max-depth", spec.max_depth, "BMC depth bound" )->check( CLI::PositiveNumber )->capture_default_str();
    cmd.add_option( "--time-limit", spec.time_limit, "Seconds per run, 0 for none" )
        ->check( CLI::NonNegativeNumber )
        ->capture_default_str();
    cmd.add_option( "--property", spec.property, "Index of the bad state or output to check" )->capture_default_str();
    cmd.add_flag( "--no-trim", spec.no_trim, "Encode untrimmed proofs" );
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "TapSeq: sequential bug hunting with proof-encoding test points" };
    app.require_subcommand( 1 );

    RunSpec spec;
    auto* run = app.add_subcommand( "run", "Check one AIGER model" );
    run->add_option( "model", spec.input, "AIGER file (.aag or .aig)" )->required();
    run->add_option( "--mode", spec.mode, "Engine" )
        ->check( CLI::IsMember( { "tapseq", "rand", "bmc", "oracle" } ) )
        ->capture_default_str();
    add_budget_options( *run, spec );
    run->add_option( "--witness", spec.witness_path, "Write the witness here instead of stdout" );
    run->add_option( "--stats", spec.stats_path, "Write key=value stats here" );
    run->add_option( "--dump-cnf", spec.dump_cnf, "Write every step formula as DIMACS" );
    run->add_option( "--dump-proof", spec.dump_proof, "Write every refutation" );
    run->add_option( "--dump-points", spec.dump_points, "Write every boundary point" );

    std::string model_path;
    std::string witness_path;
    std::size_t validate_property = 0;
    auto* validate = app.add_subcommand( "validate", "Replay a witness against a model" );
    validate->add_option( "model", model_path, "AIGER file" )->required();
    validate->add_option( "witness", witness_path, "Witness file" )->required();
    validate->add_option( "--property", validate_property, "Property index" );

    RunSpec batch_spec;
    std::vector< std::string > batch_inputs;
    std::string batch_modes = "tapseq";
    std::string csv_path;
    auto* batch = app.add_subcommand( "batch", "Run engines over many models and print a CSV table" );
    batch->add_option( "inputs", batch_inputs, "AIGER files or directories" )->required();
    batch->add_option( "--modes", batch_modes, "Comma-separated engines" )->capture_default_str();
    batch->add_option( "--csv", csv_path, "Write the table here instead of stdout" );
    add_budget_options( *batch, batch_spec );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        return app.exit( e ) == 0 ? exit_ok : exit_usage;
    }

    for ( const auto& mode : split_modes( batch_modes ) )
    {
        if ( mode != "tapseq" && mode != "rand" && mode != "bmc" && mode != "oracle" )
        {
            std::cerr << "unknown mode " << mode << '\n';
            return exit_usage;
        }
    }

    try
    {
        if ( *run )
            return run_command( spec );
        if ( *validate )
            return validate_command( model_path, witness_path, validate_property );
        return batch_command( batch_spec, batch_inputs, batch_modes, csv_path );
    }
    catch ( const model_load_error& e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_model;
    }
    catch ( const unsupported_model& e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_model;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
