#include "petersburg/cli.hpp"

#include "petersburg/analytics.hpp"
#include "petersburg/evaluator.hpp"
#include "petersburg/io.hpp"
#include "petersburg/oracles.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <set>
#include <thread>

namespace petersburg::cli {

namespace {

using io::Json;

/// Bad flag values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string output = "-";
    int precision = 12;
    unsigned threads = 1;
};

struct StrategyOptions {
    std::string kind = "martingale";
    std::string base_bet = "1";
    std::string bet;
    std::string win_prob;
};

struct SweepOptions {
    long long l_min = 10;
    long long l_max = 200;
    long long step = 1;
    std::string format = "csv";
};

struct SimulateOptions {
    StrategyOptions strategy;
    long long flips = -1;
    long long trials = 1;
    std::uint64_t seed = 0;
    long long emit = 1000;
};

struct EnumerateOptions {
    StrategyOptions strategy;
    long long flips = -1;
};

struct EvaluateOptions {
    std::vector<std::string> inputs;
    double alpha = kDefaultAlpha;
    std::string baseline = "auto";
};

Rational parse_amount(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string{flag} + ": " + e.what());
    }
}

StrategySpec build_strategy(const StrategyOptions& o) {
    if (o.kind == "martingale") return StrategySpec::martingale(parse_amount(o.base_bet, "--base-bet"));
    if (o.bet.empty()) throw UsageError("--bet is required for strategy " + o.kind);
    const Rational bet = parse_amount(o.bet, "--bet");
    if (o.kind == "constant-random") return StrategySpec::constant_random(bet);
    if (o.win_prob.empty()) throw UsageError("--win-prob is required for strategy synthetic-edge");
    return StrategySpec::synthetic_edge(bet, parse_amount(o.win_prob, "--win-prob"));
}

void add_strategy_flags(CLI::App& app, StrategyOptions& o, std::vector<std::string> kinds) {
    app.add_option("--strategy", o.kind, "Betting strategy")->check(CLI::IsMember(std::move(kinds)));
    app.add_option("--base-bet", o.base_bet, "Martingale base bet (exact: 1, 0.5, 13/4)");
    app.add_option("--bet", o.bet, "Constant bet for constant-random / synthetic-edge");
}

void add_common_flags(CLI::App& app, CommonOptions& c) {
    app.add_option("--output,-o", c.output, "Output path, '-' for stdout");
    app.add_option("--precision", c.precision, "Significant digits for decimal columns")->check(CLI::Range(1, 40));
    app.add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
}

void emit(const CommonOptions& c, std::string_view content, std::ostream& out) {
    if (c.output == "-") {
        out << content;
        out.flush();
    } else {
        io::write_file(c.output, content);
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void merge_into(Json& target, const Json& source) {
    for (const auto& [key, value] : source.items()) target[key] = value;
}

std::string run_sweep(const SweepOptions& o, const CommonOptions& c) {
    if (o.l_min < 1) throw UsageError("--l-min must be at least 1");
    if (o.l_max < o.l_min) throw UsageError("--l-max must be at least --l-min");
    if (o.step < 1) throw UsageError("--step must be at least 1");
    const auto rows = sweep(static_cast<std::size_t>(o.l_min), static_cast<std::size_t>(o.l_max),
                            static_cast<std::size_t>(o.step), c.threads);
    if (o.format == "json") return dump(io::sweep_json(rows, c.precision));
    return io::sweep_csv(rows, c.precision);
}

std::string run_simulate(const SimulateOptions& o, const CommonOptions& c) {
    if (o.flips < 0) throw UsageError("--flips must be non-negative");
    if (o.trials < 1) throw UsageError("--trials must be at least 1");
    if (o.emit < 0) throw UsageError("--emit must be non-negative");
    const StrategySpec spec = build_strategy(o.strategy);
    if (o.flips == 0) throw DomainError("simulate: L = 0 has no average bet");
    const auto flips = static_cast<std::size_t>(o.flips);
    const auto trials = static_cast<std::size_t>(o.trials);

    const MonteCarloSummary summary = monte_carlo(spec, flips, trials, o.seed, c.threads);

    Json doc;
    doc["command"] = "simulate";
    doc["strategy"] = io::strategy_to_json(spec);
    doc["flips"] = flips;
    doc["trials"] = trials;
    doc["seed"] = o.seed;
    Json trajectories = Json::array();
    const auto shown = std::min<std::size_t>(trials, static_cast<std::size_t>(o.emit));
    for (std::size_t i = 0; i < shown; ++i) {
        const std::uint64_t seed = trial_seed(o.seed, i);
        Json t;
        t["trial"] = i;
        t["seed"] = seed;
        merge_into(t, io::trajectory_to_json(play(spec, flips, seed)));
        trajectories.push_back(std::move(t));
    }
    doc["trajectories"] = std::move(trajectories);
    doc["summary"] = io::monte_carlo_to_json(summary, c.precision);
    return dump(doc);
}

std::string run_enumerate(const EnumerateOptions& o, const CommonOptions& c) {
    if (o.flips < 0) throw UsageError("--flips must be non-negative");
    const StrategySpec spec = build_strategy(o.strategy);
    const auto flips = static_cast<std::size_t>(o.flips);
    const EnumerationSummary s = enumerate(spec, flips);

    Json doc;
    doc["command"] = "enumerate";
    doc["strategy"] = io::strategy_to_json(spec);
    merge_into(doc, io::enumeration_to_json(s, c.precision));
    if (std::holds_alternative<Martingale>(spec.kind()))
        doc["closed_form_average_bet"] = to_fraction_string(expected_average_bet(spec, flips));
    return dump(doc);
}

std::string run_evaluate(const EvaluateOptions& o, const CommonOptions& c) {
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie strictly inside (0, 1)");
    std::vector<io::LoadedTrajectory> loaded;
    for (const auto& path : o.inputs) {
        auto batch = io::parse_trajectory_document(io::read_file(path), path);
        std::move(batch.begin(), batch.end(), std::back_inserter(loaded));
    }

    const bool use_strategy = o.baseline == "auto";
    std::vector<EvaluationReport> reports;
    reports.reserve(loaded.size());
    Json items = Json::array();
    for (const auto& item : loaded) {
        if (item.trajectory.length() == 0)
            throw io::FormatError(item.source + ": empty trajectory cannot be evaluated");
        EvaluationReport r = use_strategy && item.strategy
                                 ? random_equivalence_pvalue(item.trajectory, *item.strategy)
                                 : random_equivalence_pvalue(item.trajectory);
        r = classify(std::move(r), o.alpha);
        Json j;
        j["source"] = item.source;
        merge_into(j, io::report_to_json(r, c.precision));
        items.push_back(std::move(j));
        reports.push_back(std::move(r));
    }

    Json doc;
    doc["command"] = "evaluate";
    doc["alpha"] = to_decimal(o.alpha, c.precision);
    doc["baseline"] = o.baseline;
    doc["reports"] = std::move(items);
    const auto medians = median_by_length(reports);
    Json median_json = Json::array();
    for (const auto& m : medians)
        median_json.push_back(Json{{"flips", m.flips},
                                   {"count", m.count},
                                   {"median_p_random", m.median.to_fraction_string()},
                                   {"median_p_random_decimal", to_decimal(m.median.value(), c.precision)}});
    doc["medians"] = std::move(median_json);
    if (medians.size() > 1) doc["trend"] = io::trend_to_json(trend(reports, o.alpha), c.precision);
    return dump(doc);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Martingale strategy analytics, oracles and random-equivalence evaluation", "petersburg"};
    app.require_subcommand(1);

    CommonOptions common;
    SweepOptions sweep_opts;
    SimulateOptions sim_opts;
    EnumerateOptions enum_opts;
    EvaluateOptions eval_opts;

    auto* sweep_cmd = app.add_subcommand("sweep", "Exact beat probability of the constant-AB random baseline over a range of L");
    sweep_cmd->add_option("--l-min", sweep_opts.l_min, "Smallest L");
    sweep_cmd->add_option("--l-max", sweep_opts.l_max, "Largest L");
    sweep_cmd->add_option("--step", sweep_opts.step, "L increment");
    sweep_cmd->add_option("--format", sweep_opts.format)->check(CLI::IsMember({"csv", "json"}));
    add_common_flags(*sweep_cmd, common);

    auto* sim_cmd = app.add_subcommand("simulate", "Seeded play-throughs with full trajectories and a Monte Carlo summary");
    add_strategy_flags(*sim_cmd, sim_opts.strategy, {"martingale", "constant-random", "synthetic-edge"});
    sim_cmd->add_option("--win-prob", sim_opts.strategy.win_prob, "Win probability for synthetic-edge (exact)");
    sim_cmd->add_option("--flips", sim_opts.flips, "Flips per trajectory (L)")->required();
    sim_cmd->add_option("--trials", sim_opts.trials, "Number of trajectories");
    sim_cmd->add_option("--seed", sim_opts.seed, "Master seed")->required();
    sim_cmd->add_option("--emit", sim_opts.emit, "Write full records for the first N trials");
    add_common_flags(*sim_cmd, common);

    auto* enum_cmd = app.add_subcommand("enumerate", "Exhaustive expectation over all 2^L outcome sequences");
    add_strategy_flags(*enum_cmd, enum_opts.strategy, {"martingale", "constant-random"});
    enum_cmd->add_option("--flips", enum_opts.flips, "Flips (L <= 22)")->required();
    add_common_flags(*enum_cmd, common);

    auto* eval_cmd = app.add_subcommand("evaluate", "Random-equivalence p-values for trajectory files written by simulate");
    eval_cmd->add_option("inputs", eval_opts.inputs, "Trajectory files")->required();
    eval_cmd->add_option("--alpha", eval_opts.alpha, "Significance level");
    eval_cmd->add_option("--baseline", eval_opts.baseline,
                         "auto: match the declared strategy's expected average bet; realized: the trajectory's own")
        ->check(CLI::IsMember({"auto", "realized"}));
    add_common_flags(*eval_cmd, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    if (common.threads == 0) common.threads = std::max(1U, std::thread::hardware_concurrency());

    try {
        std::string content;
        if (sweep_cmd->parsed())
            content = run_sweep(sweep_opts, common);
        else if (sim_cmd->parsed())
            content = run_simulate(sim_opts, common);
        else if (enum_cmd->parsed())
            content = run_enumerate(enum_opts, common);
        else
            content = run_evaluate(eval_opts, common);
        emit(common, content, out);
        return kSuccess;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const io::FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
}

}  // namespace petersburg::cli
