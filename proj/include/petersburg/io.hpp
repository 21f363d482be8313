#pragma once

#include "petersburg/analytics.hpp"
#include "petersburg/engine.hpp"
#include "petersburg/evaluator.hpp"
#include "petersburg/oracles.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace petersburg::io {

using Json = nlohmann::ordered_json;

/// Malformed input file; the message carries a location ("file:line:col" or a JSON path).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json strategy_to_json(const StrategySpec& spec);
StrategySpec strategy_from_json(const Json& j);

Json trajectory_to_json(const Trajectory& t);
Json monte_carlo_to_json(const MonteCarloSummary& s, int precision);
Json enumeration_to_json(const EnumerationSummary& s, int precision);
Json report_to_json(const EvaluationReport& r, int precision);
Json trend_to_json(const TrendReport& t, int precision);

/// Header `L,average_bet,expected_value,win_threshold,beat_probability,beat_probability_exact`, `\n` endings.
std::string sweep_csv(const std::vector<SweepRow>& rows, int precision);
Json sweep_json(const std::vector<SweepRow>& rows, int precision);

/// A trajectory read back from a simulate document, with its declared generator if any.
struct LoadedTrajectory {
    std::string source;
    Trajectory trajectory;
    std::optional<StrategySpec> strategy;
};

/// Parses the document written by `simulate`. Throws FormatError with
/// `source_name:line:column` for syntax errors and a JSON path for schema errors.
std::vector<LoadedTrajectory> parse_trajectory_document(std::string_view text, const std::string& source_name);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte_offset);

}  // namespace petersburg::io
