#include "petersburg/io.hpp"

#include <fstream>
#include <sstream>

namespace petersburg::io {

namespace {

Json rational(const Rational& r) { return to_fraction_string(r); }

Rational rational_field(const Json& object, const char* key, const std::string& path) {
    if (!object.contains(key)) throw FormatError(path + ": missing field '" + key + "'");
    const Json& v = object.at(key);
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return parse_rational(v.dump());
    } catch (const std::invalid_argument& e) {
        throw FormatError(path + "." + key + ": " + e.what());
    }
    throw FormatError(path + "." + key + ": expected an exact number string like \"13/4\"");
}

FlipOutcome side_field(const Json& object, const char* key, const std::string& path) {
    if (!object.contains(key) || !object.at(key).is_string())
        throw FormatError(path + ": field '" + key + "' must be \"H\" or \"T\"");
    const auto s = object.at(key).get<std::string>();
    if (s != "H" && s != "T") throw FormatError(path + "." + key + ": expected \"H\" or \"T\", got \"" + s + "\"");
    return flip_from_char(s[0]);
}

}  // namespace

Json strategy_to_json(const StrategySpec& spec) {
    Json j;
    j["kind"] = spec.name();
    if (const auto* m = std::get_if<Martingale>(&spec.kind())) {
        j["base_bet"] = rational(m->base_bet);
    } else if (const auto* c = std::get_if<ConstantRandom>(&spec.kind())) {
        j["bet"] = rational(c->bet);
    } else {
        const auto& e = std::get<SyntheticEdge>(spec.kind());
        j["bet"] = rational(e.bet);
        j["win_prob"] = rational(e.win_prob);
    }
    return j;
}

StrategySpec strategy_from_json(const Json& j) {
    const std::string path = "strategy";
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw FormatError(path + ": expected an object with a string 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    try {
        if (kind == "martingale") return StrategySpec::martingale(rational_field(j, "base_bet", path));
        if (kind == "constant-random") return StrategySpec::constant_random(rational_field(j, "bet", path));
        if (kind == "synthetic-edge")
            return StrategySpec::synthetic_edge(rational_field(j, "bet", path), rational_field(j, "win_prob", path));
    } catch (const DomainError& e) {
        throw FormatError(path + ": " + e.what());
    }
    throw FormatError(path + ".kind: unknown strategy \"" + kind + "\"");
}

Json trajectory_to_json(const Trajectory& t) {
    Json j;
    j["length"] = t.length();
    Json records = Json::array();
    for (const auto& r : t.records()) {
        Json rec;
        rec["index"] = r.index;
        rec["bet"] = rational(r.bet);
        rec["call"] = std::string(1, to_char(r.call));
        rec["outcome"] = std::string(1, to_char(r.outcome));
        rec["won"] = r.won;
        rec["cumulative_gain"] = rational(r.cumulative_gain);
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    j["total_staked"] = rational(t.total_staked());
    j["average_bet"] = t.length() > 0 ? rational(t.average_bet()) : Json(nullptr);
    j["final_gain"] = rational(t.final_gain());
    j["win_count"] = t.win_count();
    return j;
}

Json monte_carlo_to_json(const MonteCarloSummary& s, int precision) {
    Json j;
    j["trials"] = s.trials;
    j["flips"] = s.flips;
    j["master_seed"] = s.master_seed;
    j["expected_value"] = rational(expected_value(s.flips));
    j["mean_gain"] = to_decimal(s.mean_gain, precision);
    j["mean_gain_exact"] = rational(s.mean_gain);
    j["mean_average_bet"] = to_decimal(s.mean_average_bet, precision);
    j["mean_average_bet_exact"] = rational(s.mean_average_bet);
    j["beat_frequency"] = to_decimal(s.beat_frequency, precision);
    j["beat_frequency_exact"] = rational(s.beat_frequency);
    j["standard_error"] = to_decimal(s.standard_error, precision);
    j["gain_sample_se"] = to_decimal(s.gain_sample_se, precision);
    j["average_bet_sample_se"] = to_decimal(s.average_bet_sample_se, precision);
    j["expected_gain_exact"] = rational(s.exact.mean_gain);
    j["expected_average_bet_exact"] = rational(s.exact.mean_average_bet);
    j["gain_exact_se"] = to_decimal(s.gain_exact_se, precision);
    j["average_bet_exact_se"] = to_decimal(s.average_bet_exact_se, precision);
    return j;
}

Json enumeration_to_json(const EnumerationSummary& s, int precision) {
    Json j;
    j["flips"] = s.flips;
    j["sequences"] = pow2(static_cast<unsigned long>(s.flips)).get_str();
    j["expected_gain"] = rational(s.expected_gain);
    j["expected_value"] = rational(expected_value(s.flips));
    j["expected_average_bet"] = rational(s.expected_average_bet);
    j["expected_average_bet_decimal"] = to_decimal(s.expected_average_bet, precision);
    j["beat_fraction"] = s.beat_fraction.to_fraction_string();
    j["beat_fraction_decimal"] = to_decimal(s.beat_fraction.value(), precision);
    Json dist = Json::array();
    for (const auto& [gain, p] : s.gain_distribution)
        dist.push_back(Json{{"gain", rational(gain)}, {"probability", p.to_fraction_string()}});
    j["gain_distribution"] = std::move(dist);
    return j;
}

Json report_to_json(const EvaluationReport& r, int precision) {
    Json j;
    j["flips"] = r.flips;
    j["observed_gain"] = rational(r.observed_gain);
    j["matched_bet"] = rational(r.matched_bet);
    j["realized_average_bet"] = rational(r.realized_average_bet);
    j["baseline"] = to_string(r.baseline);
    j["required_wins"] = r.required_wins;
    j["p_random"] = r.p_random.to_fraction_string();
    j["p_random_decimal"] = to_decimal(r.p_random.value(), precision);
    j["alpha"] = r.alpha ? Json(to_decimal(*r.alpha, precision)) : Json(nullptr);
    j["verdict"] = r.verdict ? Json(to_string(*r.verdict)) : Json(nullptr);
    return j;
}

Json trend_to_json(const TrendReport& t, int precision) {
    Json points = Json::array();
    for (const auto& p : t.points)
        points.push_back(Json{{"flips", p.flips}, {"p_random", to_decimal(p.p_random, precision)}});
    return Json{{"points", std::move(points)}, {"slope_class", to_string(t.slope_class)}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows, int precision) {
    std::string out = "L,average_bet,expected_value,win_threshold,beat_probability,beat_probability_exact\n";
    for (const auto& r : rows) {
        out += std::to_string(r.flips) + ',' + to_decimal(r.average_bet, precision) + ',' +
               to_decimal(r.expected_value, precision) + ',' + std::to_string(r.win_threshold) + ',' +
               to_decimal(r.beat_probability.value(), precision) + ',' + r.beat_probability.to_fraction_string() +
               '\n';
    }
    return out;
}

Json sweep_json(const std::vector<SweepRow>& rows, int precision) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json j;
        j["L"] = r.flips;
        j["average_bet"] = to_decimal(r.average_bet, precision);
        j["expected_value"] = to_decimal(r.expected_value, precision);
        j["win_threshold"] = r.win_threshold;
        j["beat_probability"] = to_decimal(r.beat_probability.value(), precision);
        j["beat_probability_exact"] = r.beat_probability.to_fraction_string();
        arr.push_back(std::move(j));
    }
    return Json{{"rows", std::move(arr)}};
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte_offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::vector<LoadedTrajectory> parse_trajectory_document(std::string_view text, const std::string& source_name) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports the offset one past the offending byte.
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw FormatError(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": invalid JSON (" + e.what() + ")");
    }
    if (!doc.is_object() || !doc.contains("trajectories") || !doc.at("trajectories").is_array())
        throw FormatError(source_name + ": expected an object with a 'trajectories' array");
    const Json& items = doc.at("trajectories");
    if (items.empty()) throw FormatError(source_name + ": 'trajectories' is empty");

    std::optional<StrategySpec> document_strategy;
    if (doc.contains("strategy")) document_strategy = strategy_from_json(doc.at("strategy"));

    std::vector<LoadedTrajectory> out;
    for (std::size_t t = 0; t < items.size(); ++t) {
        const std::string path = source_name + ": trajectories[" + std::to_string(t) + "]";
        const Json& item = items[t];
        if (!item.is_object() || !item.contains("records") || !item.at("records").is_array())
            throw FormatError(path + ": expected an object with a 'records' array");
        std::vector<BetRecord> records;
        const Json& recs = item.at("records");
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const std::string rpath = path + ".records[" + std::to_string(i) + "]";
            const Json& r = recs[i];
            if (!r.is_object()) throw FormatError(rpath + ": expected an object");
            BetRecord rec;
            if (!r.contains("index") || !r.at("index").is_number_unsigned())
                throw FormatError(rpath + ": 'index' must be a positive integer");
            rec.index = r.at("index").get<std::size_t>();
            rec.bet = rational_field(r, "bet", rpath);
            rec.call = side_field(r, "call", rpath);
            rec.outcome = side_field(r, "outcome", rpath);
            if (!r.contains("won") || !r.at("won").is_boolean())
                throw FormatError(rpath + ": 'won' must be a boolean");
            rec.won = r.at("won").get<bool>();
            rec.cumulative_gain = rational_field(r, "cumulative_gain", rpath);
            records.push_back(std::move(rec));
        }
        Trajectory trajectory{std::move(records)};
        try {
            trajectory.validate();
        } catch (const DomainError& e) {
            throw FormatError(path + ": " + e.what());
        }
        if (item.contains("length") && item.at("length") != trajectory.length())
            throw FormatError(path + ": 'length' disagrees with the number of records");
        if (item.contains("final_gain") && rational_field(item, "final_gain", path) != trajectory.final_gain())
            throw FormatError(path + ": 'final_gain' disagrees with the records");

        std::optional<StrategySpec> strategy = document_strategy;
        if (item.contains("strategy")) strategy = strategy_from_json(item.at("strategy"));
        std::string source = source_name + "#" + std::to_string(t);
        out.push_back({std::move(source), std::move(trajectory), std::move(strategy)});
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace petersburg::io
