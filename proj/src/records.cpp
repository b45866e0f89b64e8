#include "gomea/records.hpp"

#include <istream>
#include <ostream>

namespace gomea
{

using nlohmann::json;

std::string_view hill_climber_name(HillClimber hc)
{
    switch (hc)
    {
    case HillClimber::Off:
        return "off";
    case HillClimber::SingleIteration:
        return "sihc";
    case HillClimber::Exhaustive:
        return "ehc";
    }
    return "off";
}

HillClimber parse_hill_climber(std::string_view name)
{
    if (name == "off")
        return HillClimber::Off;
    if (name == "sihc")
        return HillClimber::SingleIteration;
    if (name == "ehc")
        return HillClimber::Exhaustive;
    throw ConfigError("unknown hill climber: " + std::string(name));
}

std::string_view measure_name(SimilarityMeasure measure)
{
    return measure == SimilarityMeasure::MutualInformation ? "mi" : "nmi";
}

SimilarityMeasure parse_measure(std::string_view name)
{
    if (name == "mi")
        return SimilarityMeasure::MutualInformation;
    if (name == "nmi")
        return SimilarityMeasure::NormalizedMutualInformation;
    throw ConfigError("unknown similarity measure: " + std::string(name));
}

std::string_view ordering_name(FosOrdering ordering)
{
    return ordering == FosOrdering::Random ? "random" : "ascending";
}

FosOrdering parse_ordering(std::string_view name)
{
    if (name == "random")
        return FosOrdering::Random;
    if (name == "ascending")
        return FosOrdering::AscendingSize;
    throw ConfigError("unknown FOS ordering: " + std::string(name));
}

namespace
{

Termination parse_termination(std::string_view name)
{
    for (auto t : {Termination::OptimumReached, Termination::EvaluationLimit, Termination::TimeLimit,
                   Termination::Converged, Termination::GenerationLimit})
    {
        if (termination_name(t) == name)
            return t;
    }
    throw std::invalid_argument("unknown termination: " + std::string(name));
}

template <typename T> json optional_json(const std::optional<T> &value)
{
    return value ? json(*value) : json(nullptr);
}

template <typename T> std::optional<T> optional_from(const json &j, const char *key)
{
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

} // namespace

json to_json(const SchemeConfig &config)
{
    return json{{"scheme", scheme_name(config.scheme)},
                {"population_size", optional_json(config.population_size)},
                {"hc", hill_climber_name(config.hill_climber)},
                {"tournament", config.tournament_selection},
                {"measure", measure_name(config.measure)},
                {"filter", config.filtered},
                {"order", ordering_name(config.ordering)},
                {"fi", config.flags.use_fi},
                {"eds", config.flags.use_eds},
                {"cgom", config.flags.conditional},
                {"lambda", config.lambda}};
}

SchemeConfig config_from_json(const json &j)
{
    SchemeConfig c;
    c.scheme = parse_scheme(j.at("scheme").get<std::string>());
    c.population_size = optional_from<std::size_t>(j, "population_size");
    c.hill_climber = parse_hill_climber(j.at("hc").get<std::string>());
    c.tournament_selection = j.at("tournament").get<bool>();
    c.measure = parse_measure(j.at("measure").get<std::string>());
    c.filtered = j.at("filter").get<bool>();
    c.ordering = parse_ordering(j.at("order").get<std::string>());
    c.flags.use_fi = j.at("fi").get<bool>();
    c.flags.use_eds = j.at("eds").get<bool>();
    c.flags.conditional = j.at("cgom").get<bool>();
    c.lambda = j.at("lambda").get<double>();
    return c;
}

json to_json(const RunRecord &r)
{
    return json{{"type", "run"},
                {"seed", r.seed},
                {"config", to_json(r.config)},
                {"problem", r.problem},
                {"length", r.length},
                {"evaluations", r.evaluations},
                {"wall_seconds", r.wall_seconds},
                {"success", r.success},
                {"best_fitness", r.best_fitness},
                {"termination", termination_name(r.termination)},
                {"generations", r.generations},
                {"population_size", optional_json(r.population_size)},
                {"structure_size", optional_json(r.structure_size)}};
}

RunRecord run_record_from_json(const json &j)
{
    RunRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = config_from_json(j.at("config"));
    r.problem = j.at("problem").get<std::string>();
    r.length = j.at("length").get<std::size_t>();
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.success = j.at("success").get<bool>();
    r.best_fitness = j.at("best_fitness").get<double>();
    r.termination = parse_termination(j.at("termination").get<std::string>());
    r.generations = j.at("generations").get<std::size_t>();
    r.population_size = optional_from<std::size_t>(j, "population_size");
    r.structure_size = optional_from<std::size_t>(j, "structure_size");
    return r;
}

json to_json(const OrderSummary &s)
{
    return json{{"count", s.count},           {"median", s.median},         {"lower", s.lower},
                {"upper", s.upper},           {"lower_rank", s.lower_rank}, {"upper_rank", s.upper_rank}};
}

json to_json(const BisectionResult &result, bool with_runs)
{
    json trials = json::array();
    for (const auto &t : result.trials)
    {
        json jt{{"population_size", t.population_size},
                {"success", t.success},
                {"runs_performed", t.runs.size()},
                {"median_evaluations", t.median_evaluations}};
        if (with_runs)
        {
            json runs = json::array();
            for (const auto &r : t.runs)
                runs.push_back(to_json(r));
            jt["runs"] = std::move(runs);
        }
        trials.push_back(std::move(jt));
    }
    json j{{"type", "bisection"}, {"solved", result.solved}, {"trials", std::move(trials)}};
    if (result.solved)
    {
        j["minimal_success_size"] = result.minimal_success_size;
        j["best_evals_size"] = result.best_evals_size;
        j["median_evaluations_at_best"] = result.median_evaluations_at_best;
    }
    else
    {
        j["minimal_success_size"] = nullptr;
        j["best_evals_size"] = nullptr;
        j["median_evaluations_at_best"] = nullptr;
    }
    return j;
}

json to_json(const SweepRow &row)
{
    json runs = json::array();
    for (const auto &r : row.records)
        runs.push_back(to_json(r));
    return json{{"type", "summary"},
                {"config", row.config},
                {"problem", row.problem},
                {"length", row.length},
                {"runs", row.runs},
                {"successes", row.successes},
                {"solved", row.solved},
                {"population_size", optional_json(row.population_size)},
                {"evaluations", row.evaluations ? to_json(*row.evaluations) : json(nullptr)},
                {"wall_seconds", row.wall_seconds ? to_json(*row.wall_seconds) : json(nullptr)},
                {"error", row.error.empty() ? json(nullptr) : json(row.error)},
                {"records", std::move(runs)}};
}

void write_sweep_csv_header(std::ostream &out)
{
    out << "config,problem,length,runs,successes,solved,population_size,"
           "evals_median,evals_lower,evals_upper,seconds_median,seconds_lower,seconds_upper,error\n";
}

void write_sweep_csv_row(std::ostream &out, const SweepRow &row)
{
    auto quoted = [](const std::string &s) {
        std::string q = "\"";
        for (char c : s)
        {
            if (c == '"')
                q += '"';
            q += c;
        }
        return q + "\"";
    };
    out << quoted(row.config) << ',' << row.problem << ',' << row.length << ',' << row.runs << ','
        << row.successes << ',' << (row.solved ? "true" : "false") << ',';
    if (row.population_size)
        out << *row.population_size;
    out << ',';
    for (const auto *s : {&row.evaluations, &row.wall_seconds})
    {
        if (*s)
            out << (*s)->median << ',' << (*s)->lower << ',' << (*s)->upper << ',';
        else
            out << ",,,";
    }
    out << quoted(row.error) << '\n';
}

std::vector<double> read_metric(std::istream &in, std::string_view metric)
{
    if (metric != "evals" && metric != "seconds")
        throw ConfigError("unknown metric: " + std::string(metric));
    const char *key = metric == "evals" ? "evaluations" : "wall_seconds";
    std::vector<double> values;
    auto take_run = [&](const json &r) { values.push_back(r.at(key).get<double>()); };

    std::string line;
    while (std::getline(in, line))
    {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const json j = json::parse(line);
        const std::string type = j.value("type", "run");
        if (type == "run")
            take_run(j);
        else if (type == "summary")
        {
            for (const auto &r : j.at("records"))
                take_run(r);
        }
        else if (type == "bisection")
        {
            if (j.at("best_evals_size").is_null())
                continue;
            const auto best = j.at("best_evals_size").get<std::size_t>();
            for (const auto &t : j.at("trials"))
            {
                if (t.at("population_size").get<std::size_t>() == best && t.contains("runs"))
                {
                    for (const auto &r : t.at("runs"))
                        take_run(r);
                }
            }
        }
    }
    return values;
}

} // namespace gomea
