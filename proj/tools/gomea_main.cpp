// Command line driver: instance generation, single runs, bisection, sweeps
// and Mann-Whitney comparisons. Records are written as JSON lines.

#include "gomea/harness.hpp"
#include "gomea/instance_io.hpp"
#include "gomea/records.hpp"
#include "gomea/statistics.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace
{

using namespace gomea;

constexpr int exit_config_error = 2;
constexpr int exit_unsolved = 3;

struct ProblemOptions
{
    std::string kind;
    std::string instance_path;
    std::size_t size = 0;
    std::uint64_t instance_seed = 0;
};

struct AlgorithmOptions
{
    std::string preset;
    std::string scheme = "single";
    std::size_t pop = 0;
    std::string hc = "off";
    bool fi = false;
    bool eds = false;
    bool tournament = false;
    std::string measure = "mi";
    bool filter = false;
    std::string order = "random";
    bool cgom = false;
    double lambda = 0.8;
    std::uint64_t seed = 0;
    std::uint64_t max_evals = 100'000'000;
    double max_seconds = 0.0;
    std::uint64_t max_gens = 200;

    // Options given on the command line, so they can override a preset.
    std::vector<CLI::Option *> scheme_opts;
    CLI::Option *max_seconds_opt = nullptr;
    CLI::Option *max_gens_opt = nullptr;
};

void add_problem_options(CLI::App &app, ProblemOptions &p, bool need_size_list)
{
    app.add_option("--kind", p.kind, "onemax|trap55|trap54|bimodal|nk|hiff|maxcut-sparse|maxcut-dense|spinglass|maxsat")
        ->required();
    if (!need_size_list)
    {
        auto *inst = app.add_option("--instance", p.instance_path, "instance file");
        auto *size = app.add_option("--size", p.size, "generate an instance of this length");
        inst->excludes(size);
        size->excludes(inst);
    }
    app.add_option("--instance-seed", p.instance_seed, "seed for generated instances");
}

void add_algorithm_options(CLI::App &app, AlgorithmOptions &a, bool with_pop)
{
    app.add_option("--preset", a.preset, "gomea-best|cgomea-best|gomea-p3-best|cgomea-p3-best");
    a.scheme_opts.push_back(app.add_option("--scheme", a.scheme, "single|ims|p3|p3mi"));
    if (with_pop)
        app.add_option("--pop", a.pop, "population size (single)");
    a.scheme_opts.push_back(app.add_option("--hc", a.hc, "off|sihc|ehc"));
    a.scheme_opts.push_back(app.add_flag("--fi", a.fi, "forced improvements"));
    a.scheme_opts.push_back(app.add_flag("--eds", a.eds, "exhaustive donor search"));
    a.scheme_opts.push_back(app.add_flag("--tournament", a.tournament, "learn on a tournament sample"));
    a.scheme_opts.push_back(app.add_option("--measure", a.measure, "mi|nmi"));
    a.scheme_opts.push_back(app.add_flag("--filter", a.filter, "filter the linkage tree"));
    a.scheme_opts.push_back(app.add_option("--order", a.order, "random|ascending"));
    a.scheme_opts.push_back(app.add_flag("--cgom", a.cgom, "conditional mixing"));
    a.scheme_opts.push_back(app.add_option("--lambda", a.lambda, "dependency threshold"));
    app.add_option("--seed", a.seed, "run seed (master seed for multi-run commands)");
    app.add_option("--max-evals", a.max_evals, "evaluation limit per run");
    a.max_seconds_opt = app.add_option("--max-seconds", a.max_seconds, "time limit per run");
    a.max_gens_opt = app.add_option("--max-gens", a.max_gens, "generation limit per population");
}

SchemeConfig build_config(const AlgorithmOptions &a)
{
    SchemeConfig c = a.preset.empty() ? SchemeConfig{} : preset(a.preset);
    auto given = [&](std::size_t i) { return a.preset.empty() || a.scheme_opts[i]->count() > 0; };
    std::size_t i = 0;
    if (given(i++))
        c.scheme = parse_scheme(a.scheme);
    if (a.pop > 0)
        c.population_size = a.pop;
    if (given(i++))
        c.hill_climber = parse_hill_climber(a.hc);
    if (given(i++))
        c.flags.use_fi = a.fi;
    if (given(i++))
        c.flags.use_eds = a.eds;
    if (given(i++))
        c.tournament_selection = a.tournament;
    if (given(i++))
        c.measure = parse_measure(a.measure);
    if (given(i++))
        c.filtered = a.filter;
    if (given(i++))
        c.ordering = parse_ordering(a.order);
    if (given(i++))
        c.flags.conditional = a.cgom;
    if (given(i++))
        c.lambda = a.lambda;
    return c;
}

// The 200-generation default applies to the single-population scheme only;
// parameterless schemes run uncapped unless --max-gens is given.
ExperimentCaps build_caps(const AlgorithmOptions &a, const SchemeConfig &config)
{
    ExperimentCaps caps;
    caps.max_evaluations = a.max_evals;
    if (config.scheme == SchemeKind::Single || a.max_gens_opt->count() > 0)
        caps.max_generations = a.max_gens;
    else
        caps.max_generations.reset();
    if (a.max_seconds_opt->count() > 0)
        caps.max_seconds = a.max_seconds;
    return caps;
}

ProblemInstance load_problem(const ProblemOptions &p)
{
    const ProblemKind kind = parse_kind(p.kind);
    if (!p.instance_path.empty())
    {
        ProblemInstance instance = read_instance(p.instance_path, kind);
        if (instance.kind() != kind)
            throw ConfigError("instance file does not hold a " + p.kind + " instance");
        return instance;
    }
    if (p.size == 0)
        throw ConfigError("either --instance or --size is required");
    return certified_instance(kind, p.size, p.instance_seed);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"GOMEA family of evolutionary algorithms"};
    app.require_subcommand(1);

    // gen-instance
    auto *gen = app.add_subcommand("gen-instance", "generate a problem instance file");
    std::string gen_kind;
    std::size_t gen_size = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    std::string gen_certify;
    gen->add_option("--kind", gen_kind)->required();
    gen->add_option("--size", gen_size)->required();
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out)->required();
    gen->add_option("--certify", gen_certify, "brute|dp");

    // run
    auto *run_cmd = app.add_subcommand("run", "one run, one JSON record");
    ProblemOptions run_problem;
    AlgorithmOptions run_algo;
    add_problem_options(*run_cmd, run_problem, false);
    add_algorithm_options(*run_cmd, run_algo, true);

    // bisect
    auto *bisect_cmd = app.add_subcommand("bisect", "bisection population sizing");
    ProblemOptions bisect_problem;
    AlgorithmOptions bisect_algo;
    std::size_t bisect_runs = 50;
    std::size_t bisect_max_pop = 100'000;
    add_problem_options(*bisect_cmd, bisect_problem, false);
    add_algorithm_options(*bisect_cmd, bisect_algo, false);
    bisect_cmd->add_option("--runs", bisect_runs);
    bisect_cmd->add_option("--max-pop", bisect_max_pop, "abort bisection above this size");

    // sweep
    auto *sweep_cmd = app.add_subcommand("sweep", "scalability sweep over problem sizes");
    ProblemOptions sweep_problem;
    AlgorithmOptions sweep_algo;
    std::vector<std::size_t> sweep_sizes;
    std::size_t sweep_runs = 50;
    std::size_t sweep_max_pop = 100'000;
    std::string sweep_csv;
    std::string sweep_label;
    add_problem_options(*sweep_cmd, sweep_problem, true);
    add_algorithm_options(*sweep_cmd, sweep_algo, false);
    sweep_cmd->add_option("--sizes", sweep_sizes)->delimiter(',')->required();
    sweep_cmd->add_option("--runs", sweep_runs);
    sweep_cmd->add_option("--max-pop", sweep_max_pop);
    sweep_cmd->add_option("--csv", sweep_csv);
    sweep_cmd->add_option("--label", sweep_label, "config name in summary rows");

    // compare
    auto *compare_cmd = app.add_subcommand("compare", "one-sided Mann-Whitney test, a < b");
    std::string cmp_a;
    std::string cmp_b;
    std::string cmp_metric = "evals";
    compare_cmd->add_option("--a", cmp_a)->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--b", cmp_b)->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--metric", cmp_metric, "evals|seconds");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    try
    {
        if (*gen)
        {
            ProblemInstance instance = generate_instance(parse_kind(gen_kind), gen_size, gen_seed);
            if (gen_certify == "brute")
                instance = attach_optimum(std::move(instance), OptimumMethod::BruteForce);
            else if (gen_certify == "dp")
                instance = attach_optimum(std::move(instance), OptimumMethod::NkDynamicProgramming);
            else if (!gen_certify.empty())
                throw ConfigError("unknown certification method: " + gen_certify);
            write_instance(instance, gen_out);
            nlohmann::json j{{"type", "instance"}, {"kind", gen_kind}, {"length", gen_size}, {"path", gen_out}};
            j["optimum"] = instance.optimum() ? nlohmann::json(*instance.optimum()) : nlohmann::json(nullptr);
            std::cout << j.dump() << '\n';
            return 0;
        }
        if (*run_cmd)
        {
            const SchemeConfig config = build_config(run_algo);
            validate(config);
            const ProblemInstance instance = load_problem(run_problem);
            const RunRecord record =
                run(config, instance, build_caps(run_algo, config).budget(), run_algo.seed, nullptr, run_problem.kind);
            std::cout << to_json(record).dump() << '\n';
            return record.success ? 0 : exit_unsolved;
        }
        if (*bisect_cmd)
        {
            SchemeConfig config = build_config(bisect_algo);
            config.population_size = 2;
            validate(config);
            const ProblemInstance instance = load_problem(bisect_problem);
            ExperimentCaps caps = build_caps(bisect_algo, config);
            caps.max_population = bisect_max_pop;
            const BisectionResult result =
                bisect_population_size(config, instance, run_seeds(bisect_algo.seed, bisect_runs), caps);
            std::cout << to_json(result).dump() << '\n';
            return result.solved ? 0 : exit_unsolved;
        }
        if (*sweep_cmd)
        {
            SchemeConfig config = build_config(sweep_algo);
            if (config.scheme == SchemeKind::Single)
                config.population_size = 2;
            validate(config);
            ExperimentCaps caps = build_caps(sweep_algo, config);
            caps.max_population = sweep_max_pop;
            std::ofstream csv;
            if (!sweep_csv.empty())
            {
                csv.open(sweep_csv);
                if (!csv)
                    throw ConfigError("cannot write " + sweep_csv);
                write_sweep_csv_header(csv);
            }
            const std::string label = !sweep_label.empty() ? sweep_label
                                      : !sweep_algo.preset.empty() ? sweep_algo.preset
                                                                   : std::string(scheme_name(config.scheme));
            bool all_solved = true;
            scalability_sweep(config, label, parse_kind(sweep_problem.kind), sweep_sizes,
                              run_seeds(sweep_algo.seed, sweep_runs), caps, sweep_problem.instance_seed,
                              [&](const SweepRow &row) {
                                  all_solved = all_solved && row.solved;
                                  std::cout << to_json(row).dump() << std::endl;
                                  if (csv.is_open())
                                      write_sweep_csv_row(csv, row);
                              });
            return all_solved ? 0 : exit_unsolved;
        }
        if (*compare_cmd)
        {
            std::ifstream fa(cmp_a);
            std::ifstream fb(cmp_b);
            const auto a = read_metric(fa, cmp_metric);
            const auto b = read_metric(fb, cmp_metric);
            if (a.empty() || b.empty())
                throw ConfigError("both files need at least one run record");
            nlohmann::json j{{"type", "comparison"},
                             {"metric", cmp_metric},
                             {"n_a", a.size()},
                             {"n_b", b.size()},
                             {"median_a", median(a)},
                             {"median_b", median(b)},
                             {"p_value", mann_whitney_less(a, b)}};
            std::cout << j.dump() << '\n';
            return 0;
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const InvalidInstance &e)
    {
        std::cerr << "invalid instance: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const InstanceFormatError &e)
    {
        std::cerr << "instance file: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
