#include "gomea/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace gomea
{

namespace
{

struct KindName
{
    ProblemKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 10> kind_names{{
    {ProblemKind::OneMax, "onemax"},
    {ProblemKind::Trap55, "trap55"},
    {ProblemKind::Trap54, "trap54"},
    {ProblemKind::BimodalTrap, "bimodal"},
    {ProblemKind::NkS1, "nk"},
    {ProblemKind::Hiff, "hiff"},
    {ProblemKind::MaxCutSparse, "maxcut-sparse"},
    {ProblemKind::MaxCutDense, "maxcut-dense"},
    {ProblemKind::SpinGlass, "spinglass"},
    {ProblemKind::MaxSat, "maxsat"},
}};

constexpr std::size_t nk_window = 5;
constexpr double maxsat_clause_ratio = 4.3;

bool is_graph_kind(ProblemKind kind)
{
    return kind == ProblemKind::MaxCutSparse || kind == ProblemKind::MaxCutDense || kind == ProblemKind::SpinGlass;
}

double trap_value(std::size_t ones, std::size_t k)
{
    return ones == k ? static_cast<double>(k) : static_cast<double>(k - 1 - ones);
}

double bimodal_value(std::size_t ones)
{
    switch (ones)
    {
    case 0:
    case 6:
        return 6.0;
    case 1:
    case 5:
        return 0.0;
    case 2:
    case 4:
        return 2.0;
    default:
        return 5.0;
    }
}

double evaluate_hiff(const Genotype &g)
{
    // Per block: 0 or 1 when uniform, 2 when mixed. Level 1 blocks are all uniform.
    std::vector<std::uint8_t> state(g.bits().begin(), g.bits().end());
    double total = static_cast<double>(state.size());
    while (state.size() > 1)
    {
        std::vector<std::uint8_t> next(state.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
        {
            const auto a = state[2 * i];
            const auto b = state[2 * i + 1];
            next[i] = (a == b && a != 2) ? a : 2;
            if (next[i] != 2)
                total += 1.0;
        }
        state = std::move(next);
    }
    return total;
}

} // namespace

bool ProblemInstance::operator==(const ProblemInstance &other) const
{
    return kind_ == other.kind_ && length_ == other.length_ && optimum_ == other.optimum_ &&
           trap_size_ == other.trap_size_ && trap_shift_ == other.trap_shift_ && edges_ == other.edges_ &&
           nk_ == other.nk_ && clauses_ == other.clauses_;
}

std::string_view kind_name(ProblemKind kind)
{
    for (const auto &entry : kind_names)
    {
        if (entry.kind == kind)
            return entry.name;
    }
    return "unknown";
}

ProblemKind parse_kind(std::string_view name)
{
    for (const auto &entry : kind_names)
    {
        if (entry.name == name)
            return entry.kind;
    }
    throw std::invalid_argument("unknown problem kind: " + std::string(name));
}

bool kind_has_payload(ProblemKind kind)
{
    return kind == ProblemKind::NkS1 || kind == ProblemKind::MaxSat || is_graph_kind(kind);
}

bool Clause::satisfied_by(const Genotype &g) const
{
    for (std::size_t i = 0; i < 3; ++i)
    {
        if ((g[variables[i]] != 0) != negated[i])
            return true;
    }
    return false;
}

ProblemInstance ProblemInstance::onemax(std::size_t length)
{
    if (length == 0)
        throw InvalidInstance("onemax needs at least one variable");
    ProblemInstance p(ProblemKind::OneMax, length);
    p.optimum_ = static_cast<double>(length);
    return p;
}

ProblemInstance ProblemInstance::trap(ProblemKind kind, std::size_t length)
{
    if (kind != ProblemKind::Trap55 && kind != ProblemKind::Trap54)
        throw InvalidInstance("trap() expects trap55 or trap54");
    ProblemInstance p(kind, length);
    p.trap_size_ = 5;
    p.trap_shift_ = kind == ProblemKind::Trap55 ? 5 : 4;
    if (length < p.trap_size_ || length % p.trap_shift_ != 0)
        throw InvalidInstance("trap length must be a multiple of " + std::to_string(p.trap_shift_) +
                              " and at least 5");
    p.optimum_ = static_cast<double>(length / p.trap_shift_ * p.trap_size_);
    return p;
}

ProblemInstance ProblemInstance::bimodal_trap(std::size_t length)
{
    if (length == 0 || length % 6 != 0)
        throw InvalidInstance("bimodal trap length must be a positive multiple of 6");
    ProblemInstance p(ProblemKind::BimodalTrap, length);
    p.trap_size_ = 6;
    p.trap_shift_ = 6;
    p.optimum_ = static_cast<double>(length);
    return p;
}

ProblemInstance ProblemInstance::hiff(std::size_t length)
{
    if (length == 0 || !std::has_single_bit(length))
        throw InvalidInstance("HIFF length must be a power of two");
    ProblemInstance p(ProblemKind::Hiff, length);
    p.optimum_ = static_cast<double>(2 * length - 1);
    return p;
}

ProblemInstance ProblemInstance::nk(std::size_t length, NkTable table)
{
    if (table.k == 0 || table.k > 20 || length < table.k)
        throw InvalidInstance("NK landscape needs 1 <= k <= min(20, length)");
    if (table.rows != length - table.k + 1)
        throw InvalidInstance("NK table must have length - k + 1 rows");
    if (table.values.size() != (table.rows << table.k))
        throw InvalidInstance("NK table must hold 2^k values per row");
    for (double v : table.values)
    {
        if (!(v >= 0.0 && v <= 1.0))
            throw InvalidInstance("NK table values must lie in [0, 1]");
    }
    ProblemInstance p(ProblemKind::NkS1, length);
    p.nk_ = std::move(table);
    return p;
}

ProblemInstance ProblemInstance::graph(ProblemKind kind, std::size_t length, std::vector<WeightedEdge> edges)
{
    if (!is_graph_kind(kind))
        throw InvalidInstance("graph() expects a MAXCUT or spin-glass kind");
    if (length < 2)
        throw InvalidInstance("graph problems need at least two vertices");
    for (const auto &e : edges)
    {
        if (e.u >= length || e.v >= length || e.u == e.v)
            throw InvalidInstance("edge endpoints must be distinct vertices below " + std::to_string(length));
        if (kind == ProblemKind::SpinGlass && e.weight != 1 && e.weight != -1)
            throw InvalidInstance("spin-glass couplings must be -1 or 1");
        if (kind != ProblemKind::SpinGlass && e.weight < 0)
            throw InvalidInstance("MAXCUT weights must be non-negative");
    }
    ProblemInstance p(kind, length);
    p.edges_ = std::move(edges);
    return p;
}

ProblemInstance ProblemInstance::maxsat(std::size_t length, std::vector<Clause> clauses)
{
    if (length < 3)
        throw InvalidInstance("MAX-3SAT needs at least three variables");
    for (const auto &c : clauses)
    {
        for (auto v : c.variables)
        {
            if (v >= length)
                throw InvalidInstance("clause variable out of range");
        }
    }
    ProblemInstance p(ProblemKind::MaxSat, length);
    p.clauses_ = std::move(clauses);
    return p;
}

double ProblemInstance::evaluate(const Genotype &g) const
{
    if (g.size() != length_)
        throw std::invalid_argument("genotype length does not match the instance");

    switch (kind_)
    {
    case ProblemKind::OneMax:
        return static_cast<double>(g.count_ones());
    case ProblemKind::Trap55:
    case ProblemKind::Trap54: {
        double f = 0.0;
        for (std::size_t start = 0; start < length_; start += trap_shift_)
        {
            std::size_t ones = 0;
            for (std::size_t j = 0; j < trap_size_; ++j)
                ones += g[(start + j) % length_];
            f += trap_value(ones, trap_size_);
        }
        return f;
    }
    case ProblemKind::BimodalTrap: {
        double f = 0.0;
        for (std::size_t start = 0; start < length_; start += 6)
        {
            std::size_t ones = 0;
            for (std::size_t j = 0; j < 6; ++j)
                ones += g[start + j];
            f += bimodal_value(ones);
        }
        return f;
    }
    case ProblemKind::NkS1: {
        const std::size_t k = nk_.k;
        const std::size_t mask = (std::size_t{1} << k) - 1;
        std::size_t window = 0;
        for (std::size_t j = 0; j + 1 < k; ++j)
            window = (window << 1) | g[j];
        double f = 0.0;
        for (std::size_t row = 0; row < nk_.rows; ++row)
        {
            window = ((window << 1) | g[row + k - 1]) & mask;
            f += nk_.at(row, window);
        }
        return f;
    }
    case ProblemKind::Hiff:
        return evaluate_hiff(g);
    case ProblemKind::MaxCutSparse:
    case ProblemKind::MaxCutDense: {
        std::int64_t cut = 0;
        for (const auto &e : edges_)
        {
            if (g[e.u] != g[e.v])
                cut += e.weight;
        }
        return static_cast<double>(cut);
    }
    case ProblemKind::SpinGlass: {
        std::int64_t energy = 0;
        for (const auto &e : edges_)
        {
            const std::int64_t su = g[e.u] ? 1 : -1;
            const std::int64_t sv = g[e.v] ? 1 : -1;
            energy += su * sv * e.weight;
        }
        return static_cast<double>(energy);
    }
    case ProblemKind::MaxSat: {
        std::size_t satisfied = 0;
        for (const auto &c : clauses_)
            satisfied += c.satisfied_by(g) ? 1 : 0;
        return static_cast<double>(satisfied);
    }
    }
    return 0.0;
}

std::pair<std::size_t, std::size_t> torus_shape(std::size_t length)
{
    std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(length)));
    while (rows > 1 && (rows * rows > length || length % rows != 0))
        --rows;
    const std::size_t cols = rows == 0 ? 0 : length / rows;
    if (rows < 3 || cols < 3)
        throw InvalidInstance("torus instances need length = rows * cols with rows, cols >= 3");
    return {rows, cols};
}

namespace
{

std::vector<WeightedEdge> torus_edges(std::size_t length, RandomSource &rng, bool spin_glass)
{
    const auto [rows, cols] = torus_shape(length);
    std::vector<WeightedEdge> edges;
    edges.reserve(2 * length);
    auto weight = [&]() -> std::int64_t {
        if (spin_glass)
            return rng.bit() ? 1 : -1;
        return static_cast<std::int64_t>(1 + rng.below(5));
    };
    for (std::size_t r = 0; r < rows; ++r)
    {
        for (std::size_t c = 0; c < cols; ++c)
        {
            const std::size_t v = r * cols + c;
            const std::size_t right = r * cols + (c + 1) % cols;
            const std::size_t down = ((r + 1) % rows) * cols + c;
            edges.push_back({v, right, weight()});
            edges.push_back({v, down, weight()});
        }
    }
    return edges;
}

std::vector<WeightedEdge> dense_edges(std::size_t length, RandomSource &rng)
{
    const auto degree = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(length))));
    if (degree >= length)
        throw InvalidInstance("dense MAXCUT needs more vertices than ceil(sqrt(length))");
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    std::vector<WeightedEdge> edges;
    std::vector<std::size_t> others(length - 1);
    for (std::size_t u = 0; u < length; ++u)
    {
        std::size_t fill = 0;
        for (std::size_t v = 0; v < length; ++v)
        {
            if (v != u)
                others[fill++] = v;
        }
        for (std::size_t j = 0; j < degree; ++j)
        {
            std::swap(others[j], others[j + rng.below(others.size() - j)]);
            const std::size_t v = others[j];
            const auto weight = static_cast<std::int64_t>(rng.below(1001));
            const auto key = std::minmax(u, v);
            if (seen.emplace(key, edges.size()).second)
                edges.push_back({key.first, key.second, weight});
        }
    }
    return edges;
}

std::vector<Clause> planted_clauses(std::size_t length, RandomSource &rng)
{
    Genotype planted(length);
    for (std::size_t i = 0; i < length; ++i)
        planted.set(i, rng.bit());
    const auto count = static_cast<std::size_t>(std::ceil(maxsat_clause_ratio * static_cast<double>(length)));
    std::vector<Clause> clauses;
    clauses.reserve(count);
    while (clauses.size() < count)
    {
        Clause c;
        for (std::size_t i = 0; i < 3; ++i)
        {
            std::size_t v;
            do
            {
                v = rng.below(length);
            } while (std::find(c.variables.begin(), c.variables.begin() + i, v) != c.variables.begin() + i);
            c.variables[i] = v;
            c.negated[i] = rng.bit() != 0;
        }
        if (c.satisfied_by(planted))
            clauses.push_back(c);
    }
    return clauses;
}

} // namespace

ProblemInstance generate_instance(ProblemKind kind, std::size_t length, std::uint64_t seed)
{
    RandomSource rng(seed);
    switch (kind)
    {
    case ProblemKind::OneMax:
        return ProblemInstance::onemax(length);
    case ProblemKind::Trap55:
    case ProblemKind::Trap54:
        return ProblemInstance::trap(kind, length);
    case ProblemKind::BimodalTrap:
        return ProblemInstance::bimodal_trap(length);
    case ProblemKind::Hiff:
        return ProblemInstance::hiff(length);
    case ProblemKind::NkS1: {
        if (length < nk_window)
            throw InvalidInstance("NK-S1 needs at least 5 variables");
        NkTable table;
        table.k = nk_window;
        table.rows = length - nk_window + 1;
        table.values.resize(table.rows << nk_window);
        for (auto &v : table.values)
            v = rng.uniform01();
        return ProblemInstance::nk(length, std::move(table));
    }
    case ProblemKind::MaxCutSparse:
        return ProblemInstance::graph(kind, length, torus_edges(length, rng, false));
    case ProblemKind::SpinGlass:
        return ProblemInstance::graph(kind, length, torus_edges(length, rng, true));
    case ProblemKind::MaxCutDense:
        return ProblemInstance::graph(kind, length, dense_edges(length, rng));
    case ProblemKind::MaxSat: {
        auto clauses = planted_clauses(length, rng);
        const auto count = static_cast<double>(clauses.size());
        auto p = ProblemInstance::maxsat(length, std::move(clauses));
        p.set_optimum(count);
        return p;
    }
    }
    throw InvalidInstance("unsupported problem kind");
}

std::pair<double, Genotype> nk_optimum(const NkTable &table, std::size_t length)
{
    const std::size_t k = table.k;
    if (k < 2 || table.rows != length - k + 1)
        throw InvalidInstance("NK table does not match the length");
    const std::size_t states = std::size_t{1} << (k - 1);
    const std::size_t state_mask = states - 1;

    // best[s]: best partial sum with the last k-1 bits equal to s.
    std::vector<double> best(states, -std::numeric_limits<double>::infinity());
    std::vector<std::vector<std::uint8_t>> came_from_bit(table.rows, std::vector<std::uint8_t>(states, 0));
    for (std::size_t window = 0; window < (std::size_t{1} << k); ++window)
    {
        const std::size_t s = window & state_mask;
        const double value = table.at(0, window);
        if (value > best[s])
        {
            best[s] = value;
            came_from_bit[0][s] = static_cast<std::uint8_t>(window >> (k - 1));
        }
    }
    for (std::size_t row = 1; row < table.rows; ++row)
    {
        std::vector<double> next(states, -std::numeric_limits<double>::infinity());
        for (std::size_t s = 0; s < states; ++s)
        {
            for (std::size_t bit = 0; bit < 2; ++bit)
            {
                const std::size_t window = (s << 1) | bit;
                const std::size_t ns = window & state_mask;
                const double value = best[s] + table.at(row, window);
                if (value > next[ns])
                {
                    next[ns] = value;
                    // The bit leaving the window on the way to ns.
                    came_from_bit[row][ns] = static_cast<std::uint8_t>((window >> (k - 1)) & 1);
                }
            }
        }
        best = std::move(next);
    }

    std::size_t state = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
    const double optimum = best[state];

    // Reconstruct: state after row r covers bits r+1..r+k-1.
    Genotype g(length);
    for (std::size_t j = 0; j + 1 < k; ++j)
        g.set(table.rows + j, static_cast<std::uint8_t>((state >> (k - 2 - j)) & 1));
    for (std::size_t row = table.rows; row-- > 0;)
    {
        const std::uint8_t leaving = came_from_bit[row][state];
        g.set(row, leaving);
        state = ((static_cast<std::size_t>(leaving) << (k - 1)) | state) >> 1;
    }
    return {optimum, g};
}

std::pair<double, Genotype> brute_force_optimum(const FitnessFunction &problem)
{
    const std::size_t length = problem.length();
    if (length > 30)
        throw std::invalid_argument("brute force is limited to 30 variables");
    Genotype g(length);
    Genotype best_genotype = g;
    double best = problem.evaluate(g);
    const std::uint64_t total = std::uint64_t{1} << length;
    for (std::uint64_t code = 1; code < total; ++code)
    {
        // Gray code: flip the bit at the position of the lowest set bit.
        g.flip(static_cast<std::size_t>(std::countr_zero(code)));
        const double f = problem.evaluate(g);
        if (f > best)
        {
            best = f;
            best_genotype = g;
        }
    }
    return {best, best_genotype};
}

ProblemInstance attach_optimum(ProblemInstance instance, OptimumMethod method)
{
    switch (method)
    {
    case OptimumMethod::BruteForce:
        instance.set_optimum(brute_force_optimum(instance).first);
        break;
    case OptimumMethod::NkDynamicProgramming:
        if (instance.kind() != ProblemKind::NkS1)
            throw std::invalid_argument("dynamic programming optimum is only defined for NK-S1");
        instance.set_optimum(nk_optimum(instance.nk_table(), instance.length()).first);
        break;
    case OptimumMethod::Declared:
        if (!instance.optimum())
            throw std::invalid_argument("instance does not declare an optimum");
        break;
    }
    return instance;
}

} // namespace gomea
