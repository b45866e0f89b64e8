#include "gomea/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace gomea
{

namespace
{

std::vector<std::string> split_words(const std::string &line)
{
    std::istringstream in(line);
    std::vector<std::string> words;
    std::string w;
    while (in >> w)
        words.push_back(w);
    return words;
}

template <typename T> T parse_number(const std::string &token, const char *what)
{
    T value{};
    const auto *first = token.data();
    const auto *last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw InstanceFormatError(std::string("malformed ") + what + ": '" + token + "'");
    return value;
}

double parse_real(const std::string &token, const char *what)
{
    try
    {
        std::size_t used = 0;
        double value = std::stod(token, &used);
        if (used != token.size())
            throw InstanceFormatError(std::string("malformed ") + what + ": '" + token + "'");
        return value;
    }
    catch (const std::logic_error &)
    {
        throw InstanceFormatError(std::string("malformed ") + what + ": '" + token + "'");
    }
}

std::optional<double> parse_optimum(const std::string &token)
{
    if (token == "?")
        return std::nullopt;
    return parse_real(token, "optimum");
}

std::string format_real(double value)
{
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
    return out.str();
}

std::string optimum_token(const ProblemInstance &instance)
{
    return instance.optimum() ? format_real(*instance.optimum()) : "?";
}

// Next line that is neither empty nor (for non-CNF formats) whitespace only.
bool next_content_line(std::istream &in, std::string &line)
{
    while (std::getline(in, line))
    {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

ProblemInstance parse_cnf(std::istream &in, const std::vector<std::string> &header,
                          std::optional<double> declared)
{
    if (header.size() != 4)
        throw InstanceFormatError("CNF header must be 'p cnf <variables> <clauses>'");
    const auto variables = parse_number<std::size_t>(header[2], "variable count");
    const auto expected = parse_number<std::size_t>(header[3], "clause count");

    std::vector<Clause> clauses;
    std::vector<long long> literals;
    std::string line;
    while (std::getline(in, line))
    {
        auto words = split_words(line);
        if (words.empty())
            continue;
        if (words.front() == "c")
        {
            if (words.size() == 3 && words[1] == "optimum")
                declared = parse_real(words[2], "optimum");
            continue;
        }
        if (words.front() == "%")
            break;
        for (const auto &w : words)
        {
            const auto lit = parse_number<long long>(w, "literal");
            if (lit != 0)
            {
                literals.push_back(lit);
                continue;
            }
            if (literals.size() != 3)
                throw InstanceFormatError("every clause must have exactly 3 literals, found " +
                                          std::to_string(literals.size()));
            Clause c;
            for (std::size_t i = 0; i < 3; ++i)
            {
                const long long magnitude = literals[i] < 0 ? -literals[i] : literals[i];
                if (magnitude < 1 || static_cast<std::size_t>(magnitude) > variables)
                    throw InstanceFormatError("literal out of range: " + std::to_string(literals[i]));
                c.variables[i] = static_cast<std::size_t>(magnitude - 1);
                c.negated[i] = literals[i] < 0;
            }
            clauses.push_back(c);
            literals.clear();
        }
    }
    if (!literals.empty())
        throw InstanceFormatError("last clause is not terminated by 0");
    if (clauses.size() != expected)
        throw InstanceFormatError("header declares " + std::to_string(expected) + " clauses, found " +
                                  std::to_string(clauses.size()));
    auto instance = ProblemInstance::maxsat(variables, std::move(clauses));
    instance.set_optimum(declared);
    return instance;
}

ProblemInstance parse_graph(std::istream &in, const std::vector<std::string> &header,
                            std::optional<ProblemKind> hint)
{
    if (header.size() != 5)
        throw InstanceFormatError("graph header must be 'p <maxcut|spinglass> <l> <edges> <optimum|?>'");
    ProblemKind kind = ProblemKind::SpinGlass;
    if (header[1] == "maxcut")
        kind = hint == ProblemKind::MaxCutDense ? ProblemKind::MaxCutDense : ProblemKind::MaxCutSparse;
    const auto length = parse_number<std::size_t>(header[2], "vertex count");
    const auto count = parse_number<std::size_t>(header[3], "edge count");
    const auto optimum = parse_optimum(header[4]);

    std::vector<WeightedEdge> edges;
    edges.reserve(count);
    std::string line;
    while (next_content_line(in, line))
    {
        auto words = split_words(line);
        if (words.size() != 3)
            throw InstanceFormatError("edge lines must be 'u v w': '" + line + "'");
        edges.push_back({parse_number<std::size_t>(words[0], "vertex"), parse_number<std::size_t>(words[1], "vertex"),
                         parse_number<std::int64_t>(words[2], "weight")});
    }
    if (edges.size() != count)
        throw InstanceFormatError("header declares " + std::to_string(count) + " edges, found " +
                                  std::to_string(edges.size()));
    try
    {
        auto instance = ProblemInstance::graph(kind, length, std::move(edges));
        instance.set_optimum(optimum);
        return instance;
    }
    catch (const InvalidInstance &e)
    {
        throw InstanceFormatError(e.what());
    }
}

ProblemInstance parse_nk(std::istream &in, const std::vector<std::string> &header)
{
    if (header.size() != 5)
        throw InstanceFormatError("NK header must be 'p nk <l> <k> <optimum|?>'");
    const auto length = parse_number<std::size_t>(header[2], "length");
    const auto k = parse_number<std::size_t>(header[3], "k");
    const auto optimum = parse_optimum(header[4]);
    if (k < 1 || k > 20 || k > length)
        throw InstanceFormatError("NK k must satisfy 1 <= k <= min(20, l)");

    NkTable table;
    table.k = k;
    table.rows = length - k + 1;
    table.values.reserve(table.rows << k);
    std::string line;
    for (std::size_t row = 0; row < table.rows; ++row)
    {
        if (!next_content_line(in, line))
            throw InstanceFormatError("NK file has fewer than l-k+1 rows");
        auto words = split_words(line);
        if (words.size() != (std::size_t{1} << k))
            throw InstanceFormatError("NK row " + std::to_string(row) + " must hold 2^k values");
        for (const auto &w : words)
            table.values.push_back(parse_real(w, "table value"));
    }
    if (next_content_line(in, line))
        throw InstanceFormatError("NK file has more than l-k+1 rows");
    try
    {
        auto instance = ProblemInstance::nk(length, std::move(table));
        instance.set_optimum(optimum);
        return instance;
    }
    catch (const InvalidInstance &e)
    {
        throw InstanceFormatError(e.what());
    }
}

} // namespace

ProblemInstance parse_instance(std::istream &in, std::optional<ProblemKind> hint)
{
    std::optional<double> cnf_optimum;
    std::string line;
    while (std::getline(in, line))
    {
        auto words = split_words(line);
        if (words.empty())
            continue;
        if (words.front() == "c")
        {
            if (words.size() == 3 && words[1] == "optimum")
                cnf_optimum = parse_real(words[2], "optimum");
            continue;
        }
        if (words.front() != "p" || words.size() < 2)
            throw InstanceFormatError("expected a 'p ...' header line, got '" + line + "'");
        if (words[1] == "cnf")
            return parse_cnf(in, words, cnf_optimum);
        if (words[1] == "maxcut" || words[1] == "spinglass")
            return parse_graph(in, words, hint);
        if (words[1] == "nk")
            return parse_nk(in, words);
        throw InstanceFormatError("unknown instance type '" + words[1] + "'");
    }
    throw InstanceFormatError("missing header line");
}

void format_instance(const ProblemInstance &instance, std::ostream &out)
{
    switch (instance.kind())
    {
    case ProblemKind::MaxSat: {
        if (instance.optimum())
            out << "c optimum " << format_real(*instance.optimum()) << '\n';
        out << "p cnf " << instance.length() << ' ' << instance.clauses().size() << '\n';
        for (const auto &c : instance.clauses())
        {
            for (std::size_t i = 0; i < 3; ++i)
            {
                const long long lit = static_cast<long long>(c.variables[i]) + 1;
                out << (c.negated[i] ? -lit : lit) << ' ';
            }
            out << "0\n";
        }
        return;
    }
    case ProblemKind::MaxCutSparse:
    case ProblemKind::MaxCutDense:
    case ProblemKind::SpinGlass: {
        out << "p " << (instance.kind() == ProblemKind::SpinGlass ? "spinglass" : "maxcut") << ' '
            << instance.length() << ' ' << instance.edges().size() << ' ' << optimum_token(instance) << '\n';
        for (const auto &e : instance.edges())
            out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
        return;
    }
    case ProblemKind::NkS1: {
        const auto &table = instance.nk_table();
        out << "p nk " << instance.length() << ' ' << table.k << ' ' << optimum_token(instance) << '\n';
        for (std::size_t row = 0; row < table.rows; ++row)
        {
            for (std::size_t col = 0; col < (std::size_t{1} << table.k); ++col)
                out << (col ? " " : "") << format_real(table.at(row, col));
            out << '\n';
        }
        return;
    }
    default:
        throw std::invalid_argument(std::string("kind '") + std::string(kind_name(instance.kind())) +
                                    "' has no instance file format");
    }
}

ProblemInstance read_instance(const std::filesystem::path &path, std::optional<ProblemKind> hint)
{
    std::ifstream in(path);
    if (!in)
        throw InstanceFormatError("cannot open instance file " + path.string());
    return parse_instance(in, hint);
}

void write_instance(const ProblemInstance &instance, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write instance file " + path.string());
    format_instance(instance, out);
    if (!out)
        throw std::runtime_error("failed writing instance file " + path.string());
}

} // namespace gomea
