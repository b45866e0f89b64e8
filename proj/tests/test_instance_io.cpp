#include "gomea/instance_io.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

using namespace gomea;

namespace
{

ProblemInstance round_trip(const ProblemInstance &p, std::optional<ProblemKind> hint = std::nullopt)
{
    std::stringstream buffer;
    format_instance(p, buffer);
    return parse_instance(buffer, hint);
}

ProblemInstance parse(const std::string &text, std::optional<ProblemKind> hint = std::nullopt)
{
    std::istringstream in(text);
    return parse_instance(in, hint);
}

} // namespace

TEST_CASE("round trips")
{
    const auto sparse = attach_optimum(generate_instance(ProblemKind::MaxCutSparse, 16, 4), OptimumMethod::BruteForce);
    CHECK(round_trip(sparse) == sparse);

    const auto dense = generate_instance(ProblemKind::MaxCutDense, 30, 4);
    CHECK(round_trip(dense, ProblemKind::MaxCutDense) == dense);

    const auto spin = generate_instance(ProblemKind::SpinGlass, 25, 4);
    CHECK(round_trip(spin) == spin);

    const auto nk = attach_optimum(generate_instance(ProblemKind::NkS1, 20, 4), OptimumMethod::NkDynamicProgramming);
    CHECK(round_trip(nk) == nk);

    const auto sat = generate_instance(ProblemKind::MaxSat, 30, 4);
    CHECK(round_trip(sat) == sat);

    const auto path = std::filesystem::temp_directory_path() / "gomea_io_test.txt";
    write_instance(sparse, path);
    CHECK(read_instance(path) == sparse);
    std::filesystem::remove(path);
}

TEST_CASE("DIMACS CNF parsing")
{
    const auto p = parse("c a comment\nc optimum 2\np cnf 3 2\n1 2 -3 0\n-1 -2 3 0\n");
    CHECK(p.kind() == ProblemKind::MaxSat);
    CHECK(p.length() == 3);
    REQUIRE(p.clauses().size() == 2);
    CHECK(p.clauses()[0].negated[2]);
    CHECK(p.optimum() == 2.0);
    CHECK(p.evaluate(Genotype::from_string("111")) == 2);

    CHECK_THROWS_AS(parse("p cnf 4 1\n1 2 -3 4 0\n"), InstanceFormatError);
    CHECK_THROWS_AS(parse("p cnf 3 2\n1 2 3 0\n"), InstanceFormatError);
    CHECK_THROWS_AS(parse("p cnf 3 1\n1 2 7 0\n"), InstanceFormatError);
}

TEST_CASE("graph and NK parsing")
{
    const auto g = parse("p maxcut 3 3 2\n0 1 1\n1 2 1\n0 2 1\n");
    CHECK(g.kind() == ProblemKind::MaxCutSparse);
    CHECK(g.optimum() == 2.0);
    CHECK(parse("p maxcut 3 3 ?\n0 1 1\n1 2 1\n0 2 1\n", ProblemKind::MaxCutDense).kind() == ProblemKind::MaxCutDense);

    CHECK_THROWS_AS(parse("p maxcut 3 2 ?\n0 1 1\n"), InstanceFormatError);
    CHECK_THROWS_AS(parse("p spinglass 3 1 ?\n0 1 3\n"), InstanceFormatError);
    CHECK_THROWS_AS(parse("p maxcut 3 1 ?\n0 5 1\n"), InstanceFormatError);
    CHECK_THROWS_AS(parse("p sphere 3 1 ?\n"), InstanceFormatError);

    std::ostringstream nk_text;
    nk_text << "p nk 2 2 ?\n0 0.5 0.25 1\n";
    const auto nk = parse(nk_text.str());
    CHECK(nk.kind() == ProblemKind::NkS1);
    CHECK_FALSE(nk.optimum().has_value());
    CHECK(nk.evaluate(Genotype::from_string("11")) == 1.0);
    CHECK(nk.evaluate(Genotype::from_string("01")) == 0.5);
    CHECK_THROWS_AS(parse("p nk 2 2 ?\n0 0.5 0.25\n"), InstanceFormatError);
}
