#pragma once

#include "gomea/problems.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>

namespace gomea
{

class InstanceFormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Formats:
//   MAX-3SAT  DIMACS CNF, optional "c optimum <int>" comment.
//   graphs    "p <maxcut|spinglass> <l> <edges> <optimum|?>" then "u v w" lines.
//   NK-S1     "p nk <l> <k> <optimum|?>" then l-k+1 rows of 2^k reals.

/// `hint` selects the MAXCUT variant for "p maxcut" files (sparse otherwise).
ProblemInstance parse_instance(std::istream &in, std::optional<ProblemKind> hint = std::nullopt);
void format_instance(const ProblemInstance &instance, std::ostream &out);

ProblemInstance read_instance(const std::filesystem::path &path, std::optional<ProblemKind> hint = std::nullopt);
void write_instance(const ProblemInstance &instance, const std::filesystem::path &path);

} // namespace gomea
