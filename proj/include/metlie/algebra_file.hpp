#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "metlie/forms.hpp"
#include "metlie/lie_algebra.hpp"

namespace metlie {

/// Algebra read from JSON:
///   { "dim": n, "brackets": [[i, j, k, "p/q"], ...],
///     "metrics": { "name": [[i, j, "p/q"], ...] } }
/// with 0-based indices. (j, i, k, −v) is implied by (i, j, k, v).
struct AlgebraFile {
  std::string name;
  LieAlgebra algebra;
  std::vector<std::pair<std::string, SymBilinearForm>> metrics;

  const SymBilinearForm* find_metric(std::string_view metric) const;
};

/// Throws ParseError (with the 1-based line) on malformed input and
/// JacobiError when the brackets violate the Jacobi identity.
AlgebraFile parse_algebra_json(std::string_view text, std::string name = "file");
/// Reads and parses a file. Throws InputError if it cannot be opened.
AlgebraFile load_algebra_file(const std::string& path);

/// Serializes to the same schema (brackets with i < j, metrics with i ≤ j).
std::string to_json(const LieAlgebra& g, const std::vector<std::pair<std::string, SymBilinearForm>>& metrics);

}  // namespace metlie
