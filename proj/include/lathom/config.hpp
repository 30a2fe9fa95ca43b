#pragma once

#include <string>

#include "lathom/experiments.hpp"

namespace lathom {

/// Run configuration parsed from the sectioned key-value config format:
/// sections in brackets, `key = value` lines, `#` comments, matrices and
/// vectors as bracketed lists.
struct RunConfig {
  PatternMatrix matrix;
  GeometryCase geometry;
  std::optional<SymTensor2> loading;  // natural loading of the geometry when absent
  SolverConfig solver;
  std::optional<IsotropicMaterial> reference_override;
  std::string out_dir = "out";

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::string& path);
  std::string serialize() const;

  /// The loading actually applied (resolves the default).
  SymTensor2 effective_loading() const;
  int dim() const { return matrix.dim(); }
};

}  // namespace lathom
