// Characters of the three models, multiplicity extraction by inner products,
// and verification of the predicted decompositions.
#pragma once

#include <string>

#include "models.hpp"

namespace weil {

// Character of the model as a class function on the product group.
//   Triple: indexed by (c1 * n + c2) * n + c3, classes of GL2(F) each.
//   FxE:    indexed by c1 * nE + c2 (c1 over GL2(F), c2 over GL2(E)).
//   Cubic:  indexed by classes of GL2(K).
std::vector<cplx> weil_character(const Model& m);

// Multiplicities of the irreducibles of the product group in `chi`,
// flattened over label tuples in table order; `residual` is the worst
// distance of any raw inner product from its rounded integer value.
struct MultTable {
  std::vector<long long> mult;
  double residual = 0.0;
};
MultTable multiplicity_table(const Model& m, const std::vector<cplx>& chi);

// The predicted table for the relevant decomposition statement.
std::vector<long long> predicted_decomposition(const Model& m);

// Human-readable tensor label for a flat index of the multiplicity table.
std::string tensor_label(const Model& m, std::size_t flat_index);

struct MultEntry {
  std::string label;
  long long mult = 0;
};

struct TheoremReport {
  std::string case_name;
  std::uint32_t q = 0;
  std::uint64_t labels_checked = 0;
  std::vector<MultEntry> nonzero;       // observed, in label order
  double max_residual = 0.0;
  std::vector<std::string> mismatches;  // observed vs predicted differences
  bool pass = false;
  std::uint64_t dim_total = 0;     // sum of mult * dim over observed entries
  std::uint64_t dim_expected = 0;  // q^4 (q - 1)
  // Cubic only: dimension split by cuspidality of the constituents.
  std::uint64_t dim_cuspidal = 0, dim_noncuspidal = 0;
};

TheoremReport verify_theorem(const Model& m);

}  // namespace weil
