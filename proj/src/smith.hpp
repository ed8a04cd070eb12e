#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "error.hpp"

namespace khtor {

struct SmithResult {
  std::vector<mpz_class> factors;  // invariant factors, divisibility chain
  std::vector<int> pivot_rows;     // original indices, aligned with factors
  std::vector<int> pivot_cols;
  std::vector<mpz_class> rhs;      // left transform applied to the given rhs
  // Right transform columns: vcols[c] is column c of V (original indexing),
  // each of length cols. Present only when requested.
  std::vector<std::vector<mpz_class>> vcols;

  int rank() const { return static_cast<int>(factors.size()); }
  int rank_mod2() const;
  std::vector<long long> torsion() const;  // factors > 1, as int64
};

// Smith normal form of a sparse integer matrix. Elimination runs in two
// stages: unit pivots chosen by a Markowitz-style heuristic on the sparse
// structure, then a dense sweep with divisibility fixups on whatever is
// left. Arbitrary-precision throughout; intermediate entries can outgrow
// any fixed width even on {-1,0,1} inputs.
class SmithEngine {
 public:
  SmithEngine(int rows, int cols);

  void add(int r, int c, const mpz_class& v);  // accumulates duplicates
  void set_rhs(std::vector<mpz_class> rhs);
  void track_right_transform();

  SmithResult run();

 private:
  int nrows_, ncols_;
  std::vector<std::vector<std::pair<int, mpz_class>>> build_;
  std::optional<std::vector<mpz_class>> rhs_;
  bool want_v_ = false;
};

// Convenience wrapper for dense inputs (tests, small checks).
SmithResult smith_normal_form(const std::vector<std::vector<long long>>& m);

}  // namespace khtor
