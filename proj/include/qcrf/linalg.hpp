#pragma once

// Exact sparse linear algebra over Q(i): rank, reduced row echelon form and
// kernels. Rows are maps from column index to nonzero coefficient.

#include <cstddef>
#include <map>
#include <vector>

#include "qcrf/scalar.hpp"

namespace qcrf {

using SparseVector = std::map<std::size_t, GaussRational>;

/// Incremental row echelon basis: rows are reduced against the stored pivots
/// as they arrive, so rank queries over growing row sets are cheap.
class EchelonBasis {
 public:
  /// Reduces `row` against the basis; returns true (and stores it) if it was independent.
  bool insert(SparseVector row);
  /// Remainder of `row` after reduction (empty iff row lies in the span).
  SparseVector reduce(SparseVector row) const;
  bool contains(const SparseVector& row) const { return reduce(row).empty(); }
  std::size_t rank() const { return pivots_.size(); }
  /// Pivot column -> normalized row (pivot coefficient 1).
  const std::map<std::size_t, SparseVector>& rows() const { return pivots_; }

 private:
  std::map<std::size_t, SparseVector> pivots_;
};

std::size_t rank(const std::vector<SparseVector>& rows);

/// Basis of {x : row . x = 0 for all rows} in a space with `ncols` columns.
std::vector<SparseVector> kernel(const std::vector<SparseVector>& rows, std::size_t ncols);

/// a += c * b
void axpy(SparseVector& a, const GaussRational& c, const SparseVector& b);

}  // namespace qcrf
