#include "qcrf/linalg.hpp"

namespace qcrf {

void axpy(SparseVector& a, const GaussRational& c, const SparseVector& b) {
  if (c.is_zero()) return;
  for (const auto& [col, v] : b) {
    auto it = a.find(col);
    if (it == a.end()) {
      a.emplace(col, c * v);
    } else {
      it->second += c * v;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

SparseVector EchelonBasis::reduce(SparseVector row) const {
  // Pivot rows are fully reduced against each other, so one left-to-right sweep suffices.
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    std::size_t col = it->first;
    GaussRational c = -it->second;
    axpy(row, c, p->second);
    it = row.upper_bound(col);
  }
  return row;
}

bool EchelonBasis::insert(SparseVector row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  const std::size_t pivot = row.begin()->first;
  GaussRational inv = row.begin()->second.inverse();
  for (auto& [col, v] : row) v *= inv;
  for (auto& [other_pivot, other] : pivots_) {
    auto f = other.find(pivot);
    if (f != other.end()) {
      GaussRational c = -f->second;
      axpy(other, c, row);
    }
  }
  pivots_.emplace(pivot, std::move(row));
  return true;
}

std::size_t rank(const std::vector<SparseVector>& rows) {
  EchelonBasis basis;
  for (const SparseVector& r : rows) basis.insert(r);
  return basis.rank();
}

std::vector<SparseVector> kernel(const std::vector<SparseVector>& rows, std::size_t ncols) {
  EchelonBasis basis;
  for (const SparseVector& r : rows) basis.insert(r);
  std::vector<SparseVector> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (basis.rows().count(free)) continue;
    SparseVector v{{free, GaussRational(1)}};
    for (const auto& [pivot, row] : basis.rows()) {
      auto f = row.find(free);
      if (f != row.end()) v.emplace(pivot, -f->second);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace qcrf
