#include "vne/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vne {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

}  // namespace

SymmetricSparseMatrix SymmetricSparseMatrix::from_triplets(std::size_t dim,
                                                           std::span<const Triplet> triplets,
                                                           TripletPattern pattern) {
  if (dim == 0) {
    throw DimensionError("matrix dimension must be positive");
  }
  std::vector<Triplet> work;
  work.reserve(pattern == TripletPattern::lower ? 2 * triplets.size() : triplets.size());
  for (const auto& t : triplets) {
    if (t.row >= dim || t.col >= dim) {
      std::ostringstream msg;
      msg << "entry (" << t.row << ", " << t.col << ") outside " << dim << "x" << dim
          << " matrix";
      throw DimensionError(msg.str());
    }
    if (pattern == TripletPattern::lower) {
      if (t.row < t.col) {
        std::ostringstream msg;
        msg << "entry (" << t.row << ", " << t.col << ") is above the diagonal";
        throw std::invalid_argument(msg.str());
      }
      work.push_back(t);
      if (t.row != t.col) work.push_back({t.col, t.row, t.value});
    } else {
      work.push_back(t);
    }
  }

  std::sort(work.begin(), work.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SymmetricSparseMatrix m;
  m.dim_ = dim;
  m.row_offsets_.assign(dim + 1, 0);
  for (std::size_t k = 0; k < work.size();) {
    const std::size_t r = work[k].row;
    const std::size_t c = work[k].col;
    double v = 0.0;
    for (; k < work.size() && work[k].row == r && work[k].col == c; ++k) v += work[k].value;
    if (v == 0.0) continue;
    m.col_indices_.push_back(c);
    m.values_.push_back(v);
    ++m.row_offsets_[r + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];

  if (pattern == TripletPattern::full) {
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t k = m.row_offsets_[r]; k < m.row_offsets_[r + 1]; ++k) {
        const std::size_t c = m.col_indices_[k];
        const double v = m.values_[k];
        const double mirrored = m.at(c, r);
        if (std::abs(v - mirrored) > kSymmetryTolerance * std::max(1.0, std::abs(v))) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "matrix is not symmetric: A(" << r << "," << c << ") = " << v << " but A(" << c
              << "," << r << ") = " << mirrored;
          throw std::invalid_argument(msg.str());
        }
      }
    }
  }
  return m;
}

SymmetricSparseMatrix SymmetricSparseMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), t, TripletPattern::full);
}

SymmetricSparseMatrix SymmetricSparseMatrix::scaled_identity(std::size_t dim, double c) {
  return diagonal(std::vector<double>(dim, c));
}

double SymmetricSparseMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw DimensionError("index outside matrix");
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

std::vector<Triplet> SymmetricSparseMatrix::entries() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      out.push_back({r, col_indices_[k], values_[k]});
    }
  }
  return out;
}

void matvec(const SymmetricSparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.dim() || y.size() != a.dim()) {
    throw DimensionError("matvec: vector length does not match matrix dimension");
  }
  for (std::size_t r = 0; r < a.dim(); ++r) y[r] = a.row_dot(r, x);
}

std::vector<double> matvec(const SymmetricSparseMatrix& a, std::span<const double> x) {
  std::vector<double> y(a.dim());
  matvec(a, x, y);
  return y;
}

double trace(const SymmetricSparseMatrix& a) noexcept {
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  double sum = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    const auto first = cols.begin() + static_cast<std::ptrdiff_t>(offsets[r]);
    const auto last = cols.begin() + static_cast<std::ptrdiff_t>(offsets[r + 1]);
    const auto it = std::lower_bound(first, last, r);
    if (it != last && *it == r) sum += vals[static_cast<std::size_t>(it - cols.begin())];
  }
  return sum;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace vne
