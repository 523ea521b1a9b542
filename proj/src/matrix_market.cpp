#include "vne/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace vne {

MatrixMarketError::MatrixMarketError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Reports the first entry of a general-format file whose mirror is missing or
// differs, by line number.
void check_general_symmetry(const std::vector<Triplet>& triplets,
                            const std::vector<std::size_t>& lines) {
  std::vector<std::size_t> order(triplets.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  const auto key_less = [&](std::size_t a, std::size_t b) {
    const auto& x = triplets[a];
    const auto& y = triplets[b];
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  };
  std::sort(order.begin(), order.end(), key_less);
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const auto& t = triplets[k];
    if (t.row == t.col) continue;
    const auto it = std::lower_bound(order.begin(), order.end(), k,
                                     [&](std::size_t a, std::size_t) {
                                       const auto& x = triplets[a];
                                       return x.row != t.col ? x.row < t.col : x.col < t.row;
                                     });
    const bool found = it != order.end() && triplets[*it].row == t.col && triplets[*it].col == t.row;
    const double mirrored = found ? triplets[*it].value : 0.0;
    if (std::abs(t.value - mirrored) > 1e-12 * std::max(1.0, std::abs(t.value))) {
      throw MatrixMarketError("general matrix is not symmetric: entry (" +
                                  std::to_string(t.row + 1) + ", " + std::to_string(t.col + 1) +
                                  ") has no matching (" + std::to_string(t.col + 1) + ", " +
                                  std::to_string(t.row + 1) + ") entry",
                              lines[k]);
    }
  }
}

}  // namespace

SymmetricSparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw MatrixMarketError("empty input", 1);
  ++line_no;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") {
    throw MatrixMarketError("missing %%MatrixMarket banner", line_no);
  }
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || format != "coordinate") {
    throw MatrixMarketError("only 'matrix coordinate' files are supported", line_no);
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw MatrixMarketError("unsupported field '" + field + "' (expected real)", line_no);
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw MatrixMarketError("unsupported symmetry '" + symmetry + "'", line_no);
  }
  const bool symmetric = symmetry == "symmetric";

  // Skip comments up to the size line.
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    break;
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz)) {
      throw MatrixMarketError("malformed size line", line_no);
    }
  }
  if (rows != cols || rows == 0) throw MatrixMarketError("matrix must be square and non-empty", line_no);

  std::vector<Triplet> triplets;
  std::vector<std::size_t> lines;
  triplets.reserve(nnz);
  lines.reserve(nnz);
  while (triplets.size() < nnz && std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v)) throw MatrixMarketError("malformed entry", line_no);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > rows || static_cast<std::size_t>(j) > cols) {
      throw MatrixMarketError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") out of range for " + std::to_string(rows) + "x" +
                                  std::to_string(cols) + " matrix",
                              line_no);
    }
    auto r = static_cast<std::size_t>(i - 1);
    auto c = static_cast<std::size_t>(j - 1);
    if (symmetric && r < c) std::swap(r, c);
    triplets.push_back({r, c, v});
    lines.push_back(line_no);
  }
  if (triplets.size() < nnz) {
    throw MatrixMarketError("expected " + std::to_string(nnz) + " entries, found " +
                                std::to_string(triplets.size()),
                            line_no);
  }

  if (!symmetric) check_general_symmetry(triplets, lines);

  try {
    return SymmetricSparseMatrix::from_triplets(
        rows, triplets, symmetric ? TripletPattern::lower : TripletPattern::full);
  } catch (const std::invalid_argument& e) {
    throw MatrixMarketError(e.what(), 0);
  }
}

SymmetricSparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError("cannot open '" + path.string() + "'", 0);
  return read_matrix_market(in);
}

void write_matrix_market(const SymmetricSparseMatrix& a, std::ostream& out) {
  std::size_t lower_nnz = 0;
  for (const auto& t : a.entries()) lower_nnz += t.row >= t.col ? 1 : 0;
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << a.dim() << ' ' << a.dim() << ' ' << lower_nnz << '\n';
  char buf[64];
  for (const auto& t : a.entries()) {
    if (t.row < t.col) continue;
    std::snprintf(buf, sizeof buf, "%.17g", t.value);
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << buf << '\n';
  }
}

void write_matrix_market(const SymmetricSparseMatrix& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw MatrixMarketError("cannot write '" + path.string() + "'", 0);
  write_matrix_market(a, out);
  if (!out) throw MatrixMarketError("write to '" + path.string() + "' failed", 0);
}

}  // namespace vne
