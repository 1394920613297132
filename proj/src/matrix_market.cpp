#include "stokesdd/matrix_market.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stokesdd {

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    std::size_t k = 0;
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k])))
      ++k;
    if (k == line.size() || line[k] == '%') continue;
    return line;
  }
  return {};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(17);
  return out;
}

}  // namespace

void write_matrix_market(const std::string& path, const SparseMatrix& A) {
  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real "
      << (A.symmetric ? "symmetric" : "general") << "\n";

  index_t count = 0;
  for (index_t i = 0; i < A.nrows; ++i)
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
      if (!A.symmetric || A.col_indices[p] <= i) ++count;

  out << A.nrows << " " << A.ncols << " " << count << "\n";
  for (index_t i = 0; i < A.nrows; ++i)
    for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p) {
      const index_t j = A.col_indices[p];
      if (A.symmetric && j > i) continue;
      out << i + 1 << " " << j + 1 << " " << A.values[p] << "\n";
    }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);

  std::string banner;
  if (!std::getline(in, banner))
    throw std::runtime_error("empty matrix market file: " + path);
  std::istringstream hs(banner);
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix")
    throw std::runtime_error("not a matrix market file: " + path);
  if (format != "coordinate")
    throw std::runtime_error("only coordinate format supported: " + path);
  if (field != "real" && field != "integer")
    throw std::runtime_error("only real entries supported: " + path);
  const bool sym = symmetry == "symmetric";
  if (!sym && symmetry != "general")
    throw std::runtime_error("unsupported symmetry '" + symmetry + "': " + path);

  std::istringstream sz(next_content_line(in));
  long long nrows = -1, ncols = -1, nnz = -1;
  sz >> nrows >> ncols >> nnz;
  if (nrows < 0 || ncols < 0 || nnz < 0)
    throw std::runtime_error("bad size line: " + path);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(sym ? 2 * nnz : nnz));
  for (long long k = 0; k < nnz; ++k) {
    std::istringstream ln(next_content_line(in));
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(ln >> i >> j >> v))
      throw std::runtime_error("bad entry line: " + path);
    if (i < 1 || i > nrows || j < 1 || j > ncols)
      throw std::runtime_error("entry out of range: " + path);
    triplets.push_back({static_cast<index_t>(i - 1),
                        static_cast<index_t>(j - 1), v});
    if (sym && i != j)
      triplets.push_back({static_cast<index_t>(j - 1),
                          static_cast<index_t>(i - 1), v});
  }
  SparseMatrix A = SparseMatrix::from_triplets(static_cast<index_t>(nrows),
                                               static_cast<index_t>(ncols),
                                               std::move(triplets));
  A.symmetric = sym;
  return A;
}

void write_vector(const std::string& path, const std::vector<double>& v) {
  std::ofstream out = open_out(path);
  out << "% vector " << v.size() << "\n";
  for (double x : v) out << x << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<double> v;
  std::string line;
  while (!(line = next_content_line(in)).empty()) {
    std::istringstream ln(line);
    double x;
    while (ln >> x) v.push_back(x);
  }
  return v;
}

}  // namespace stokesdd
