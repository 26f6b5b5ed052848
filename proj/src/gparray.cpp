#include "propus/gparray.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

#include "propus/common.hpp"

namespace propus::gparray {

SquareMatrix circulant(const seqcore::PmSequence& row) {
  int v = row.v;
  if (v < 1 || static_cast<int>(row.entries.size()) != v)
    throw std::invalid_argument("bad first row");
  SquareMatrix m(v);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      m.at(i, j) = row.entries[static_cast<std::size_t>(((j - i) % v + v) % v)];
  return m;
}

SquareMatrix back_identity(int v) {
  if (v < 1) throw std::invalid_argument("order must be positive");
  SquareMatrix m(v);
  for (int i = 0; i < v; ++i) m.at(i, v - 1 - i) = 1;
  return m;
}

SquareMatrix transpose(const SquareMatrix& m) {
  SquareMatrix t(m.order);
  for (int i = 0; i < m.order; ++i)
    for (int j = 0; j < m.order; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.order != b.order) throw std::invalid_argument("order mismatch");
  int n = a.order;
  SquareMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < n; ++t) {
      int aij = a.at(i, t);
      if (aij == 0) continue;
      for (int j = 0; j < n; ++j) c.at(i, j) += aij * b.at(t, j);
    }
  return c;
}

namespace {

// Writes src (optionally negated) into dst at block position (bi, bj).
void put_block(SquareMatrix& dst, const SquareMatrix& src, int bi, int bj, int sign) {
  int v = src.order;
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) dst.at(bi * v + i, bj * v + j) = sign * src.at(i, j);
}

}  // namespace

SquareMatrix assemble_gp(const SquareMatrix& a, const SquareMatrix& b,
                         const SquareMatrix& c, const SquareMatrix& d) {
  int v = a.order;
  if (b.order != v || c.order != v || d.order != v)
    throw std::invalid_argument("blocks must share one order");
  SquareMatrix r = back_identity(v);
  SquareMatrix br = multiply(b, r);
  SquareMatrix cr = multiply(c, r);
  SquareMatrix dr = multiply(d, r);
  SquareMatrix btr = multiply(transpose(b), r);
  SquareMatrix ctr = multiply(transpose(c), r);
  SquareMatrix dtr = multiply(transpose(d), r);

  SquareMatrix h(4 * v);
  put_block(h, a, 0, 0, +1);
  put_block(h, br, 0, 1, +1);
  put_block(h, cr, 0, 2, +1);
  put_block(h, dr, 0, 3, +1);

  put_block(h, cr, 1, 0, +1);
  put_block(h, dtr, 1, 1, +1);
  put_block(h, a, 1, 2, -1);
  put_block(h, btr, 1, 3, -1);

  put_block(h, br, 2, 0, +1);
  put_block(h, a, 2, 1, -1);
  put_block(h, dtr, 2, 2, -1);
  put_block(h, ctr, 2, 3, +1);

  put_block(h, dr, 3, 0, +1);
  put_block(h, ctr, 3, 1, -1);
  put_block(h, btr, 3, 2, +1);
  put_block(h, a, 3, 3, -1);
  return h;
}

bool verify_hadamard(const SquareMatrix& h) {
  for (int e : h.entries)
    if (e != 1 && e != -1) throw std::invalid_argument("entries must be +-1");
  int n = h.order;
  // Row-pair dot products, exact integers: n on the diagonal, 0 off it.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int dot = 0;
      for (int t = 0; t < n; ++t) dot += h.at(i, t) * h.at(j, t);
      if (dot != (i == j ? n : 0)) return false;
    }
  return true;
}

bool verify_symmetric(const SquareMatrix& h) {
  for (int i = 0; i < h.order; ++i)
    for (int j = i + 1; j < h.order; ++j)
      if (h.at(i, j) != h.at(j, i)) return false;
  return true;
}

void render_image(const SquareMatrix& h, const std::filesystem::path& path, int scale) {
  for (int e : h.entries)
    if (e != 1 && e != -1) throw std::invalid_argument("entries must be +-1");
  if (scale < 1) throw std::invalid_argument("scale must be >= 1");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  int side = h.order * scale;
  out << "P6\n" << side << " " << side << "\n255\n";
  std::string row;
  row.reserve(static_cast<std::size_t>(side) * 3);
  for (int i = 0; i < h.order; ++i) {
    row.clear();
    for (int j = 0; j < h.order; ++j) {
      char g = h.at(i, j) == 1 ? char(0xFF) : char(0x00);
      for (int s = 0; s < scale; ++s) {
        row.push_back(char(0xFF));
        row.push_back(g);
        row.push_back(g);
      }
    }
    for (int s = 0; s < scale; ++s) out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_matrix_text(const std::filesystem::path& path, const SquareMatrix& h) {
  for (int e : h.entries)
    if (e != 1 && e != -1) throw std::invalid_argument("entries must be +-1");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << h.order << "\n";
  for (int i = 0; i < h.order; ++i) {
    for (int j = 0; j < h.order; ++j) out << (h.at(i, j) == 1 ? '+' : '-');
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

SquareMatrix read_matrix_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  int n = 0;
  if (!(in >> n) || n < 1) throw DataError(path.string() + ": bad order line");
  std::string line;
  std::getline(in, line);
  SquareMatrix h(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line) || static_cast<int>(line.size()) != n)
      throw DataError(path.string() + ": bad row " + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      if (line[static_cast<std::size_t>(j)] == '+') h.at(i, j) = 1;
      else if (line[static_cast<std::size_t>(j)] == '-') h.at(i, j) = -1;
      else throw DataError(path.string() + ": bad glyph in row " + std::to_string(i));
    }
  }
  return h;
}

}  // namespace propus::gparray
