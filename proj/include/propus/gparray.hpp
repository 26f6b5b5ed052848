#pragma once

#include <filesystem>
#include <vector>

#include "propus/seqcore.hpp"

namespace propus::gparray {

// Dense integer square matrix, row-major. Assembled GP arrays hold +-1 only.
struct SquareMatrix {
  int order = 0;
  std::vector<int> entries;

  SquareMatrix() = default;
  explicit SquareMatrix(int n) : order(n), entries(std::size_t(n) * std::size_t(n), 0) {}

  int at(int i, int j) const { return entries[std::size_t(i) * std::size_t(order) + std::size_t(j)]; }
  int& at(int i, int j) { return entries[std::size_t(i) * std::size_t(order) + std::size_t(j)]; }
  bool operator==(const SquareMatrix&) const = default;
};

// Circulant with the given first row: entry(i,j) = row[(j-i) mod v].
SquareMatrix circulant(const seqcore::PmSequence& first_row);

// Identity with rows reversed. R^T = R, R^2 = I; conjugation by R
// transposes circulants.
SquareMatrix back_identity(int v);

SquareMatrix transpose(const SquareMatrix& m);
SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);

// The 4v x 4v GP block array
//   [  A    BR    CR    DR  ]
//   [  CR   D'R   -A   -B'R ]
//   [  BR   -A   -D'R   C'R ]
//   [  DR  -C'R   B'R   -A  ]
// (X' = X transposed). With A,B,C,D circulant, A symmetric, B = C, and the
// four PAFs summing right, the result is a symmetric Hadamard matrix.
SquareMatrix assemble_gp(const SquareMatrix& a, const SquareMatrix& b,
                         const SquareMatrix& c, const SquareMatrix& d);

// H * H^T == n*I, exact integer arithmetic. Throws on non +-1 entries.
bool verify_hadamard(const SquareMatrix& h);

bool verify_symmetric(const SquareMatrix& h);

// Binary PPM (P6), one pixel per entry scaled by `scale`:
// +1 -> white (255,255,255), -1 -> red (255,0,0).
void render_image(const SquareMatrix& h, const std::filesystem::path& path, int scale = 1);

// Matrix text format: first line the order, then one row per line as +/-.
void write_matrix_text(const std::filesystem::path& path, const SquareMatrix& h);
SquareMatrix read_matrix_text(const std::filesystem::path& path);

}  // namespace propus::gparray
