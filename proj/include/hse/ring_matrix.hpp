#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hse/ideal.hpp"
#include "hse/linalg.hpp"

namespace hse {

/// Dense matrix of ring elements.
struct RingMatrix {
  int rows = 0, cols = 0;
  std::vector<Poly> data;  ///< row-major

  RingMatrix() = default;
  RingMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}
  Poly& at(int i, int j) { return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  const Poly& at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
  }
  bool is_zero() const;
  bool operator==(const RingMatrix&) const = default;
};

RingMatrix ring_matrix(const Ring& r, const QMatrix& m);
RingMatrix multiply(const Ring& r, const RingMatrix& a, const RingMatrix& b);
RingMatrix block_diagonal(const RingMatrix& a, const RingMatrix& b);
RingMatrix map_entries(const Ring& from, const RingMatrix& m, const Ring& to);
/// Entrywise evaluation at a rational point.
QMatrix evaluate(const Ring& r, const RingMatrix& m, std::span<const Rational> point);
/// Homogeneous part of degree d of every entry.
RingMatrix homogeneous_part(const RingMatrix& m, int d);

/// Determinant of the submatrix on the given rows and columns (equal
/// sizes) by Laplace expansion along the first row.
Poly minor(const Ring& r, const RingMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

struct MinorEntry {
  std::uint64_t rows = 0, cols = 0;  ///< index masks
  Poly value;
};

/// Every r x r minor, including zero ones, in lexicographic order of
/// (row subset, column subset). Laplace expansion with sub-minors memoized
/// per row subset; row subsets are processed in parallel.
std::vector<MinorEntry> all_minors(const Ring& r, const RingMatrix& m, int size);

/// Ideal generated by the size-r minors: r <= 0 gives the unit ideal and
/// r > min(rows, cols) the zero ideal.
Ideal minors(const Ring& r, const RingMatrix& m, int size, const std::string& tag = "minor");

/// Size-r minors of diag(a, b) as sums of products of minors of the blocks.
Ideal block_diagonal_minors(const Ring& r, const RingMatrix& a, const RingMatrix& b, int size,
                            const std::string& tag_a = "A", const std::string& tag_b = "B");

std::string mask_text(std::uint64_t mask);

}  // namespace hse
