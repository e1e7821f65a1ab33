#pragma once

#include <optional>
#include <vector>

#include "gha/poly.hpp"

namespace gha {

/// Dense square matrix over Scalar. Entry (r, c) is the coefficient of basis
/// vector r in the image of basis vector c.
class Matrix {
 public:
  Matrix(std::size_t n, Backend b);
  static Matrix identity(std::size_t n, Backend b);

  std::size_t size() const { return n_; }
  Backend backend() const { return b_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  const std::vector<Scalar>& entries() const { return a_; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scale(const Scalar& s) const;
  Matrix pow(unsigned e) const;
  /// Exact equality, or entrywise within tol for approximate matrices.
  bool operator==(const Matrix& o) const;
  bool is_zero() const;
  /// s when the matrix equals s*I.
  std::optional<Scalar> as_scalar() const;
  std::optional<Matrix> inverse() const;
  Matrix to_approx() const;

  double max_abs() const;
  /// p(M).
  Matrix evaluate(const Poly& p) const;
  /// det(t I - M), by Faddeev-LeVerrier.
  Poly characteristic_polynomial() const;
  unsigned conductor() const;

 private:
  std::size_t n_;
  Backend b_;
  std::vector<Scalar> a_;
};

/// Dimension of the unital algebra generated by `gens`: the span of
/// {I} U gens closed under left multiplication by each generator.
std::size_t generated_algebra_dimension(const std::vector<Matrix>& gens);

/// Whether span{e_k : k >= from} is mapped into itself by every matrix.
bool tail_subspace_invariant(const std::vector<Matrix>& mats, std::size_t from);

}  // namespace gha
