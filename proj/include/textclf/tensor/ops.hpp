#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "textclf/tensor/tape.hpp"

namespace textclf::tensor {

/// Probability floor inside cross_entropy, keeps -ln(0) finite.
inline constexpr double kProbabilityFloor = 1e-12;

// Plain numeric helpers (no tape).

/// Max-subtracted softmax. Throws std::invalid_argument on empty input.
std::vector<double> softmax(std::span<const double> v);
/// -ln(probs[label] + kProbabilityFloor). Throws std::out_of_range on a bad label.
double cross_entropy(std::span<const double> probs, std::size_t label);
double sigmoid(double x);
double dot(std::span<const double> a, std::span<const double> b);
/// Index of the largest entry, lowest index on ties.
std::size_t argmax(std::span<const double> v);

// Differentiable ops. Vectors are rank 1, matrices rank 2 (rows x cols).

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double factor);
Var sigmoid(Var a);
Var tanh(Var a);
Var relu(Var a);

/// x W^T (+ b). x is {in} or {T, in}; W is {out, in}; b is {out}.
Var linear(Var x, Var weight);
Var linear(Var x, Var weight, Var bias);
/// A x for A {m, n}, x {n}.
Var matvec(Var a, Var x);
/// sum_t w_t X[t] for X {T, n}, w {T}.
Var weighted_sum_rows(Var x, Var weights);

/// Row r of a matrix, as a vector.
Var row(Var x, std::size_t r);
/// Contiguous slice of a vector.
Var slice(Var v, std::size_t begin, std::size_t length);
/// Vector concatenation.
Var concat(std::span<const Var> parts);
Var concat(Var a, Var b);
/// Column-wise concatenation of two matrices with equal row counts.
Var concat_cols(Var a, Var b);
/// Row-wise concatenation of two matrices with equal column counts.
Var concat_rows(Var a, Var b);
/// Stacks equal-length vectors into a {count, n} matrix.
Var stack_rows(std::span<const Var> rows);

/// Column-wise max over rows: {T, n} -> {n}. The winning row per column is
/// kept in the node's aux data (lowest row on ties).
Var max_rows(Var x);
/// Gathers rows of a {V, p} table: result {ids.size(), p}.
Var gather_rows(Var table, std::span<const std::size_t> ids);
/// Sliding windows: {T, q} -> {T - width + 1, width * q}.
Var unfold(Var x, std::size_t width);

Var softmax(Var v);
/// -ln(p[label] + kProbabilityFloor), shape {1}.
Var cross_entropy(Var probs, std::size_t label);
Var sum(Var v);
Var sum_squares(Var v);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator*(Var a, Var b) { return mul(a, b); }

}  // namespace textclf::tensor
