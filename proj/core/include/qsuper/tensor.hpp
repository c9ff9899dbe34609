// Copyright 2026 The qsuper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSUPER_TENSOR_HPP_
#define QSUPER_TENSOR_HPP_

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qsuper {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;
using Labels = std::vector<std::string>;

inline constexpr double kUnitaryTol = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown, duplicated or colliding factor labels.
class LabelError : public Error {
 public:
  using Error::Error;
};

// Shapes or dimensions that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numerical invariant failed beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

struct Factor {
  std::string label;
  Index dim = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// Ordered list of labelled tensor factors. Composite indices are row-major:
// the last factor varies fastest.
class SystemDims {
 public:
  SystemDims() = default;
  SystemDims(std::initializer_list<Factor> factors);
  explicit SystemDims(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  Index total_dim() const;
  Labels labels() const;

  std::optional<std::size_t> position(std::string_view label) const;
  bool contains(std::string_view label) const { return position(label).has_value(); }
  Index dim_of(std::string_view label) const;

  SystemDims concat(const SystemDims& other) const;
  // Factors named in `labels`, in that order.
  SystemDims select(const Labels& labels) const;
  SystemDims drop(const Labels& labels) const;
  // Same factors, possibly in another order.
  bool same_factors(const SystemDims& other) const;

  std::string to_string() const;

  friend bool operator==(const SystemDims&, const SystemDims&) = default;

 private:
  std::vector<Factor> factors_;
};

// new_index -> old_index for reading `from` in the factor order of `to`.
std::vector<Index> permutation_map(const SystemDims& from, const SystemDims& to);

class LinOp {
 public:
  LinOp() = default;
  LinOp(SystemDims in, SystemDims out, Matrix data);

  static LinOp identity(const SystemDims& space);

  const SystemDims& in() const { return in_; }
  const SystemDims& out() const { return out_; }
  const Matrix& data() const { return data_; }

 private:
  SystemDims in_;
  SystemDims out_;
  Matrix data_;
};

class CVec {
 public:
  CVec() = default;
  CVec(SystemDims space, Vector data);

  static CVec basis(const SystemDims& space, Index index);

  const SystemDims& space() const { return space_; }
  const Vector& data() const { return data_; }

 private:
  SystemDims space_;
  Vector data_;
};

LinOp kron(const LinOp& a, const LinOp& b);
CVec kron(const CVec& a, const CVec& b);
LinOp adjoint(const LinOp& a);

// Reorders factors. Each label of `order` must name a factor of the input
// or output space; the labels found in each space fix its new order.
LinOp permute_systems(const LinOp& a, const Labels& order);
CVec permute_systems(const CVec& x, const Labels& order);
// Reorders both spaces to match the factor order of `in` and `out`.
LinOp aligned(const LinOp& a, const SystemDims& in, const SystemDims& out);
CVec aligned(const CVec& x, const SystemDims& space);

// Requires an operator whose input and output spaces hold the same factors.
LinOp partial_trace(const LinOp& a, const Labels& traced);
// Contracts each listed label that occurs in both spaces, the generalised
// trace that closes a loop from an output wire back into an input wire.
LinOp trace_loops(const LinOp& a, const Labels& loops);
LinOp partial_transpose(const LinOp& a, const Labels& labels);
// Applies <phi| on the factors of phi's space.
CVec contract_bra(const CVec& phi, const CVec& x);

// outer * inner with inner's output factors matched to outer's input by label.
LinOp compose(const LinOp& outer, const LinOp& inner);
// Chains two operators, padding each with identities on the wires it does
// not touch. Labels in inner.out and outer.in are joined.
LinOp compose_padded(const LinOp& outer, const LinOp& inner);

struct UnitaryCheck {
  bool unitary = false;
  double residual = 0.0;
};
UnitaryCheck is_unitary(const LinOp& a, double tol = kUnitaryTol);

double max_abs(const Matrix& m);
// Rescales by a phase so the largest-magnitude entry is real and positive.
Matrix canonical_phase(const Matrix& m);
LinOp canonical_phase(const LinOp& a);
// max |a - e^{i t} b| for the phase t that best aligns b with a.
double phase_residual(const Matrix& a, const Matrix& b);
double phase_residual(const LinOp& a, const LinOp& b);

}  // namespace qsuper

#endif  // QSUPER_TENSOR_HPP_
