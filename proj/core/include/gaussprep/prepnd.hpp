// Copyright 2026 The gaussprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSPREP_PREPND_HPP
#define GAUSSPREP_PREPND_HPP

// S-dimensional Gaussians exp(-x^T A x / 2) on S registers of k qubits.
//
// A is factored as A = M^-T D M^-1 with M unit upper triangular. The product
// of 1D Gaussians with variances 1/d_i is prepared first, then the basis is
// relabelled n -> M n by elementary floored shears, each an exact bijection
// of the two's complement box B^S.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussprep/statevec.hpp"

namespace gaussprep {

/// Real symmetric S x S matrix, stored row-major.
class QuadraticForm {
   public:
    /// Symmetrizes entries whose mismatch is within 1e-12 of the largest
    /// entry; throws std::invalid_argument for anything less symmetric.
    QuadraticForm(std::size_t dim, std::vector<double> entries);

    /// First line S, then S rows of S numbers.
    static QuadraticForm read(std::istream &in);

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    std::span<const double> entries() const { return entries_; }
    double max_abs() const;
    /// Partial-pivoting elimination; independent of decompose().
    double determinant() const;
    /// x^T A x
    double evaluate(std::span<const double> x) const;

   private:
    std::size_t dim_;
    std::vector<double> entries_;
};

/// Unit upper-triangular matrix with one off-diagonal entry `value` at
/// (row, col), row < col. Acting on coordinates: x[row] += value * x[col].
struct ShearFactor {
    std::size_t row = 0;
    std::size_t col = 1;
    double value = 0.0;
};

struct UdutDecomposition {
    std::size_t dim = 0;
    /// factors[0] * factors[1] * ... == M. Listed column by column, rightmost
    /// column first; factors within one column commute.
    std::vector<ShearFactor> factors;
    std::vector<double> diagonal;

    /// Dense M, row-major, from the ordered product of the factors.
    std::vector<double> shear_matrix() const;
};

class NotPositiveDefinite : public std::runtime_error {
   public:
    explicit NotPositiveDefinite(std::size_t pivot);
    std::size_t pivot() const { return pivot_; }

   private:
    std::size_t pivot_;
};

/// M^T A M = D by A-orthogonalizing the unit vectors left to right.
UdutDecomposition decompose(const QuadraticForm &form);

/// max |(M^T A M - D)_ij|
double congruence_residual(const QuadraticForm &form, const UdutDecomposition &dec);

enum class ShearRounding { Floor, Nearest };

std::int64_t shear_offset(double value, std::int64_t coord, ShearRounding rounding);

/// Relabels basis states by x[row] <- wrap(x[row] +/- round(value * x[col]))
/// on signed coordinates. `inverse` subtracts the same rounded term.
StateVector apply_elementary_shear(const StateVector &state, const ShearFactor &factor, const SignedCodec &codec,
                                   ShearRounding rounding = ShearRounding::Floor, bool inverse = false);

/// Applies M (all factors, last listed first).
StateVector apply_shears(const StateVector &state, const UdutDecomposition &dec, const SignedCodec &codec,
                         ShearRounding rounding = ShearRounding::Floor);

/// Adds `shift` to every coordinate modulo 2^k.
StateVector shift_coordinates(const StateVector &state, std::span<const std::int64_t> shift, const SignedCodec &codec);

/// Registers x1..xS of k qubits, x1 most significant.
RegisterLayout coordinate_layout(std::size_t dim, unsigned bits);

/// Tensor product of centered 1D states with sigma_i = 1 / sqrt(d_i).
StateVector prepare_diagonal(std::span<const double> diagonal, unsigned bits);

struct NdPreparation {
    StateVector state;
    UdutDecomposition decomposition;
    std::vector<std::string> warnings;
};

NdPreparation prepare_general(const QuadraticForm &form, unsigned bits,
                              const std::optional<std::vector<std::int64_t>> &mean = std::nullopt,
                              ShearRounding rounding = ShearRounding::Floor);

struct OracleState {
    StateVector state;
    /// SUM over B^S of exp(-(x-mu)^T A (x-mu)) before normalization.
    double raw_squared_sum = 0.0;
    /// pi^(S/2) / sqrt(det A), the continuum value of the same sum.
    double continuum_squared_sum = 0.0;
};

/// Brute-force target amplitudes over the whole box, normalized by summation.
OracleState target_oracle(const QuadraticForm &form, unsigned bits,
                          const std::optional<std::vector<std::int64_t>> &mean = std::nullopt);

/// Union bound on the mass that wraps around the box: target marginals plus
/// the periodized diagonal stage.
double tail_mass_estimate(const UdutDecomposition &dec, unsigned bits);

struct NdReport {
    double residual = 0.0;
    double det_a = 0.0;
    double det_d = 0.0;
    double tail_mass = 0.0;
    std::optional<double> fidelity;  // absent when the oracle is over budget
};

NdReport nd_report(const QuadraticForm &form, unsigned bits, const std::optional<std::vector<std::int64_t>> &mean,
                   const NdPreparation &prepared);

}  // namespace gaussprep

#endif  // GAUSSPREP_PREPND_HPP
