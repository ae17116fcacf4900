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

#include "gaussprep/prepnd.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

#include "gaussprep/prep1d.hpp"

namespace gaussprep {

QuadraticForm::QuadraticForm(std::size_t dim, std::vector<double> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1) throw std::invalid_argument("QuadraticForm: dimension must be at least 1");
    if (entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("QuadraticForm: expected " + std::to_string(dim_ * dim_) + " entries");
    }
    for (const double v : entries_) {
        if (!std::isfinite(v)) throw std::invalid_argument("QuadraticForm: non-finite entry");
    }
    const double scale = max_abs();
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            double &a = entries_[i * dim_ + j];
            double &b = entries_[j * dim_ + i];
            if (std::abs(a - b) > 1e-12 * scale) {
                throw std::invalid_argument("QuadraticForm: matrix is not symmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
            a = b = 0.5 * (a + b);
        }
    }
}

QuadraticForm QuadraticForm::read(std::istream &in) {
    std::size_t dim = 0;
    if (!(in >> dim) || dim < 1) throw std::invalid_argument("matrix file: first token must be the dimension S >= 1");
    std::vector<double> entries(dim * dim);
    for (auto &v : entries) {
        if (!(in >> v)) throw std::invalid_argument("matrix file: expected " + std::to_string(dim * dim) + " entries");
    }
    return QuadraticForm(dim, std::move(entries));
}

double QuadraticForm::max_abs() const {
    double m = 0.0;
    for (const double v : entries_) m = std::max(m, std::abs(v));
    return m;
}

double QuadraticForm::determinant() const {
    std::vector<double> a = entries_;
    const std::size_t n = dim_;
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        }
        if (a[piv * n + c] == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return det;
}

double QuadraticForm::evaluate(std::span<const double> x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) row += entries_[i * dim_ + j] * x[j];
        acc += x[i] * row;
    }
    return acc;
}

std::vector<double> UdutDecomposition::shear_matrix() const {
    const std::size_t n = dim;
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    // Right-multiply by each factor in order: column `col` gains value * column `row`.
    for (const auto &f : factors) {
        for (std::size_t r = 0; r < n; ++r) m[r * n + f.col] += f.value * m[r * n + f.row];
    }
    return m;
}

NotPositiveDefinite::NotPositiveDefinite(std::size_t pivot)
    : std::runtime_error("matrix is not positive definite (pivot " + std::to_string(pivot) + " <= 0)"),
      pivot_(pivot) {}

UdutDecomposition decompose(const QuadraticForm &form) {
    const std::size_t n = form.dim();
    // Columns of M; column j is e_j minus its A-projections on columns < j.
    std::vector<std::vector<double>> cols(n, std::vector<double>(n, 0.0));
    std::vector<double> a_col(n);
    UdutDecomposition dec;
    dec.dim = n;
    dec.diagonal.resize(n);

    auto a_times = [&](const std::vector<double> &v, std::vector<double> &out) {
        for (std::size_t r = 0; r < n; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += form(r, c) * v[c];
            out[r] = acc;
        }
    };

    for (std::size_t j = 0; j < n; ++j) {
        auto &mj = cols[j];
        mj[j] = 1.0;
        for (std::size_t i = 0; i < j; ++i) {
            a_times(cols[i], a_col);
            double proj = 0.0;
            for (std::size_t r = 0; r < n; ++r) proj += a_col[r] * mj[r];
            const double coef = proj / dec.diagonal[i];
            for (std::size_t r = 0; r <= i; ++r) mj[r] -= coef * cols[i][r];
        }
        a_times(mj, a_col);
        double pivot = 0.0;
        for (std::size_t r = 0; r < n; ++r) pivot += mj[r] * a_col[r];
        if (!(pivot > 0.0)) throw NotPositiveDefinite(j);
        dec.diagonal[j] = pivot;
    }

    for (std::size_t j = n; j-- > 1;) {
        for (std::size_t i = 0; i < j; ++i) {
            if (cols[j][i] != 0.0) dec.factors.push_back(ShearFactor{i, j, cols[j][i]});
        }
    }
    return dec;
}

double congruence_residual(const QuadraticForm &form, const UdutDecomposition &dec) {
    const std::size_t n = form.dim();
    const auto m = dec.shear_matrix();
    std::vector<double> am(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) am[i * n + j] += form(i, k) * m[k * n + j];
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += m[k * n + i] * am[k * n + j];
            if (i == j) v -= dec.diagonal[i];
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

std::int64_t shear_offset(double value, std::int64_t coord, ShearRounding rounding) {
    const double t = value * static_cast<double>(coord);
    return static_cast<std::int64_t>(rounding == ShearRounding::Floor ? std::floor(t) : std::floor(t + 0.5));
}

RegisterLayout coordinate_layout(std::size_t dim, unsigned bits) {
    std::vector<Register> regs;
    for (std::size_t i = 0; i < dim; ++i) regs.push_back(Register{"x" + std::to_string(i + 1), bits});
    return RegisterLayout(std::move(regs));
}

namespace {

std::size_t coordinate_count(const StateVector &state, const SignedCodec &codec) {
    const auto &layout = state.layout();
    for (const auto &r : layout.registers()) {
        if (r.width != codec.bits()) throw std::invalid_argument("state registers do not match the coordinate width");
    }
    return layout.count();
}

}  // namespace

StateVector apply_elementary_shear(const StateVector &state, const ShearFactor &factor, const SignedCodec &codec,
                                   ShearRounding rounding, bool inverse) {
    const std::size_t dim = coordinate_count(state, codec);
    if (factor.row >= factor.col || factor.col >= dim) {
        throw std::invalid_argument("shear factor must sit strictly above the diagonal");
    }
    const auto &layout = state.layout();
    return permute_basis(state, [&](std::uint64_t index) {
        const std::int64_t src = codec.decode(layout.extract(index, factor.col));
        const std::int64_t dst = codec.decode(layout.extract(index, factor.row));
        const std::int64_t step = shear_offset(factor.value, src, rounding);
        const std::int64_t moved = codec.wrap(inverse ? dst - step : dst + step);
        return layout.insert(index, factor.row, static_cast<std::uint64_t>(moved));
    });
}

StateVector apply_shears(const StateVector &state, const UdutDecomposition &dec, const SignedCodec &codec,
                         ShearRounding rounding) {
    StateVector out = state;
    for (auto it = dec.factors.rbegin(); it != dec.factors.rend(); ++it) {
        out = apply_elementary_shear(out, *it, codec, rounding);
    }
    return out;
}

StateVector shift_coordinates(const StateVector &state, std::span<const std::int64_t> shift, const SignedCodec &codec) {
    const std::size_t dim = coordinate_count(state, codec);
    if (shift.size() != dim) throw std::invalid_argument("shift_coordinates: one offset per coordinate required");
    const auto &layout = state.layout();
    return permute_basis(state, [&](std::uint64_t index) {
        for (std::size_t r = 0; r < dim; ++r) {
            const std::int64_t v = codec.decode(layout.extract(index, r));
            index = layout.insert(index, r, static_cast<std::uint64_t>(codec.wrap(v + shift[r])));
        }
        return index;
    });
}

StateVector prepare_diagonal(std::span<const double> diagonal, unsigned bits) {
    if (diagonal.empty()) throw std::invalid_argument("prepare_diagonal: empty diagonal");
    check_amplitude_budget(static_cast<unsigned>(diagonal.size() * bits));
    std::optional<StateVector> out;
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        if (!(diagonal[i] > 0.0)) throw std::invalid_argument("prepare_diagonal: entries must be positive");
        PrepConfig cfg;
        cfg.params = {1.0 / std::sqrt(diagonal[i]), 0.0};
        cfg.n_qubits = bits;
        cfg.register_name = "x" + std::to_string(i + 1);
        // xi with mu = 0 is periodic mod 2^k, so reading the unsigned index as
        // two's complement centers it on B without further work.
        auto one = prepare_xi(cfg).state;
        out = out ? tensor(*out, one) : std::move(one);
    }
    return std::move(*out);
}

double tail_mass_estimate(const UdutDecomposition &dec, unsigned bits) {
    const std::size_t n = dec.dim;
    const auto m = dec.shear_matrix();
    const double edge = std::ldexp(1.0, static_cast<int>(bits) - 1);
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // (A^-1)_ii = SUM_j M_ij^2 / d_j; |psi|^2 has marginal variance (A^-1)_ii / 2.
        double inv = 0.0;
        for (std::size_t j = 0; j < n; ++j) inv += m[i * n + j] * m[i * n + j] / dec.diagonal[j];
        tail += std::erfc(edge / std::sqrt(inv));
        tail += std::erfc(edge * std::sqrt(dec.diagonal[i]));
    }
    return std::min(1.0, tail);
}

NdPreparation prepare_general(const QuadraticForm &form, unsigned bits,
                              const std::optional<std::vector<std::int64_t>> &mean, ShearRounding rounding) {
    const SignedCodec codec(bits);
    if (mean) {
        if (mean->size() != form.dim()) throw std::invalid_argument("prepare_general: mean has the wrong dimension");
        for (const auto v : *mean) {
            if (!codec.contains(v)) throw std::out_of_range("prepare_general: mean component outside the register range");
        }
    }
    auto dec = decompose(form);
    auto state = prepare_diagonal(dec.diagonal, bits);
    state = apply_shears(state, dec, codec, rounding);
    if (mean) state = shift_coordinates(state, *mean, codec);

    std::vector<std::string> warnings;
    const double tail = tail_mass_estimate(dec, bits);
    if (tail > 1e-6) {
        warnings.push_back("estimated wrap-around mass " + format_double(tail) + " exceeds 1e-6");
    }
    return NdPreparation{std::move(state), std::move(dec), std::move(warnings)};
}

OracleState target_oracle(const QuadraticForm &form, unsigned bits, const std::optional<std::vector<std::int64_t>> &mean) {
    const std::size_t dim = form.dim();
    const SignedCodec codec(bits);
    const auto layout = coordinate_layout(dim, bits);
    check_amplitude_budget(layout.total_width());
    const std::uint64_t size = std::uint64_t{1} << layout.total_width();

    std::vector<double> center(dim, 0.0);
    if (mean) {
        if (mean->size() != dim) throw std::invalid_argument("target_oracle: mean has the wrong dimension");
        for (std::size_t i = 0; i < dim; ++i) center[i] = static_cast<double>((*mean)[i]);
    }
    std::vector<Amplitude> amps(size);
    std::vector<double> x(dim);
    double raw = 0.0;
    for (std::uint64_t index = 0; index < size; ++index) {
        for (std::size_t r = 0; r < dim; ++r) {
            x[r] = static_cast<double>(codec.decode(layout.extract(index, r))) - center[r];
        }
        const double q = form.evaluate(x);
        const double amp = std::exp(-0.5 * q);
        amps[index] = amp;
        raw += amp * amp;
    }
    OracleState out{StateVector::normalized(layout, std::move(amps)), raw, 0.0};
    out.continuum_squared_sum =
        std::pow(std::numbers::pi, 0.5 * static_cast<double>(dim)) / std::sqrt(form.determinant());
    return out;
}

NdReport nd_report(const QuadraticForm &form, unsigned bits, const std::optional<std::vector<std::int64_t>> &mean,
                   const NdPreparation &prepared) {
    NdReport r;
    r.residual = congruence_residual(form, prepared.decomposition);
    r.det_a = form.determinant();
    r.det_d = 1.0;
    for (const double d : prepared.decomposition.diagonal) r.det_d *= d;
    r.tail_mass = tail_mass_estimate(prepared.decomposition, bits);
    try {
        r.fidelity = fidelity(prepared.state, target_oracle(form, bits, mean).state);
    } catch (const MemoryCapError &) {
        r.fidelity.reset();
    }
    return r;
}

}  // namespace gaussprep
