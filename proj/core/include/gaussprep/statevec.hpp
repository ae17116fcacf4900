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

#ifndef GAUSSPREP_STATEVEC_HPP
#define GAUSSPREP_STATEVEC_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gaussprep {

using Amplitude = std::complex<double>;

inline constexpr std::uint64_t kDefaultMaxAmplitudes = std::uint64_t{1} << 26;

/// Process-wide cap on the number of amplitudes any single state may hold.
std::uint64_t max_amplitudes();
void set_max_amplitudes(std::uint64_t cap);

/// Worker count for amplitude-parallel maps. Reductions are always serial,
/// so results do not depend on this setting.
unsigned worker_threads();
void set_worker_threads(unsigned threads);

class MemoryCapError : public std::runtime_error {
   public:
    MemoryCapError(unsigned qubits, std::uint64_t cap);
    unsigned qubits() const { return qubits_; }

   private:
    unsigned qubits_;
};

/// Throws MemoryCapError if 2^qubits exceeds the configured cap.
void check_amplitude_budget(unsigned qubits);

struct Register {
    std::string name;
    unsigned width = 0;
};

/// Ordered registers; the first register occupies the most significant bits
/// of a basis index, and bit 0 of each register is its least significant.
class RegisterLayout {
   public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers);
    static RegisterLayout single(std::string name, unsigned width);

    const std::vector<Register> &registers() const { return registers_; }
    std::size_t count() const { return registers_.size(); }
    unsigned total_width() const { return total_width_; }

    /// Throws std::out_of_range for an unknown name.
    std::size_t index_of(std::string_view name) const;
    /// Bit position of the register's least significant qubit.
    unsigned offset(std::size_t reg) const;
    std::uint64_t extract(std::uint64_t basis, std::size_t reg) const;
    std::uint64_t insert(std::uint64_t basis, std::size_t reg, std::uint64_t value) const;

    /// `this` followed by `lower` (which becomes less significant).
    RegisterLayout concat(const RegisterLayout &lower) const;
    RegisterLayout without(std::size_t reg) const;

    bool operator==(const RegisterLayout &other) const;

   private:
    std::vector<Register> registers_;
    std::vector<unsigned> offsets_;
    unsigned total_width_ = 0;
};

/// Two's complement coordinates on k bits: B = [-2^(k-1), 2^(k-1) - 1].
class SignedCodec {
   public:
    explicit SignedCodec(unsigned bits);

    unsigned bits() const { return bits_; }
    std::int64_t min() const { return -(std::int64_t{1} << (bits_ - 1)); }
    std::int64_t max() const { return (std::int64_t{1} << (bits_ - 1)) - 1; }
    bool contains(std::int64_t value) const { return value >= min() && value <= max(); }

    /// Throws std::out_of_range if value is outside B.
    std::uint64_t encode(std::int64_t value) const;
    std::int64_t decode(std::uint64_t word) const;
    /// Reduces any integer into B modulo 2^k.
    std::int64_t wrap(std::int64_t value) const;

   private:
    unsigned bits_;
};

/// Concatenates the encoded coordinates, first coordinate most significant.
std::uint64_t basis_index(std::span<const std::int64_t> coords, const SignedCodec &codec);
std::vector<std::int64_t> basis_coords(std::uint64_t index, std::size_t count, const SignedCodec &codec);

/// Dense, normalized amplitude vector over 2^n basis states. Immutable;
/// every operation below returns a new state.
class StateVector {
   public:
    /// Throws std::invalid_argument on length mismatch or if the squared norm
    /// differs from 1 by more than kNormTolerance.
    StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes);

    static constexpr double kNormTolerance = 1e-12;

    static StateVector basis_state(RegisterLayout layout, std::uint64_t index);
    /// Rescales to unit norm. Throws std::invalid_argument for a zero vector.
    static StateVector normalized(RegisterLayout layout, std::vector<Amplitude> amplitudes);

    const RegisterLayout &layout() const { return layout_; }
    unsigned num_qubits() const { return layout_.total_width(); }
    std::uint64_t size() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude operator[](std::uint64_t index) const { return amplitudes_[index]; }

    double squared_norm() const;
    StateVector with_layout(RegisterLayout layout) const;

   private:
    RegisterLayout layout_;
    std::vector<Amplitude> amplitudes_;
};

StateVector tensor(const StateVector &a, const StateVector &b);

/// <a|b>. Throws std::invalid_argument on width mismatch.
Amplitude inner_product(const StateVector &a, const StateVector &b);
/// |<a|b>|, clamped to [0, 1].
double fidelity(const StateVector &a, const StateVector &b);
/// Euclidean norm of a - b.
double distance(const StateVector &a, const StateVector &b);

struct Projection {
    double probability = 0.0;
    /// Empty when the slice carries no mass.
    std::optional<StateVector> conditional;
};

/// Projects a named register onto one basis value and renormalizes the rest.
Projection project_subregister(const StateVector &state, std::string_view reg, std::uint64_t value);

/// Squared mass of every value of one register (its marginal distribution).
std::vector<double> register_marginal(const StateVector &state, std::string_view reg);

using ControlPredicate = std::function<bool(std::uint64_t)>;

/// Real rotation [[cos, -sin], [sin, cos]] on one qubit, applied to the
/// basis pairs whose index satisfies `control` (all pairs when empty). The
/// predicate sees the index with the target bit cleared.
StateVector apply_rotation(const StateVector &state, unsigned target, double angle,
                           const ControlPredicate &control = {});

/// Uniformly controlled rotation: the pair on `target` is rotated by
/// angles[(index >> control_offset) mod 2^control_width]. Equivalent to
/// 2^control_width apply_rotation calls with equality predicates, in one pass.
StateVector apply_multiplexed_rotation(const StateVector &state, unsigned target, unsigned control_offset,
                                       unsigned control_width, std::span<const double> angles);

class NonBijectiveError : public std::runtime_error {
   public:
    NonBijectiveError(std::uint64_t first, std::uint64_t second, std::uint64_t target);
    std::uint64_t first() const { return first_; }
    std::uint64_t second() const { return second_; }
    std::uint64_t target() const { return target_; }

   private:
    std::uint64_t first_, second_, target_;
};

using BasisMap = std::function<std::uint64_t(std::uint64_t)>;

/// amp_out[map(i)] = amp_in[i]. Throws NonBijectiveError naming the colliding
/// sources when two indices land on the same target, std::out_of_range when a
/// target leaves the space.
StateVector permute_basis(const StateVector &state, const BasisMap &map);

/// CSV dump: index, one signed coordinate per register, re, im, abs2.
/// Lines in `metadata` are written first, each prefixed with "# ".
void write_state_csv(std::ostream &out, const StateVector &state,
                     const std::vector<std::string> &metadata = {});

/// Reads the re/im columns of a CSV written by write_state_csv. Rows must be
/// listed by ascending index; the count must be a power of two.
std::vector<Amplitude> read_state_csv_amplitudes(std::istream &in);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace gaussprep

#endif  // GAUSSPREP_STATEVEC_HPP
