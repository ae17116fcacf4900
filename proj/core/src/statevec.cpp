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

#include "gaussprep/statevec.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace gaussprep {

namespace {

std::atomic<std::uint64_t> g_max_amplitudes{kDefaultMaxAmplitudes};
std::atomic<unsigned> g_worker_threads{1};

constexpr std::uint64_t kParallelGrain = std::uint64_t{1} << 14;

// Runs body(begin, end) over disjoint chunks of [0, count).
template <typename Body>
void parallel_for(std::uint64_t count, Body body) {
    const unsigned threads = worker_threads();
    if (threads <= 1 || count < kParallelGrain) {
        body(std::uint64_t{0}, count);
        return;
    }
    const std::uint64_t chunk = (count + threads - 1) / threads;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = t * chunk;
        const std::uint64_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

double sum_abs2(std::span<const Amplitude> amps) {
    double total = 0.0;
    for (const auto &a : amps) total += std::norm(a);
    return total;
}

}  // namespace

std::uint64_t max_amplitudes() { return g_max_amplitudes.load(); }

void set_max_amplitudes(std::uint64_t cap) {
    if (cap < 2) throw std::invalid_argument("amplitude cap must be at least 2");
    g_max_amplitudes.store(cap);
}

unsigned worker_threads() { return g_worker_threads.load(); }

void set_worker_threads(unsigned threads) { g_worker_threads.store(std::max(1u, threads)); }

MemoryCapError::MemoryCapError(unsigned qubits, std::uint64_t cap)
    : std::runtime_error("state of " + std::to_string(qubits) + " qubits exceeds the amplitude cap of " +
                         std::to_string(cap)),
      qubits_(qubits) {}

void check_amplitude_budget(unsigned qubits) {
    const std::uint64_t cap = max_amplitudes();
    if (qubits >= 63 || (std::uint64_t{1} << qubits) > cap) {
        throw MemoryCapError(qubits, cap);
    }
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
    offsets_.resize(registers_.size());
    unsigned offset = 0;
    for (std::size_t r = registers_.size(); r-- > 0;) {
        if (registers_[r].width == 0) {
            throw std::invalid_argument("register '" + registers_[r].name + "' has zero width");
        }
        offsets_[r] = offset;
        offset += registers_[r].width;
    }
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        for (std::size_t j = i + 1; j < registers_.size(); ++j) {
            if (registers_[i].name == registers_[j].name) {
                throw std::invalid_argument("duplicate register name '" + registers_[i].name + "'");
            }
        }
    }
    total_width_ = offset;
}

RegisterLayout RegisterLayout::single(std::string name, unsigned width) {
    return RegisterLayout({Register{std::move(name), width}});
}

std::size_t RegisterLayout::index_of(std::string_view name) const {
    for (std::size_t r = 0; r < registers_.size(); ++r) {
        if (registers_[r].name == name) return r;
    }
    throw std::out_of_range("no register named '" + std::string(name) + "'");
}

unsigned RegisterLayout::offset(std::size_t reg) const { return offsets_.at(reg); }

std::uint64_t RegisterLayout::extract(std::uint64_t basis, std::size_t reg) const {
    const std::uint64_t mask = (std::uint64_t{1} << registers_.at(reg).width) - 1;
    return (basis >> offsets_[reg]) & mask;
}

std::uint64_t RegisterLayout::insert(std::uint64_t basis, std::size_t reg, std::uint64_t value) const {
    const std::uint64_t mask = (std::uint64_t{1} << registers_.at(reg).width) - 1;
    return (basis & ~(mask << offsets_[reg])) | ((value & mask) << offsets_[reg]);
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &lower) const {
    auto regs = registers_;
    regs.insert(regs.end(), lower.registers_.begin(), lower.registers_.end());
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::without(std::size_t reg) const {
    auto regs = registers_;
    regs.erase(regs.begin() + static_cast<std::ptrdiff_t>(reg));
    return RegisterLayout(std::move(regs));
}

bool RegisterLayout::operator==(const RegisterLayout &other) const {
    if (registers_.size() != other.registers_.size()) return false;
    for (std::size_t r = 0; r < registers_.size(); ++r) {
        if (registers_[r].name != other.registers_[r].name || registers_[r].width != other.registers_[r].width) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// SignedCodec

SignedCodec::SignedCodec(unsigned bits) : bits_(bits) {
    if (bits < 1 || bits > 62) throw std::invalid_argument("SignedCodec: bits must be in [1, 62]");
}

std::uint64_t SignedCodec::encode(std::int64_t value) const {
    if (!contains(value)) {
        throw std::out_of_range("coordinate " + std::to_string(value) + " outside [" + std::to_string(min()) + ", " +
                                std::to_string(max()) + "]");
    }
    return static_cast<std::uint64_t>(value) & ((std::uint64_t{1} << bits_) - 1);
}

std::int64_t SignedCodec::decode(std::uint64_t word) const {
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    word &= mask;
    if (word >> (bits_ - 1)) {
        return static_cast<std::int64_t>(word) - (std::int64_t{1} << bits_);
    }
    return static_cast<std::int64_t>(word);
}

std::int64_t SignedCodec::wrap(std::int64_t value) const {
    return decode(static_cast<std::uint64_t>(value));
}

std::uint64_t basis_index(std::span<const std::int64_t> coords, const SignedCodec &codec) {
    if (coords.size() * codec.bits() > 63) throw std::invalid_argument("basis_index: index wider than 63 bits");
    std::uint64_t index = 0;
    for (const auto c : coords) {
        index = (index << codec.bits()) | codec.encode(c);
    }
    return index;
}

std::vector<std::int64_t> basis_coords(std::uint64_t index, std::size_t count, const SignedCodec &codec) {
    std::vector<std::int64_t> coords(count);
    for (std::size_t i = count; i-- > 0;) {
        coords[i] = codec.decode(index);
        index >>= codec.bits();
    }
    return coords;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    check_amplitude_budget(layout_.total_width());
    if (amplitudes_.size() != (std::uint64_t{1} << layout_.total_width())) {
        throw std::invalid_argument("StateVector: " + std::to_string(amplitudes_.size()) +
                                    " amplitudes do not match a width of " + std::to_string(layout_.total_width()));
    }
    const double norm2 = squared_norm();
    if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
        throw std::invalid_argument("StateVector: squared norm " + format_double(norm2) + " is not 1");
    }
}

StateVector StateVector::basis_state(RegisterLayout layout, std::uint64_t index) {
    check_amplitude_budget(layout.total_width());
    std::vector<Amplitude> amps(std::uint64_t{1} << layout.total_width());
    amps.at(index) = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

StateVector StateVector::normalized(RegisterLayout layout, std::vector<Amplitude> amplitudes) {
    const double norm2 = sum_abs2(amplitudes);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw std::invalid_argument("StateVector: cannot normalize a zero or non-finite vector");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : amplitudes) a *= scale;
    return StateVector(std::move(layout), std::move(amplitudes));
}

double StateVector::squared_norm() const { return sum_abs2(amplitudes_); }

StateVector StateVector::with_layout(RegisterLayout layout) const {
    if (layout.total_width() != num_qubits()) throw std::invalid_argument("with_layout: width mismatch");
    return StateVector(std::move(layout), amplitudes_);
}

// ---------------------------------------------------------------------------
// Operations

StateVector tensor(const StateVector &a, const StateVector &b) {
    auto layout = a.layout().concat(b.layout());
    check_amplitude_budget(layout.total_width());
    std::vector<Amplitude> out(a.size() * b.size());
    const auto bs = b.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        const Amplitude ai = a[i];
        Amplitude *row = out.data() + i * b.size();
        for (std::uint64_t j = 0; j < b.size(); ++j) row[j] = ai * bs[j];
    }
    return StateVector(std::move(layout), std::move(out));
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner_product: widths " + std::to_string(a.num_qubits()) + " and " +
                                    std::to_string(b.num_qubits()) + " differ");
    }
    Amplitude acc = 0.0;
    for (std::uint64_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::clamp(std::abs(inner_product(a, b)), 0.0, 1.0);
}

double distance(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("distance: width mismatch");
    double acc = 0.0;
    for (std::uint64_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return std::sqrt(acc);
}

Projection project_subregister(const StateVector &state, std::string_view reg, std::uint64_t value) {
    const auto &layout = state.layout();
    const std::size_t r = layout.index_of(reg);
    const unsigned width = layout.registers()[r].width;
    if (value >= (std::uint64_t{1} << width)) {
        throw std::out_of_range("project_subregister: value " + std::to_string(value) + " outside register '" +
                                std::string(reg) + "'");
    }
    if (layout.count() < 2) {
        throw std::invalid_argument("project_subregister: no registers would remain");
    }
    auto rest = layout.without(r);
    std::vector<Amplitude> slice(std::uint64_t{1} << rest.total_width());
    const unsigned off = layout.offset(r);
    const std::uint64_t low_mask = (std::uint64_t{1} << off) - 1;
    for (std::uint64_t k = 0; k < slice.size(); ++k) {
        const std::uint64_t full = ((k & ~low_mask) << width) | (value << off) | (k & low_mask);
        slice[k] = state[full];
    }
    Projection out;
    out.probability = sum_abs2(slice);
    if (out.probability > 0.0) {
        out.conditional = StateVector::normalized(std::move(rest), std::move(slice));
    }
    return out;
}

std::vector<double> register_marginal(const StateVector &state, std::string_view reg) {
    const auto &layout = state.layout();
    const std::size_t r = layout.index_of(reg);
    std::vector<double> out(std::uint64_t{1} << layout.registers()[r].width, 0.0);
    for (std::uint64_t i = 0; i < state.size(); ++i) out[layout.extract(i, r)] += std::norm(state[i]);
    return out;
}

StateVector apply_rotation(const StateVector &state, unsigned target, double angle, const ControlPredicate &control) {
    if (target >= state.num_qubits()) {
        throw std::out_of_range("apply_rotation: target qubit " + std::to_string(target) + " outside width");
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    const std::uint64_t bit = std::uint64_t{1} << target;
    const std::uint64_t pairs = state.size() / 2;
    parallel_for(pairs, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t p = begin; p < end; ++p) {
            // Insert a zero at the target position.
            const std::uint64_t i0 = ((p & ~(bit - 1)) << 1) | (p & (bit - 1));
            if (control && !control(i0)) continue;
            const Amplitude a0 = out[i0];
            const Amplitude a1 = out[i0 | bit];
            out[i0] = c * a0 - s * a1;
            out[i0 | bit] = s * a0 + c * a1;
        }
    });
    return StateVector(state.layout(), std::move(out));
}

StateVector apply_multiplexed_rotation(const StateVector &state, unsigned target, unsigned control_offset,
                                       unsigned control_width, std::span<const double> angles) {
    if (target >= state.num_qubits()) {
        throw std::out_of_range("apply_multiplexed_rotation: target qubit outside width");
    }
    if (control_offset + control_width > state.num_qubits() ||
        (target >= control_offset && target < control_offset + control_width)) {
        throw std::invalid_argument("apply_multiplexed_rotation: control range overlaps target or exceeds width");
    }
    if (angles.size() != (std::uint64_t{1} << control_width)) {
        throw std::invalid_argument("apply_multiplexed_rotation: need 2^control_width angles");
    }
    std::vector<double> cs(angles.size()), sn(angles.size());
    for (std::size_t k = 0; k < angles.size(); ++k) {
        cs[k] = std::cos(angles[k]);
        sn[k] = std::sin(angles[k]);
    }
    const std::uint64_t mask = angles.size() - 1;
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    const std::uint64_t bit = std::uint64_t{1} << target;
    parallel_for(state.size() / 2, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t p = begin; p < end; ++p) {
            const std::uint64_t i0 = ((p & ~(bit - 1)) << 1) | (p & (bit - 1));
            const std::uint64_t k = (i0 >> control_offset) & mask;
            const Amplitude a0 = out[i0];
            const Amplitude a1 = out[i0 | bit];
            out[i0] = cs[k] * a0 - sn[k] * a1;
            out[i0 | bit] = sn[k] * a0 + cs[k] * a1;
        }
    });
    return StateVector(state.layout(), std::move(out));
}

NonBijectiveError::NonBijectiveError(std::uint64_t first, std::uint64_t second, std::uint64_t target)
    : std::runtime_error("basis map is not injective: indices " + std::to_string(first) + " and " +
                         std::to_string(second) + " both map to " + std::to_string(target)),
      first_(first),
      second_(second),
      target_(target) {}

StateVector permute_basis(const StateVector &state, const BasisMap &map) {
    const std::uint64_t size = state.size();
    std::vector<std::uint64_t> targets(size);
    parallel_for(size, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) targets[i] = map(i);
    });
    constexpr std::uint64_t kUnset = ~std::uint64_t{0};
    std::vector<std::uint64_t> source(size, kUnset);
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t t = targets[i];
        if (t >= size) {
            throw std::out_of_range("permute_basis: index " + std::to_string(i) + " maps outside the state (" +
                                    std::to_string(t) + ")");
        }
        if (source[t] != kUnset) throw NonBijectiveError(source[t], i, t);
        source[t] = i;
    }
    std::vector<Amplitude> out(size);
    for (std::uint64_t i = 0; i < size; ++i) out[targets[i]] = state[i];
    return StateVector(state.layout(), std::move(out));
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_state_csv(std::ostream &out, const StateVector &state, const std::vector<std::string> &metadata) {
    for (const auto &line : metadata) out << "# " << line << '\n';
    const auto &layout = state.layout();
    out << "index";
    for (std::size_t r = 0; r < layout.count(); ++r) out << ",coord_" << (r + 1);
    out << ",re,im,abs2\n";
    std::vector<SignedCodec> codecs;
    for (const auto &reg : layout.registers()) codecs.emplace_back(reg.width);
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        out << i;
        for (std::size_t r = 0; r < layout.count(); ++r) out << ',' << codecs[r].decode(layout.extract(i, r));
        const Amplitude a = state[i];
        out << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << ',' << format_double(std::norm(a))
            << '\n';
    }
}

std::vector<Amplitude> read_state_csv_amplitudes(std::istream &in) {
    std::vector<Amplitude> amps;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("index", 0) == 0) continue;
        }
        std::vector<std::string> cells;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() < 4) throw std::invalid_argument("state CSV: row has fewer than 4 columns: " + line);
        const auto index = std::stoull(cells.front());
        if (index != amps.size()) throw std::invalid_argument("state CSV: rows must be in ascending index order");
        const double re = std::stod(cells[cells.size() - 3]);
        const double im = std::stod(cells[cells.size() - 2]);
        amps.emplace_back(re, im);
    }
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
        throw std::invalid_argument("state CSV: row count " + std::to_string(amps.size()) + " is not a power of two");
    }
    return amps;
}

}  // namespace gaussprep
