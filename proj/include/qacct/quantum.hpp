#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qacct/error.hpp"
#include "qacct/matrix.hpp"

namespace qacct::quantum {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr int kMaxQubits = 20;
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kNormTol = 1e-10;

/// Running tally of the resources an algorithm consumed.
struct OpCounter {
    std::uint64_t oracle_calls = 0;
    std::uint64_t gate_applications = 0;
    std::uint64_t row_operations = 0;
};

/// 2^n complex amplitudes with unit norm. Qubit q is bit q of the basis index,
/// so qubit 0 is the least significant.
class StateVector {
public:
    static StateVector basis(int qubits, std::uint64_t index) {
        check_qubits(qubits);
        std::vector<Complex> amps(std::size_t{1} << qubits);
        if (index >= amps.size()) throw Error(ErrorCode::OutOfRange, "basis index out of range");
        amps[index] = 1.0;
        return StateVector(qubits, std::move(amps));
    }

    /// Validates length (a power of two) and norm.
    static StateVector from_amplitudes(std::vector<Complex> amps) {
        int qubits = 0;
        while ((std::size_t{1} << qubits) < amps.size()) ++qubits;
        if (amps.empty() || (std::size_t{1} << qubits) != amps.size())
            throw Error(ErrorCode::DimensionMismatch, "amplitude count must be a power of two");
        check_qubits(qubits);
        StateVector s(qubits, std::move(amps));
        if (std::abs(s.norm_squared() - 1.0) > kNormTol)
            throw Error(ErrorCode::NonNormalizedAmplitudes, "state norm^2 is " + std::to_string(s.norm_squared()));
        return s;
    }

    /// Re-wraps amplitudes produced by a unitary update of an existing state.
    static StateVector adopt(int qubits, std::vector<Complex> amps) {
        if (amps.size() != (std::size_t{1} << qubits)) throw Error(ErrorCode::DimensionMismatch, "bad amplitude count");
        return StateVector(qubits, std::move(amps));
    }

    int qubits() const noexcept { return qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

    std::vector<Complex> release() && { return std::move(amps_); }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    double probability(std::size_t index) const noexcept { return std::norm(amps_[index]); }

    /// max_i |a_i - b_i|.
    double distance_inf(const StateVector& o) const {
        if (o.dimension() != dimension()) throw Error(ErrorCode::DimensionMismatch, "state sizes differ");
        double m = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) m = std::max(m, std::abs(amps_[i] - o.amps_[i]));
        return m;
    }

private:
    StateVector(int qubits, std::vector<Complex> amps) : qubits_(qubits), amps_(std::move(amps)) {}

    static void check_qubits(int qubits) {
        if (qubits < 1 || qubits > kMaxQubits)
            throw Error(ErrorCode::OutOfRange, "qubit count " + std::to_string(qubits) + " outside [1, 20]");
    }

    int qubits_ = 0;
    std::vector<Complex> amps_;
};

// ---------------------------------------------------------------------------
// Gates

struct Hadamard {};
struct Phase {
    double phi = 0.0;
};
struct Cnot {};
struct ControlledU {
    ComplexMatrix u;
};

using GateKind = std::variant<Hadamard, Phase, Cnot, ControlledU>;

/// A k-qubit unitary. When applied to targets (t0, ..., t_{k-1}), t0 is the
/// most significant bit of the matrix index, so for CNOT and controlled-U the
/// first target is the control.
struct Gate {
    int arity = 1;
    ComplexMatrix matrix;
};

inline double unitarity_error(const ComplexMatrix& m) {
    return (m.adjoint() * m - ComplexMatrix::identity(m.rows())).max_abs();
}

inline Gate make_gate(const GateKind& kind) {
    using namespace std::complex_literals;
    return std::visit(
        [](const auto& k) -> Gate {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Hadamard>) {
                const double s = 1.0 / std::numbers::sqrt2;
                return {1, ComplexMatrix{{s, s}, {s, -s}}};
            } else if constexpr (std::is_same_v<K, Phase>) {
                return {1, ComplexMatrix{{1.0, 0.0}, {0.0, std::exp(1i * k.phi)}}};
            } else if constexpr (std::is_same_v<K, Cnot>) {
                return {2, ComplexMatrix{{1.0, 0.0, 0.0, 0.0},
                                         {0.0, 1.0, 0.0, 0.0},
                                         {0.0, 0.0, 0.0, 1.0},
                                         {0.0, 0.0, 1.0, 0.0}}};
            } else {
                if (k.u.rows() != 2 || k.u.cols() != 2)
                    throw Error(ErrorCode::NonUnitaryU, "controlled-U needs a 2x2 block");
                if (unitarity_error(k.u) >= kUnitarityTol)
                    throw Error(ErrorCode::NonUnitaryU, "U is not unitary");
                ComplexMatrix m = ComplexMatrix::identity(4);
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) m(2 + i, 2 + j) = k.u(i, j);
                return {2, std::move(m)};
            }
        },
        kind);
}

inline Gate controlled_phase(double phi) {
    using namespace std::complex_literals;
    return make_gate(ControlledU{ComplexMatrix{{1.0, 0.0}, {0.0, std::exp(1i * phi)}}});
}

namespace detail {

inline void check_targets(int qubits, std::span<const int> targets, std::size_t expected) {
    if (targets.size() != expected)
        throw Error(ErrorCode::BadTargets, "expected " + std::to_string(expected) + " targets, got " +
                                               std::to_string(targets.size()));
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= qubits)
            throw Error(ErrorCode::BadTargets, "qubit " + std::to_string(targets[i]) + " out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (targets[i] == targets[j]) throw Error(ErrorCode::BadTargets, "repeated target qubit");
    }
}

inline void check_targets(int qubits, std::span<const int> targets) {
    check_targets(qubits, targets, targets.size());
}

/// Integer formed by the selected qubits, qubits[i] giving bit i.
inline std::uint64_t gather_bits(std::uint64_t index, std::span<const int> qubits) noexcept {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) v |= ((index >> qubits[i]) & 1u) << i;
    return v;
}

}  // namespace detail

inline StateVector apply_gate(StateVector state, const Gate& gate, std::span<const int> targets, OpCounter& counter) {
    const int n = state.qubits();
    const auto k = static_cast<std::size_t>(gate.arity);
    detail::check_targets(n, targets, k);

    std::uint64_t target_mask = 0;
    for (int t : targets) target_mask |= std::uint64_t{1} << t;

    const std::size_t local_dim = std::size_t{1} << k;
    // offsets[L] is the global index bit pattern of local basis state L.
    std::vector<std::uint64_t> offsets(local_dim, 0);
    for (std::size_t local = 0; local < local_dim; ++local)
        for (std::size_t t = 0; t < k; ++t)
            if ((local >> (k - 1 - t)) & 1u) offsets[local] |= std::uint64_t{1} << targets[t];

    auto amps = std::move(state).release();
    std::vector<Complex> in(local_dim);
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if (base & target_mask) continue;
        for (std::size_t l = 0; l < local_dim; ++l) in[l] = amps[base | offsets[l]];
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < local_dim; ++c) acc += gate.matrix(r, c) * in[c];
            amps[base | offsets[r]] = acc;
        }
    }
    ++counter.gate_applications;
    return StateVector::adopt(n, std::move(amps));
}

inline StateVector apply_gate(StateVector state, const Gate& gate, std::initializer_list<int> targets,
                              OpCounter& counter) {
    return apply_gate(std::move(state), gate, std::span<const int>(targets.begin(), targets.size()), counter);
}

inline StateVector hadamard_all(StateVector state, std::span<const int> qubits, OpCounter& counter) {
    const Gate h = make_gate(Hadamard{});
    for (int q : qubits) state = apply_gate(std::move(state), h, {q}, counter);
    return state;
}

// ---------------------------------------------------------------------------
// Oracles

/// Total Boolean function on n-bit inputs.
struct BoolOracle {
    int n = 1;
    std::function<bool(std::uint64_t)> f;

    bool operator()(std::uint64_t x) const { return f(x); }
    std::uint64_t domain_size() const noexcept { return std::uint64_t{1} << n; }
};

/// |x> -> (-1)^f(x) |x>. One oracle query.
inline StateVector apply_phase_oracle(StateVector state, const BoolOracle& oracle, std::span<const int> inputs,
                                      OpCounter& counter) {
    detail::check_targets(state.qubits(), inputs, static_cast<std::size_t>(oracle.n));
    const int n = state.qubits();
    auto amps = std::move(state).release();
    for (std::uint64_t i = 0; i < amps.size(); ++i)
        if (oracle(detail::gather_bits(i, inputs))) amps[i] = -amps[i];
    ++counter.oracle_calls;
    return StateVector::adopt(n, std::move(amps));
}

/// |x>|y> -> |x>|y xor f(x)>. One oracle query.
inline StateVector apply_bit_oracle(StateVector state, const BoolOracle& oracle, std::span<const int> inputs,
                                    int target, OpCounter& counter) {
    std::vector<int> all(inputs.begin(), inputs.end());
    all.push_back(target);
    detail::check_targets(state.qubits(), all, static_cast<std::size_t>(oracle.n) + 1);
    const int n = state.qubits();
    const std::uint64_t tbit = std::uint64_t{1} << target;
    auto amps = std::move(state).release();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & tbit) continue;
        if (oracle(detail::gather_bits(i, inputs))) std::swap(amps[i], amps[i | tbit]);
    }
    ++counter.oracle_calls;
    return StateVector::adopt(n, std::move(amps));
}

/// 2|0><0| - I on the selected qubits: every basis state except all-zero
/// changes sign.
inline StateVector reflect_about_zero(StateVector state, std::span<const int> qubits, OpCounter& counter) {
    detail::check_targets(state.qubits(), qubits);
    const int n = state.qubits();
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= std::uint64_t{1} << q;
    auto amps = std::move(state).release();
    for (std::uint64_t i = 0; i < amps.size(); ++i)
        if (i & mask) amps[i] = -amps[i];
    ++counter.gate_applications;
    return StateVector::adopt(n, std::move(amps));
}

// ---------------------------------------------------------------------------
// Measurement

struct Measurement {
    std::uint64_t outcome = 0;  // qubits[i] -> bit i
    StateVector state;
};

/// Born-rule measurement of the selected qubits with collapse.
inline Measurement measure(StateVector state, std::span<const int> qubits, Rng& rng) {
    detail::check_targets(state.qubits(), qubits);
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t i = 0; i < state.dimension(); ++i)
        probs[detail::gather_bits(i, qubits)] += state.probability(i);

    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double cumulative = 0.0;
    std::uint64_t outcome = probs.size();
    for (std::uint64_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) continue;
        cumulative += probs[k];
        outcome = k;
        if (u < cumulative) break;
    }

    const double scale = 1.0 / std::sqrt(probs[outcome]);
    const int n = state.qubits();
    auto amps = std::move(state).release();
    for (std::uint64_t i = 0; i < amps.size(); ++i)
        amps[i] = detail::gather_bits(i, qubits) == outcome ? amps[i] * scale : Complex{};
    return {outcome, StateVector::adopt(n, std::move(amps))};
}

inline std::vector<int> qubit_range(int first, int count) {
    std::vector<int> q(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) q[static_cast<std::size_t>(i)] = first + i;
    return q;
}

// ---------------------------------------------------------------------------
// Fourier transform

/// |x> -> 2^{-m/2} sum_k exp(2 pi i x k / 2^m) |k> on the selected qubits, built
/// from Hadamards, controlled phases and CNOT-swaps. The inverse applies the
/// adjoint circuit.
inline StateVector qft(StateVector state, std::span<const int> qubits, bool inverse, OpCounter& counter) {
    detail::check_targets(state.qubits(), qubits);
    const int m = static_cast<int>(qubits.size());
    const Gate h = make_gate(Hadamard{});
    const Gate cx = make_gate(Cnot{});
    const double sign = inverse ? -1.0 : 1.0;

    auto swap_ends = [&] {
        for (int i = 0; i < m / 2; ++i) {
            const int a = qubits[i];
            const int b = qubits[m - 1 - i];
            state = apply_gate(std::move(state), cx, {a, b}, counter);
            state = apply_gate(std::move(state), cx, {b, a}, counter);
            state = apply_gate(std::move(state), cx, {a, b}, counter);
        }
    };

    if (!inverse) {
        for (int j = m - 1; j >= 0; --j) {
            state = apply_gate(std::move(state), h, {qubits[j]}, counter);
            for (int l = j - 1; l >= 0; --l)
                state = apply_gate(std::move(state), controlled_phase(sign * std::numbers::pi / double(1 << (j - l))),
                                   {qubits[l], qubits[j]}, counter);
        }
        swap_ends();
    } else {
        swap_ends();
        for (int j = 0; j < m; ++j) {
            for (int l = 0; l < j; ++l)
                state = apply_gate(std::move(state), controlled_phase(sign * std::numbers::pi / double(1 << (j - l))),
                                   {qubits[l], qubits[j]}, counter);
            state = apply_gate(std::move(state), h, {qubits[j]}, counter);
        }
    }
    return state;
}

/// exp((2 pi i / 2^n) * sum_i a_i x_i), evaluated as written.
inline Complex character_eval(std::span<const int> a, std::span<const int> x, int n) {
    if (n < 1 || a.size() != static_cast<std::size_t>(n) || x.size() != static_cast<std::size_t>(n))
        throw Error(ErrorCode::OutOfRange, "character vectors must both have n components");
    long long dot = 0;
    for (int i = 0; i < n; ++i) {
        if ((a[i] != 0 && a[i] != 1) || (x[i] != 0 && x[i] != 1))
            throw Error(ErrorCode::OutOfRange, "character components must be 0 or 1");
        dot += a[i] * x[i];
    }
    using namespace std::complex_literals;
    return std::exp(2.0 * std::numbers::pi * 1i * static_cast<double>(dot) / std::ldexp(1.0, n));
}

inline constexpr int kMaxAdderBits = 10;

/// (a + b) mod 2^n by phase accumulation in the Fourier basis. Register A holds
/// a on qubits [0, n), register B holds b on [n, 2n). After the transform each
/// A-qubit l picks up exp(2 pi i b_j 2^{j+l} / 2^n) from every B-bit j, which is
/// where the carries live; rotations with j + l >= n are whole turns and are
/// skipped.
inline std::uint64_t quantum_add(std::uint64_t a, std::uint64_t b, int n, OpCounter& counter) {
    if (n < 1 || n > kMaxAdderBits) throw Error(ErrorCode::OutOfRange, "adder width must be in [1, 10]");
    const std::uint64_t modulus = std::uint64_t{1} << n;
    if (a >= modulus || b >= modulus) throw Error(ErrorCode::OutOfRange, "operands must be < 2^n");

    const auto reg_a = qubit_range(0, n);
    StateVector state = StateVector::basis(2 * n, a | (b << n));
    state = qft(std::move(state), reg_a, false, counter);
    for (int l = 0; l < n; ++l)
        for (int j = 0; l + j < n; ++j) {
            const double angle = 2.0 * std::numbers::pi * std::ldexp(1.0, j + l - n);
            state = apply_gate(std::move(state), controlled_phase(angle), {n + j, l}, counter);
        }
    state = qft(std::move(state), reg_a, true, counter);

    Rng rng(0);  // the outcome is certain; the generator only breaks ties
    return measure(std::move(state), reg_a, rng).outcome;
}

// ---------------------------------------------------------------------------
// Deutsch

enum class DeutschClass { Constant, Balanced };

/// H-f-H on |x>(|0> - |1>); the first qubit ends in +-(|0> +- |1>) before the
/// final Hadamard, so measuring it after the Hadamard reads constant as 0.
inline DeutschClass deutsch(const BoolOracle& f, OpCounter& counter) {
    if (f.n != 1) throw Error(ErrorCode::PreconditionViolated, "Deutsch's scheme takes a 1-bit function");
    const int x = 0;
    const int y = 1;
    StateVector state = StateVector::basis(2, std::uint64_t{1} << y);
    const Gate h = make_gate(Hadamard{});
    state = apply_gate(std::move(state), h, {x}, counter);
    state = apply_gate(std::move(state), h, {y}, counter);
    const int inputs[] = {x};
    state = apply_bit_oracle(std::move(state), f, inputs, y, counter);
    state = apply_gate(std::move(state), h, {x}, counter);
    Rng rng(0);
    return measure(std::move(state), inputs, rng).outcome == 0 ? DeutschClass::Constant : DeutschClass::Balanced;
}

// ---------------------------------------------------------------------------
// Grover

inline std::uint64_t grover_optimal_iterations(int n, std::uint64_t marked) {
    const double N = std::ldexp(1.0, n);
    return static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(N / static_cast<double>(marked))));
}

/// sin^2((2r + 1) theta) with sin(theta) = sqrt(M / N).
inline double grover_success_probability(int n, std::uint64_t marked, std::uint64_t iterations) {
    const double theta = std::asin(std::sqrt(static_cast<double>(marked) / std::ldexp(1.0, n)));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

/// Prepares the uniform superposition, applies `iterations` Grover iterates
/// (oracle flip, then H - f0 - H) and measures. The result is not verified.
inline std::uint64_t grover_run(const BoolOracle& oracle, std::uint64_t iterations, Rng& rng, OpCounter& counter) {
    const auto reg = qubit_range(0, oracle.n);
    StateVector state = hadamard_all(StateVector::basis(oracle.n, 0), reg, counter);
    for (std::uint64_t r = 0; r < iterations; ++r) {
        state = apply_phase_oracle(std::move(state), oracle, reg, counter);
        state = hadamard_all(std::move(state), reg, counter);
        state = reflect_about_zero(std::move(state), reg, counter);
        state = hadamard_all(std::move(state), reg, counter);
    }
    return measure(std::move(state), reg, rng).outcome;
}

/// Total oracle-call budget before a search is declared exhausted.
inline std::uint64_t grover_cutoff(int n) {
    return static_cast<std::uint64_t>(std::ceil(9.0 * std::sqrt(std::ldexp(1.0, n))));
}

/// Returns an oracle-verified marked index, or nullopt once ceil(9 sqrt(2^n))
/// oracle calls have been spent without success. With a marked-count hint every
/// attempt uses the optimal iteration count; without one the iteration count is
/// drawn from a growing window (m <- min(ceil(1.2 m), sqrt N)).
inline std::optional<std::uint64_t> try_grover_search(const BoolOracle& oracle, std::optional<std::uint64_t> marked_hint,
                                                      Rng& rng, OpCounter& counter) {
    if (oracle.n < 0 || oracle.n > kMaxQubits) throw Error(ErrorCode::OutOfRange, "oracle width outside [0, 20]");
    if (marked_hint && (*marked_hint == 0 || *marked_hint > oracle.domain_size()))
        throw Error(ErrorCode::OutOfRange, "marked-count hint must be in [1, 2^n]");

    const std::uint64_t start = counter.oracle_calls;
    auto verify = [&](std::uint64_t candidate) {
        ++counter.oracle_calls;
        return oracle(candidate);
    };

    // A one-element domain needs no amplitude amplification.
    if (oracle.n == 0) return verify(0) ? std::optional<std::uint64_t>(0) : std::nullopt;

    const std::uint64_t cutoff = grover_cutoff(oracle.n);
    const double window_cap = std::sqrt(static_cast<double>(oracle.domain_size()));
    double window = 1.0;
    while (true) {
        std::uint64_t iterations = 0;
        if (marked_hint) {
            iterations = grover_optimal_iterations(oracle.n, *marked_hint);
        } else {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            iterations = static_cast<std::uint64_t>(std::floor(u * window));
            window = std::min(std::ceil(1.2 * window), window_cap);
        }
        const std::uint64_t candidate = grover_run(oracle, iterations, rng, counter);
        if (verify(candidate)) return candidate;
        if (counter.oracle_calls - start >= cutoff) return std::nullopt;
    }
}

inline std::uint64_t grover_search(const BoolOracle& oracle, std::optional<std::uint64_t> marked_hint, Rng& rng,
                                   OpCounter& counter) {
    if (auto found = try_grover_search(oracle, marked_hint, rng, counter)) return *found;
    throw Error(ErrorCode::NoMarkedItem, "no marked input found within " + std::to_string(grover_cutoff(oracle.n)) +
                                             " oracle calls");
}

}  // namespace qacct::quantum
