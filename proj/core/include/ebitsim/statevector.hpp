#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ebitsim/dilution.hpp"
#include "ebitsim/spectra.hpp"
#include "ebitsim/transcript.hpp"

namespace ebitsim {

using Complex = std::complex<double>;

/// Explicit amplitude vector over a declared Alice/Bob bipartition.
/// Qubit q corresponds to bit q of the basis index.
class DenseState {
  public:
    DenseState() = default;
    DenseState(int num_qubits, std::vector<int> alice_qubits);

    static DenseState from_amplitudes(std::vector<Complex> amplitudes,
                                      std::vector<int> alice_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Complex>& amplitudes() const { return amp_; }
    const std::vector<int>& alice_qubits() const { return alice_; }

    double norm_sq() const;
    void normalize();

    void apply_1q(int qubit, const Eigen::Matrix2cd& u);
    void apply_cnot(int control, int target);
    void apply_swap(int q1, int q2);
    /// Apply a 2^k x 2^k unitary on the listed qubits (first listed
    /// qubit = least significant bit of the matrix index).
    void apply_unitary(const std::vector<int>& qubits, const Eigen::MatrixXcd& u);

    /// Measure a qubit in the computational basis; collapses and
    /// renormalizes. `forced` picks the branch (must have nonzero
    /// probability), otherwise the outcome is sampled from rng.
    int measure(int qubit, std::optional<int> forced, std::mt19937_64& rng);

    /// Append `count` qubits in |0>. New qubits belong to Alice when
    /// `to_alice` is true.
    void append_qubits(int count, bool to_alice);

    /// Drop a qubit that is in a definite computational basis state.
    void remove_qubit(int qubit);

    /// Amplitude matrix M(a, b) across the bipartition, Alice index a
    /// built from her qubits in ascending order.
    Eigen::MatrixXcd bipartite_matrix() const;

  private:
    int num_qubits_ = 0;
    std::vector<Complex> amp_;
    std::vector<int> alice_;
};

/// N copies of a|00>+b|11>; Alice holds qubits 0..N-1, Bob N..2N-1.
DenseState build_psi_n(const BaseSpectrum& base, std::int64_t N, std::int64_t cap = 10);

/// Eigenvalues of Alice's reduced density operator, grouped into
/// degeneracy classes by value within a relative tolerance of tol.
/// Zero eigenvalues are dropped.
SchmidtSpectrum schmidt_spectrum_dense(const DenseState& state, double tol = 1e-9);

/// Reduced density operator of one side.
Eigen::MatrixXcd reduced_density(const DenseState& state, bool alice_side);

/// |<a|b>|^2 for two states over identical registers.
double state_fidelity(const DenseState& a, const DenseState& b);

/// Apply independent unitaries to Alice's and Bob's full subsystems.
DenseState scramble_bilocal(const DenseState& state, std::uint64_t seed);

struct QubitState {
    Complex zero{1.0, 0.0};
    Complex one{0.0, 0.0};
};

/// One-qubit teleportation through a shared singlet. Bob's corrections
/// come only from the two classical bits in the transcript.
/// forced_branch in 0..3 fixes the Bell outcome (bit 0 = X-correction,
/// bit 1 = Z-correction); -1 samples it.
QubitState teleport(const QubitState& input, ProtocolTranscript& transcript,
                    int forced_branch = -1, std::uint64_t seed = 0);

/// Superdense coding of a 2-bit message through a shared singlet.
std::pair<int, int> dense_code(int bit_hi, int bit_lo, ProtocolTranscript& transcript);

struct LemmaDemoResult {
    double fidelity = 0.0;
    std::int64_t cbits = 0;
    FactorizationResult factorization;
};

/// End-to-end run of the degenerate-state sharing protocol: factor out
/// the 2^r-fold degeneracy, reuse r pre-shared singlets, teleport only
/// the residual subsystem, then rotate both sides into the target
/// state's Schmidt bases.
LemmaDemoResult lemma_demo(const DenseState& pi, std::int64_t n_singlets,
                           ProtocolTranscript& transcript, std::uint64_t seed = 0);

}  // namespace ebitsim
