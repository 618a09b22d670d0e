#include "ebitsim/statevector.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebitsim {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kRankTol = 1e-12;

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

}  // namespace

DenseState::DenseState(int num_qubits, std::vector<int> alice_qubits)
    : num_qubits_(num_qubits),
      amp_(std::size_t(1) << num_qubits, Complex(0.0, 0.0)),
      alice_(std::move(alice_qubits)) {
    std::sort(alice_.begin(), alice_.end());
    amp_[0] = Complex(1.0, 0.0);
}

DenseState DenseState::from_amplitudes(std::vector<Complex> amplitudes,
                                       std::vector<int> alice_qubits) {
    int nq = 0;
    while ((std::size_t(1) << nq) < amplitudes.size()) ++nq;
    if ((std::size_t(1) << nq) != amplitudes.size())
        throw std::invalid_argument("DenseState: amplitude count must be a power of two");
    DenseState s(nq, std::move(alice_qubits));
    s.amp_ = std::move(amplitudes);
    if (std::abs(s.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("DenseState: amplitudes not normalized");
    return s;
}

double DenseState::norm_sq() const {
    double n = 0.0;
    for (const auto& a : amp_) n += std::norm(a);
    return n;
}

void DenseState::normalize() {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw std::runtime_error("DenseState: cannot normalize the zero vector");
    for (auto& a : amp_) a /= n;
}

void DenseState::apply_1q(int qubit, const Eigen::Matrix2cd& u) {
    const std::size_t mask = std::size_t(1) << qubit;
    for (std::size_t x = 0; x < amp_.size(); ++x) {
        if (x & mask) continue;
        const Complex a0 = amp_[x];
        const Complex a1 = amp_[x | mask];
        amp_[x] = u(0, 0) * a0 + u(0, 1) * a1;
        amp_[x | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void DenseState::apply_cnot(int control, int target) {
    const std::size_t cmask = std::size_t(1) << control;
    const std::size_t tmask = std::size_t(1) << target;
    for (std::size_t x = 0; x < amp_.size(); ++x)
        if ((x & cmask) && !(x & tmask)) std::swap(amp_[x], amp_[x | tmask]);
}

void DenseState::apply_swap(int q1, int q2) {
    const std::size_t m1 = std::size_t(1) << q1;
    const std::size_t m2 = std::size_t(1) << q2;
    for (std::size_t x = 0; x < amp_.size(); ++x)
        if ((x & m1) && !(x & m2)) std::swap(amp_[x], amp_[(x & ~m1) | m2]);
}

void DenseState::apply_unitary(const std::vector<int>& qubits, const Eigen::MatrixXcd& u) {
    const int k = static_cast<int>(qubits.size());
    const std::size_t dim = std::size_t(1) << k;
    if (u.rows() != static_cast<Eigen::Index>(dim) || u.cols() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("apply_unitary: matrix size mismatch");

    std::size_t subset_mask = 0;
    for (int q : qubits) subset_mask |= std::size_t(1) << q;

    Eigen::VectorXcd in(dim), out(dim);
    for (std::size_t base = 0; base < amp_.size(); ++base) {
        if (base & subset_mask) continue;
        for (std::size_t i = 0; i < dim; ++i) {
            std::size_t x = base;
            for (int b = 0; b < k; ++b)
                if (i & (std::size_t(1) << b)) x |= std::size_t(1) << qubits[b];
            in(static_cast<Eigen::Index>(i)) = amp_[x];
        }
        out = u * in;
        for (std::size_t i = 0; i < dim; ++i) {
            std::size_t x = base;
            for (int b = 0; b < k; ++b)
                if (i & (std::size_t(1) << b)) x |= std::size_t(1) << qubits[b];
            amp_[x] = out(static_cast<Eigen::Index>(i));
        }
    }
}

int DenseState::measure(int qubit, std::optional<int> forced, std::mt19937_64& rng) {
    const std::size_t mask = std::size_t(1) << qubit;
    double p1 = 0.0;
    for (std::size_t x = 0; x < amp_.size(); ++x)
        if (x & mask) p1 += std::norm(amp_[x]);

    int outcome;
    if (forced) {
        outcome = *forced;
        const double p = outcome ? p1 : 1.0 - p1;
        if (p < kNormTol) throw std::runtime_error("measure: forced branch has zero probability");
    } else {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        outcome = uni(rng) < p1 ? 1 : 0;
    }
    for (std::size_t x = 0; x < amp_.size(); ++x)
        if (static_cast<int>((x & mask) != 0) != outcome) amp_[x] = Complex(0.0, 0.0);
    normalize();
    return outcome;
}

void DenseState::append_qubits(int count, bool to_alice) {
    for (int i = 0; i < count; ++i) {
        amp_.resize(amp_.size() * 2, Complex(0.0, 0.0));
        if (to_alice) alice_.push_back(num_qubits_);
        ++num_qubits_;
    }
}

void DenseState::remove_qubit(int qubit) {
    const std::size_t mask = std::size_t(1) << qubit;
    double p1 = 0.0;
    for (std::size_t x = 0; x < amp_.size(); ++x)
        if (x & mask) p1 += std::norm(amp_[x]);
    if (p1 > 1e-9 && p1 < 1.0 - 1e-9)
        throw std::runtime_error("remove_qubit: qubit is not in a definite basis state");
    const int value = p1 > 0.5 ? 1 : 0;

    std::vector<Complex> next(amp_.size() / 2);
    for (std::size_t y = 0; y < next.size(); ++y) {
        const std::size_t low = y & (mask - 1);
        const std::size_t high = (y & ~(mask - 1)) << 1;
        next[y] = amp_[high | (value ? mask : 0) | low];
    }
    amp_ = std::move(next);

    std::vector<int> next_alice;
    for (int q : alice_) {
        if (q == qubit) continue;
        next_alice.push_back(q > qubit ? q - 1 : q);
    }
    alice_ = std::move(next_alice);
    --num_qubits_;
    normalize();
}

Eigen::MatrixXcd DenseState::bipartite_matrix() const {
    const int nA = static_cast<int>(alice_.size());
    const int nB = num_qubits_ - nA;
    std::vector<int> bob;
    for (int q = 0; q < num_qubits_; ++q)
        if (!std::binary_search(alice_.begin(), alice_.end(), q)) bob.push_back(q);

    Eigen::MatrixXcd m(std::size_t(1) << nA, std::size_t(1) << nB);
    for (std::size_t x = 0; x < amp_.size(); ++x) {
        std::size_t a = 0, b = 0;
        for (int i = 0; i < nA; ++i)
            if (x & (std::size_t(1) << alice_[i])) a |= std::size_t(1) << i;
        for (int i = 0; i < nB; ++i)
            if (x & (std::size_t(1) << bob[i])) b |= std::size_t(1) << i;
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = amp_[x];
    }
    return m;
}

DenseState build_psi_n(const BaseSpectrum& base, std::int64_t N, std::int64_t cap) {
    base.validate();
    if (!base.is_binary()) throw std::invalid_argument("build_psi_n: binary base required");
    if (N <= 0) throw std::invalid_argument("build_psi_n: N must be positive");
    if (N > cap) throw std::invalid_argument("build_psi_n: N exceeds the dense cap");

    const int n = static_cast<int>(N);
    const double c0 = std::sqrt(base.probs[0]);
    const double c1 = std::sqrt(base.probs[1]);

    std::vector<Complex> amp(std::size_t(1) << (2 * n), Complex(0.0, 0.0));
    for (std::size_t x = 0; x < (std::size_t(1) << n); ++x) {
        double coeff = 1.0;
        for (int i = 0; i < n; ++i) coeff *= (x & (std::size_t(1) << i)) ? c1 : c0;
        amp[x | (x << n)] = Complex(coeff, 0.0);
    }
    std::vector<int> alice(n);
    for (int i = 0; i < n; ++i) alice[i] = i;
    return DenseState::from_amplitudes(std::move(amp), std::move(alice));
}

SchmidtSpectrum schmidt_spectrum_dense(const DenseState& state, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(state.bipartite_matrix());
    const auto& sigma = svd.singularValues();

    SchmidtSpectrum spectrum;
    spectrum.mode = PrecisionMode::Log;
    double current = -1.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double p = sigma(i) * sigma(i);
        if (p < kRankTol) break;
        if (!spectrum.classes.empty() && std::abs(p - current) <= tol * current) {
            spectrum.classes.back().multiplicity += 1;
        } else {
            SpectrumClass c;
            c.k = -1;
            c.log2_weight = std::log2(p);
            c.multiplicity = 1;
            spectrum.classes.push_back(std::move(c));
            current = p;
        }
    }
    return spectrum;
}

Eigen::MatrixXcd reduced_density(const DenseState& state, bool alice_side) {
    const Eigen::MatrixXcd m = state.bipartite_matrix();
    if (alice_side) return m * m.adjoint();
    return m.transpose() * m.conjugate();
}

double state_fidelity(const DenseState& a, const DenseState& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("state_fidelity: register mismatch");
    Complex overlap(0.0, 0.0);
    for (std::size_t x = 0; x < a.amplitudes().size(); ++x)
        overlap += std::conj(a.amplitudes()[x]) * b.amplitudes()[x];
    return std::norm(overlap);
}

DenseState scramble_bilocal(const DenseState& state, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> bob;
    for (int q = 0; q < state.num_qubits(); ++q)
        if (!std::binary_search(state.alice_qubits().begin(), state.alice_qubits().end(), q))
            bob.push_back(q);

    DenseState out = state;
    out.apply_unitary(state.alice_qubits(),
                      haar_unitary(1 << static_cast<int>(state.alice_qubits().size()), rng));
    out.apply_unitary(bob, haar_unitary(1 << static_cast<int>(bob.size()), rng));
    return out;
}

QubitState teleport(const QubitState& input, ProtocolTranscript& transcript, int forced_branch,
                    std::uint64_t seed) {
    // registers: 0 = input, 1 = Alice singlet half, 2 = Bob singlet half
    std::vector<Complex> amp(8, Complex(0.0, 0.0));
    const double r = 1.0 / std::sqrt(2.0);
    // input (x) (|00> + |11>)/sqrt(2)
    amp[0b000] = input.zero * r;
    amp[0b110] = input.zero * r;
    amp[0b001] = input.one * r;
    amp[0b111] = input.one * r;
    DenseState s = DenseState::from_amplitudes(std::move(amp), {0, 1});
    transcript.ebits_consumed += 1;

    s.apply_cnot(0, 1);
    s.apply_1q(0, hadamard());

    std::mt19937_64 rng(seed);
    std::optional<int> f1, f2;
    if (forced_branch >= 0) {
        f1 = (forced_branch >> 1) & 1;  // Z-correction bit
        f2 = forced_branch & 1;         // X-correction bit
    }
    const int m1 = s.measure(0, f1, rng);
    const int m2 = s.measure(1, f2, rng);

    transcript.record_classical(Direction::AliceToBob, 2);
    transcript.qubits_teleported += 1;

    // corrections derived from the transmitted bits only
    if (m2) s.apply_1q(2, pauli_x());
    if (m1) s.apply_1q(2, pauli_z());

    s.remove_qubit(1);
    s.remove_qubit(0);
    return {s.amplitudes()[0], s.amplitudes()[1]};
}

std::pair<int, int> dense_code(int bit_hi, int bit_lo, ProtocolTranscript& transcript) {
    if ((bit_hi & ~1) || (bit_lo & ~1))
        throw std::invalid_argument("dense_code: message bits must be 0 or 1");

    // qubit 0 = Alice's half, qubit 1 = Bob's half of (|00>+|11>)/sqrt(2)
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amp(4, Complex(0.0, 0.0));
    amp[0b00] = r;
    amp[0b11] = r;
    DenseState s = DenseState::from_amplitudes(std::move(amp), {0});
    transcript.ebits_consumed += 1;

    // encode: I, X, Z, XZ on Alice's half
    if (bit_lo) s.apply_1q(0, pauli_x());
    if (bit_hi) s.apply_1q(0, pauli_z());

    transcript.record_quantum(Direction::AliceToBob, 1);
    transcript.bits_via_densecoding += 2;

    // Bob's Bell measurement
    s.apply_cnot(0, 1);
    s.apply_1q(0, hadamard());
    std::mt19937_64 rng(0);
    const int hi = s.measure(0, std::nullopt, rng);
    const int lo = s.measure(1, std::nullopt, rng);
    return {hi, lo};
}

LemmaDemoResult lemma_demo(const DenseState& pi, std::int64_t n_singlets,
                           ProtocolTranscript& transcript, std::uint64_t seed) {
    const int nA = static_cast<int>(pi.alice_qubits().size());
    const int nB = pi.num_qubits() - nA;
    if (nA != nB) throw std::invalid_argument("lemma_demo: Alice and Bob must hold n qubits each");
    const int n = nA;
    const Eigen::Index dim = Eigen::Index(1) << n;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pi.bipartite_matrix(),
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const Eigen::MatrixXcd& U = svd.matrixU();
    const Eigen::MatrixXcd V = svd.matrixV().conjugate();  // psi = sum sigma_i U_i (x) V_i

    // degeneracy classes of the Schmidt spectrum
    SchmidtSpectrum spectrum;
    spectrum.mode = PrecisionMode::Log;
    Eigen::Index rank = 0;
    double current = -1.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double p = sigma(i) * sigma(i);
        if (p < kRankTol) break;
        ++rank;
        if (!spectrum.classes.empty() && std::abs(p - current) <= 1e-9 * current) {
            spectrum.classes.back().multiplicity += 1;
        } else {
            SpectrumClass c;
            c.log2_weight = std::log2(p);
            c.multiplicity = 1;
            spectrum.classes.push_back(std::move(c));
            current = p;
        }
    }

    LemmaDemoResult result;
    result.factorization = factorize_degenerate(spectrum);
    const std::int64_t r = result.factorization.r;
    const BigInt& gamma_dim_big = result.factorization.gamma_dim;
    const auto G = gamma_dim_big.convert_to<std::int64_t>();
    const std::int64_t m = G == 1 ? 0 : ceil_log2(gamma_dim_big);
    if (r + m > n_singlets) throw std::invalid_argument("lemma_demo: not enough shared singlets");

    // gamma coefficient list, one entry per residual Schmidt term
    std::vector<double> gamma_coeff;
    gamma_coeff.reserve(static_cast<std::size_t>(G));
    const double scale = std::exp2(static_cast<double>(r) / 2.0);
    {
        Eigen::Index i = 0;
        for (const auto& cls : spectrum.classes) {
            const auto mult = cls.multiplicity.convert_to<std::int64_t>();
            const auto copies = mult >> r;
            for (std::int64_t t = 0; t < copies; ++t) gamma_coeff.push_back(sigma(i) * scale);
            i += mult;
        }
    }

    // canonical index on each side: bits [0, m) carry t, bits [n-r, n)
    // carry the singlet label s, everything else is |0>
    auto canonical_index = [&](std::int64_t s, std::int64_t t) {
        return (s << (n - r)) | t;
    };

    // map canonical (s, t) to a Schmidt index with the same coefficient
    std::vector<Eigen::Index> schmidt_of_canonical(static_cast<std::size_t>(dim), -1);
    {
        Eigen::Index offset = 0;
        std::int64_t t0 = 0;
        for (const auto& cls : spectrum.classes) {
            const auto mult = cls.multiplicity.convert_to<std::int64_t>();
            const auto copies = mult >> r;
            for (std::int64_t s = 0; s < (std::int64_t(1) << r); ++s)
                for (std::int64_t t = 0; t < copies; ++t)
                    schmidt_of_canonical[static_cast<std::size_t>(
                        canonical_index(s, t0 + t))] = offset + s * copies + t;
            offset += mult;
            t0 += copies;
        }
        // leftover canonical indices take the null-space columns
        Eigen::Index next_free = rank;
        for (auto& idx : schmidt_of_canonical)
            if (idx < 0) idx = next_free++;
    }

    Eigen::MatrixXcd W_A(dim, dim), W_B(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        W_A.col(a) = U.col(schmidt_of_canonical[static_cast<std::size_t>(a)]);
        W_B.col(a) = V.col(schmidt_of_canonical[static_cast<std::size_t>(a)]);
    }

    // protocol registers: Alice 0..n-1, Bob n..2n-1, plus m local
    // qubits (2n..2n+m-1) holding Bob's half of gamma before it is sent
    const int total = 2 * n + static_cast<int>(m);
    std::vector<Complex> amp(std::size_t(1) << total, Complex(0.0, 0.0));
    const double inv_sqrt_2r = std::exp2(-static_cast<double>(r) / 2.0);
    for (std::int64_t s = 0; s < (std::int64_t(1) << r); ++s) {
        for (std::int64_t t = 0; t < G; ++t) {
            const std::size_t a_bits = static_cast<std::size_t>(canonical_index(s, t));
            const std::size_t b_bits = static_cast<std::size_t>(canonical_index(s, 0));
            const std::size_t l_bits = static_cast<std::size_t>(t);
            const std::size_t x = a_bits | (b_bits << n) | (l_bits << (2 * n));
            amp[x] = Complex(gamma_coeff[static_cast<std::size_t>(t)] * inv_sqrt_2r, 0.0);
        }
    }
    std::vector<int> alice;
    for (int q = 0; q < n; ++q) alice.push_back(q);
    for (int q = 0; q < static_cast<int>(m); ++q) alice.push_back(2 * n + q);
    DenseState state = DenseState::from_amplitudes(std::move(amp), alice);
    transcript.ebits_consumed += r;  // the pre-shared singlets inside Pi

    // teleport the m gamma qubits one by one
    std::mt19937_64 rng(seed);
    for (std::int64_t j = 0; j < m; ++j) {
        const int src = 2 * n + static_cast<int>(j);
        const int dst = n + static_cast<int>(j);  // Bob's t-register bit j

        state.append_qubits(1, true);   // Alice's half of a fresh singlet
        state.append_qubits(1, false);  // Bob's half
        const int anc_a = state.num_qubits() - 2;
        const int anc_b = state.num_qubits() - 1;
        state.apply_1q(anc_a, hadamard());
        state.apply_cnot(anc_a, anc_b);
        transcript.ebits_consumed += 1;

        state.apply_cnot(src, anc_a);
        state.apply_1q(src, hadamard());
        const int m1 = state.measure(src, std::nullopt, rng);
        const int m2 = state.measure(anc_a, std::nullopt, rng);
        transcript.record_classical(Direction::AliceToBob, 2);
        transcript.qubits_teleported += 1;

        if (m2) state.apply_1q(anc_b, pauli_x());
        if (m1) state.apply_1q(anc_b, pauli_z());

        state.apply_swap(anc_b, dst);  // Bob files the received qubit
        state.remove_qubit(anc_b);
        state.remove_qubit(anc_a);
    }
    for (std::int64_t j = m - 1; j >= 0; --j) state.remove_qubit(2 * n + static_cast<int>(j));

    // bi-local basis change into Pi's Schmidt bases
    std::vector<int> alice_final, bob_final;
    for (int q = 0; q < n; ++q) alice_final.push_back(q);
    for (int q = n; q < 2 * n; ++q) bob_final.push_back(q);
    state.apply_unitary(alice_final, W_A);
    state.apply_unitary(bob_final, W_B);

    // compare against Pi in the same qubit layout
    DenseState target = pi;
    if (pi.alice_qubits() != alice_final) {
        // rebuild Pi with Alice on the low qubits
        const Eigen::MatrixXcd mtx = pi.bipartite_matrix();
        std::vector<Complex> tamp(std::size_t(1) << (2 * n));
        for (Eigen::Index a = 0; a < dim; ++a)
            for (Eigen::Index b = 0; b < dim; ++b)
                tamp[static_cast<std::size_t>(a) | (static_cast<std::size_t>(b) << n)] = mtx(a, b);
        target = DenseState::from_amplitudes(std::move(tamp), alice_final);
    }

    result.fidelity = state_fidelity(target, state);
    result.cbits = 2 * m;
    return result;
}

}  // namespace ebitsim
