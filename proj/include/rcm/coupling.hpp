#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "rcm/exact_measures.hpp"
#include "rcm/graph.hpp"
#include "rcm/measure.hpp"
#include "rcm/random.hpp"
#include "rcm/statistics.hpp"

namespace rcm {

inline constexpr std::uint64_t kDefaultJointStateCap = std::uint64_t{1} << 22;

/// Spin/bond pair. Spins are 0..q-1.
struct JointConfig {
    std::vector<int> spins;
    EdgeSubset bonds;
    friend bool operator==(const JointConfig&, const JointConfig&) = default;
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    int burn_in = 1000;
    int samples = 10000;
    int thinning = 1;

    void validate() const {
        if (burn_in < 0 || samples <= 0 || thinning <= 0)
            throw UsageError("sampler counts must be positive (burn-in may be zero)");
    }
};

/// True when sigma is constant on every open edge of omega.
inline bool spins_respect_bonds(const Multigraph& g, const std::vector<int>& spins, std::uint64_t bonds) {
    for (std::uint64_t b = bonds; b; b &= b - 1) {
        const auto& e = g.edges()[static_cast<std::size_t>(__builtin_ctzll(b))];
        if (spins[e.u] != spins[e.v]) return false;
    }
    return true;
}

/// mu(sigma, omega) proportional to phi_p(omega) 1_F(sigma, omega); psi is uniform so it cancels.
inline MeasureTable joint_table(const Multigraph& g, const Rational& p, int q, std::uint64_t cap = kDefaultJointStateCap) {
    if (!(p >= 0 && p <= 1)) throw UsageError("p must lie in [0,1]");
    if (q < 2) throw UsageError("q must be at least 2");
    const int m = g.edge_count();
    if (m > 40) throw ResourceError("joint table: too many edges", cap);
    const std::uint64_t spins = spin_state_count(g.vertex_count(), q, cap);
    const std::uint64_t bonds = std::uint64_t{1} << m;
    if (spins > cap / bonds) throw ResourceError("joint table: q^|V| 2^|E| too large", cap);
    std::vector<Rational> ppow(static_cast<std::size_t>(m + 1), Rational(1)), rpow(static_cast<std::size_t>(m + 1), Rational(1));
    for (int i = 1; i <= m; ++i) {
        ppow[i] = ppow[i - 1] * p;
        rpow[i] = rpow[i - 1] * (Rational(1) - p);
    }
    const auto space = ConfigSpace::joint(g.vertex_count(), q, m);
    std::vector<Rational> w(static_cast<std::size_t>(space.size()), Rational(0));
    for (std::uint64_t s = 0; s < spins; ++s) {
        auto sigma = decode_spins(s, g.vertex_count(), q);
        for (std::uint64_t b = 0; b < bonds; ++b)
            if (spins_respect_bonds(g, sigma, b)) {
                const int a = __builtin_popcountll(b);
                w[static_cast<std::size_t>(s * bonds + b)] = ppow[a] * rpow[m - a];
            }
    }
    return MeasureTable::from_weights(space, std::move(w));
}

/// Uniform independent spin per open cluster of omega.
inline std::vector<int> spins_given_bonds(const Multigraph& g, const EdgeSubset& omega, int q, Rng& rng) {
    detail::check_subset(g, omega);
    auto label = component_labels(g, omega.bits());
    int clusters = 0;
    for (int l : label) clusters = std::max(clusters, l + 1);
    std::vector<int> cluster_spin(static_cast<std::size_t>(clusters));
    for (auto& s : cluster_spin) s = rng.uniform_int(q);
    std::vector<int> spins(label.size());
    for (std::size_t v = 0; v < label.size(); ++v) spins[v] = cluster_spin[static_cast<std::size_t>(label[v])];
    return spins;
}

/// Closed across disagreeing edges; open with probability p across agreeing edges.
inline EdgeSubset bonds_given_spins(const Multigraph& g, const std::vector<int>& spins, double p, Rng& rng) {
    if (static_cast<int>(spins.size()) != g.vertex_count()) throw UsageError("spin vector length mismatch");
    std::uint64_t bits = 0;
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[static_cast<std::size_t>(i)];
        if (spins[e.u] == spins[e.v] && rng.bernoulli(p)) bits |= std::uint64_t{1} << i;
    }
    return EdgeSubset(bits, g.edge_count());
}

/// Applies a Markov kernel to a table by explicit matrix-vector product:
/// out[j] = sum_i in[i] K(i, j).
template <class Kernel>
MeasureTable apply_kernel(const MeasureTable& in, Kernel&& kernel) {
    std::vector<Rational> out(static_cast<std::size_t>(in.size()), Rational(0));
    for (std::uint64_t i = 0; i < in.size(); ++i) {
        if (in[i] == 0) continue;
        for (std::uint64_t j = 0; j < in.size(); ++j) {
            Rational k = kernel(i, j);
            if (k != 0) out[static_cast<std::size_t>(j)] += in[i] * k;
        }
    }
    return MeasureTable::from_weights(in.space(), std::move(out));
}

/// Exact transition probability of the bond update on the joint space.
inline Rational bond_kernel(const Multigraph& g, const ConfigSpace& space, const Rational& p, std::uint64_t from, std::uint64_t to) {
    const auto bonds = space.bond_states();
    if (from / bonds != to / bonds) return Rational(0);
    auto sigma = decode_spins(from / bonds, space.vertices, space.q);
    const std::uint64_t omega = to % bonds;
    Rational pr(1);
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[static_cast<std::size_t>(i)];
        const bool open = (omega >> i) & 1u;
        if (sigma[e.u] != sigma[e.v]) {
            if (open) return Rational(0);
        } else {
            pr *= open ? p : Rational(1) - p;
        }
    }
    return pr;
}

/// Exact transition probability of the spin update on the joint space.
inline Rational spin_kernel(const Multigraph& g, const ConfigSpace& space, std::uint64_t from, std::uint64_t to) {
    const auto bonds = space.bond_states();
    if (from % bonds != to % bonds) return Rational(0);
    const std::uint64_t omega = to % bonds;
    auto sigma = decode_spins(to / bonds, space.vertices, space.q);
    if (!spins_respect_bonds(g, sigma, omega)) return Rational(0);
    return pow(Rational(1, space.q), detail::component_count_raw(g, omega));
}

/// Alternating chain: bonds from spins, then spins from bonds. One sweep is
/// one application of each kernel; the recorded pair is (new spins, bonds).
class SwendsenWang {
public:
    SwendsenWang(const Multigraph& g, double p, int q, Rng rng) : g_(g), p_(p), q_(q), rng_(std::move(rng)) {
        if (!(p >= 0 && p < 1)) throw UsageError("sampler p must lie in [0,1)");
        if (q < 2) throw UsageError("sampler q must be at least 2");
        state_.spins.resize(static_cast<std::size_t>(g_.vertex_count()));
        for (auto& s : state_.spins) s = rng_.uniform_int(q_);
        state_.bonds = EdgeSubset::empty_of(g_);
    }

    const JointConfig& sweep() {
        state_.bonds = bonds_given_spins(g_, state_.spins, p_, rng_);
        state_.spins = spins_given_bonds(g_, state_.bonds, q_, rng_);
        return state_;
    }

    const JointConfig& state() const { return state_; }

private:
    const Multigraph& g_;
    double p_;
    int q_;
    Rng rng_;
    JointConfig state_;
};

/// Runs one chain and returns the thinned post-burn-in stream.
inline std::vector<JointConfig> sw_sample(const Multigraph& g, double p, int q, const SamplerConfig& cfg, std::uint64_t stream = 0) {
    cfg.validate();
    SwendsenWang chain(g, p, q, Rng(cfg.seed, stream));
    for (int i = 0; i < cfg.burn_in; ++i) chain.sweep();
    std::vector<JointConfig> out;
    out.reserve(static_cast<std::size_t>(cfg.samples));
    for (int s = 0; s < cfg.samples; ++s) {
        for (int t = 0; t < cfg.thinning; ++t) chain.sweep();
        out.push_back(chain.state());
    }
    return out;
}

/// Independent chains on streams 0..chains-1, concatenated in stream order.
inline std::vector<JointConfig> sw_sample_chains(const Multigraph& g, double p, int q, const SamplerConfig& cfg, int chains) {
    if (chains <= 0) throw UsageError("need at least one chain");
    std::vector<std::vector<JointConfig>> parts(static_cast<std::size_t>(chains));
    std::vector<std::thread> workers;
    for (int c = 0; c < chains; ++c)
        workers.emplace_back([&, c] { parts[static_cast<std::size_t>(c)] = sw_sample(g, p, q, cfg, static_cast<std::uint64_t>(c)); });
    for (auto& w : workers) w.join();
    std::vector<JointConfig> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

struct TwoPointEstimate {
    Estimate tau;         // pi(sigma_x = sigma_y) - 1/q
    Estimate connection;  // phi(x <-> y)
};

inline TwoPointEstimate estimate_two_point(const Multigraph& g, std::span<const JointConfig> stream, int q, Vertex x, Vertex y) {
    if (stream.empty()) throw UsageError("empty sample stream");
    require_vertex(g, x);
    require_vertex(g, y);
    std::vector<double> tau, conn;
    tau.reserve(stream.size());
    conn.reserve(stream.size());
    for (const auto& s : stream) {
        tau.push_back((s.spins[x] == s.spins[y] ? 1.0 : 0.0) - 1.0 / q);
        if (x == y) {
            conn.push_back(1.0);
        } else {
            auto label = component_labels(g, s.bonds.bits());
            conn.push_back(label[x] == label[y] ? 1.0 : 0.0);
        }
    }
    TwoPointEstimate out{batch_means(tau), batch_means(conn)};
    if (x == y) out.connection.std_error = 0.0;
    return out;
}

} // namespace rcm
