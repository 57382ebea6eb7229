#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rcm/errors.hpp"
#include "rcm/number.hpp"

namespace rcm {

/// Finite configuration space. Bond configurations are bitmasks over edges;
/// spin configurations are base-q digit strings (vertex 0 least significant,
/// spins stored 0..q-1); joint index = spin_index * 2^edges + bond_bits.
struct ConfigSpace {
    enum class Kind { bond, spin, joint };

    Kind kind = Kind::bond;
    int edges = 0;
    int vertices = 0;
    int q = 0;

    static ConfigSpace bond(int m) { return {Kind::bond, m, 0, 0}; }
    static ConfigSpace spin(int n, int q) { return {Kind::spin, 0, n, q}; }
    static ConfigSpace joint(int n, int q, int m) { return {Kind::joint, m, n, q}; }

    std::uint64_t spin_states() const {
        std::uint64_t s = 1;
        for (int i = 0; i < vertices; ++i) s *= static_cast<std::uint64_t>(q);
        return s;
    }
    std::uint64_t bond_states() const { return std::uint64_t{1} << edges; }

    std::uint64_t size() const {
        switch (kind) {
        case Kind::bond: return bond_states();
        case Kind::spin: return spin_states();
        case Kind::joint: return spin_states() * bond_states();
        }
        return 0;
    }

    friend bool operator==(const ConfigSpace&, const ConfigSpace&) = default;
};

inline std::vector<int> decode_spins(std::uint64_t index, int n, int q) {
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        s[static_cast<std::size_t>(v)] = static_cast<int>(index % static_cast<std::uint64_t>(q));
        index /= static_cast<std::uint64_t>(q);
    }
    return s;
}

inline std::uint64_t encode_spins(const std::vector<int>& s, int q) {
    std::uint64_t index = 0;
    for (std::size_t v = s.size(); v-- > 0;) index = index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(s[v]);
    return index;
}

/// Explicit probability assignment over a finite configuration space.
template <class Scalar>
class BasicMeasureTable {
public:
    BasicMeasureTable() = default;

    /// Normalizes non-negative weights into probabilities.
    static BasicMeasureTable from_weights(ConfigSpace space, std::vector<Scalar> weights) {
        if (weights.size() != space.size()) throw UsageError("weight vector does not match configuration space");
        Scalar total(0);
        for (const auto& w : weights) {
            if (w < 0) throw UsageError("negative weight in measure table");
            total += w;
        }
        if (total == 0) throw UsageError("measure table has zero total mass");
        for (auto& w : weights) w /= total;
        BasicMeasureTable t;
        t.space_ = space;
        t.probs_ = std::move(weights);
        return t;
    }

    const ConfigSpace& space() const { return space_; }
    const std::vector<Scalar>& probabilities() const { return probs_; }
    const Scalar& operator[](std::uint64_t i) const { return probs_[static_cast<std::size_t>(i)]; }
    std::uint64_t size() const { return probs_.size(); }

    Scalar total() const {
        Scalar s(0);
        for (const auto& p : probs_) s += p;
        return s;
    }

    /// Probability of a set of configurations given as a predicate.
    template <class Pred>
    Scalar probability(Pred&& in_event) const {
        Scalar s(0);
        for (std::uint64_t i = 0; i < probs_.size(); ++i)
            if (in_event(i)) s += probs_[static_cast<std::size_t>(i)];
        return s;
    }

    /// Marginal of a joint table on the bond coordinate.
    BasicMeasureTable bond_marginal() const {
        require_joint();
        std::vector<Scalar> out(space_.bond_states(), Scalar(0));
        const auto bonds = space_.bond_states();
        for (std::uint64_t i = 0; i < probs_.size(); ++i) out[static_cast<std::size_t>(i % bonds)] += probs_[static_cast<std::size_t>(i)];
        BasicMeasureTable t;
        t.space_ = ConfigSpace::bond(space_.edges);
        t.probs_ = std::move(out);
        return t;
    }

    /// Marginal of a joint table on the spin coordinate.
    BasicMeasureTable spin_marginal() const {
        require_joint();
        std::vector<Scalar> out(space_.spin_states(), Scalar(0));
        const auto bonds = space_.bond_states();
        for (std::uint64_t i = 0; i < probs_.size(); ++i) out[static_cast<std::size_t>(i / bonds)] += probs_[static_cast<std::size_t>(i)];
        BasicMeasureTable t;
        t.space_ = ConfigSpace::spin(space_.vertices, space_.q);
        t.probs_ = std::move(out);
        return t;
    }

    friend bool operator==(const BasicMeasureTable&, const BasicMeasureTable&) = default;

private:
    void require_joint() const {
        if (space_.kind != ConfigSpace::Kind::joint) throw UsageError("marginal requires a joint table");
    }

    ConfigSpace space_;
    std::vector<Scalar> probs_;
};

using MeasureTable = BasicMeasureTable<Rational>;
using FloatMeasureTable = BasicMeasureTable<double>;

template <class Scalar>
Scalar total_variation(const BasicMeasureTable<Scalar>& a, const BasicMeasureTable<Scalar>& b) {
    if (!(a.space() == b.space())) throw UsageError("total variation between different spaces");
    Scalar s(0);
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        Scalar d = a[i] - b[i];
        s += d < 0 ? Scalar(-d) : d;
    }
    return s / 2;
}

inline FloatMeasureTable to_float(const MeasureTable& t) {
    std::vector<double> w;
    w.reserve(t.size());
    for (const auto& p : t.probabilities()) w.push_back(p.get_d());
    return FloatMeasureTable::from_weights(t.space(), std::move(w));
}

/// Integer weights proportional to an exact table, plus their total. Lets
/// inequality checkers compare sums of integers instead of rationals.
struct ScaledWeights {
    std::vector<Integer> weight;
    Integer total;
};

inline ScaledWeights scaled_weights(const MeasureTable& t) {
    Integer lcm = 1;
    for (const auto& p : t.probabilities()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.get_den_mpz_t());
    ScaledWeights out;
    out.weight.reserve(t.size());
    out.total = 0;
    for (const auto& p : t.probabilities()) {
        Integer w = p.get_num() * (lcm / p.get_den());
        out.total += w;
        out.weight.push_back(std::move(w));
    }
    return out;
}

} // namespace rcm
