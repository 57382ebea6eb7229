#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rcm/exact_measures.hpp"
#include "rcm/graph.hpp"
#include "rcm/measure.hpp"
#include "rcm/random.hpp"
#include "rcm/report.hpp"

namespace rcm {

/// Largest edge count for explicit events (2^6 configurations fit one word).
inline constexpr int kMaxEventEdges = 6;
/// Largest edge count for exhaustive up-set enumeration (Dedekind number 7581).
inline constexpr int kMaxUpsetEdges = 5;

/// Set of bond configurations on m edges, bit omega set when omega is in the event.
struct Event {
    std::uint64_t mask = 0;
    int edges = 0;

    static Event none(int m) { return {0, m}; }
    static Event all(int m) { return {full_mask(m), m}; }
    /// J_e: edge e open.
    static Event edge_open(int m, int e) {
        Event a{0, m};
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w)
            if ((w >> e) & 1u) a.mask |= std::uint64_t{1} << w;
        return a;
    }

    static std::uint64_t full_mask(int m) {
        const std::uint64_t n = std::uint64_t{1} << m;
        return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }
    bool contains(std::uint64_t omega) const { return (mask >> omega) & 1u; }
    std::uint64_t states() const { return std::uint64_t{1} << edges; }
    Event complement() const { return {~mask & full_mask(edges), edges}; }

    friend Event operator&(Event a, Event b) { return {a.mask & b.mask, a.edges}; }
    friend Event operator|(Event a, Event b) { return {a.mask | b.mask, a.edges}; }
    friend bool operator==(const Event&, const Event&) = default;
};

inline void require_event_edges(int m) {
    if (m < 0 || m > kMaxEventEdges) throw ResourceError("explicit events limited to small edge counts", kMaxEventEdges);
}

inline bool is_increasing(const Event& a) {
    for (std::uint64_t w = 0; w < a.states(); ++w) {
        if (!a.contains(w)) continue;
        for (int e = 0; e < a.edges; ++e)
            if (!a.contains(w | (std::uint64_t{1} << e))) return false;
    }
    return true;
}

namespace detail {

inline std::vector<Event> build_upsets(int m) {
    if (m == 0) return {Event::none(0), Event::all(0)};
    const auto lower = build_upsets(m - 1);
    const int half = 1 << (m - 1);
    std::vector<Event> out;
    for (const auto& a : lower)
        for (const auto& b : lower)
            if ((a.mask & ~b.mask) == 0) out.push_back({a.mask | (b.mask << half), m});
    return out;
}

} // namespace detail

/// All up-sets of {0,1}^m. An up-set splits into the part with the last edge
/// closed (a) and open (b), both up-sets on m-1 edges with a contained in b.
inline const std::vector<Event>& enumerate_increasing_events(int m) {
    if (m < 0 || m > kMaxUpsetEdges) throw ResourceError("up-set enumeration edge count too large", kMaxUpsetEdges);
    static const std::vector<std::vector<Event>> all = [] {
        std::vector<std::vector<Event>> v;
        for (int k = 0; k <= kMaxUpsetEdges; ++k) v.push_back(detail::build_upsets(k));
        return v;
    }();
    return all[static_cast<std::size_t>(m)];
}

// ---------------------------------------------------------------------------
// Event probabilities over exact tables, via integer weights
// ---------------------------------------------------------------------------

class EventMeasure {
public:
    explicit EventMeasure(const MeasureTable& t) : edges_(t.space().edges) {
        if (t.space().kind != ConfigSpace::Kind::bond) throw UsageError("event checks need a bond table");
        require_event_edges(edges_);
        auto sw = scaled_weights(t);
        weights_ = std::move(sw.weight);
        total_ = std::move(sw.total);
    }

    int edges() const { return edges_; }
    const Integer& total() const { return total_; }

    /// Unnormalized mass; probability is mass / total.
    Integer mass(const Event& a) const {
        Integer s = 0;
        for (std::uint64_t b = a.mask; b; b &= b - 1) s += weights_[static_cast<std::size_t>(__builtin_ctzll(b))];
        return s;
    }

    Rational probability(const Event& a) const {
        Rational r(mass(a), total_);
        r.canonicalize();
        return r;
    }

    /// mu(A cap B) <= mu(A) mu(B), evaluated as Z mass(A cap B) <= mass(A) mass(B).
    bool negatively_correlated(const Event& a, const Event& b) const {
        return total_ * mass(a & b) <= mass(a) * mass(b);
    }

private:
    int edges_;
    std::vector<Integer> weights_;
    Integer total_;
};

// ---------------------------------------------------------------------------
// Stochastic ordering
// ---------------------------------------------------------------------------

struct DominanceResult {
    bool holds = true;
    std::optional<Event> witness;  // increasing A with mu1(A) > mu2(A)
};

/// mu1 stochastically smaller than mu2, checked on every increasing event.
inline DominanceResult stochastic_dominance(const MeasureTable& mu1, const MeasureTable& mu2) {
    if (!(mu1.space() == mu2.space())) throw UsageError("dominance needs tables on the same space");
    EventMeasure a(mu1), b(mu2);
    DominanceResult out;
    for (const auto& ev : enumerate_increasing_events(a.edges())) {
        if (a.mass(ev) * b.total() > b.mass(ev) * a.total()) {
            out.holds = false;
            // Prefer the smallest violating event as witness.
            if (!out.witness || __builtin_popcountll(ev.mask) < __builtin_popcountll(out.witness->mask)) out.witness = ev;
        }
    }
    return out;
}

inline nlohmann::json event_json(const Event& a) {
    auto configs = nlohmann::json::array();
    for (std::uint64_t w = 0; w < a.states(); ++w)
        if (a.contains(w)) configs.push_back(w);
    return {{"edges", a.edges}, {"configurations", configs}};
}

/// Comparison inequalities for random-cluster measures:
///   phi_{p',q'} <= phi_{p,q}  when q' >= q, q' >= 1, p' <= p;
///   phi_{p',q'} >= phi_{p,q}  when q' >= q, q' >= 1, p'/(q'(1-p')) >= p/(q(1-p)).
inline Report comparison_check(const Multigraph& g, const Rational& p, const Rational& q, const Rational& p2, const Rational& q2) {
    Report r("random-cluster comparison inequalities");
    r.parameters = {{"p", p.get_str()}, {"q", q.get_str()}, {"p'", p2.get_str()}, {"q'", q2.get_str()}, {"graph", describe(g)}};
    const auto lo = rc_measure_table(g, RCParams(p, q));
    const auto hi = rc_measure_table(g, RCParams(p2, q2));
    const bool base = q2 >= q && q2 >= 1;
    const bool first = base && p2 <= p;
    const bool second = base && p2 / (q2 * (1 - p2)) >= p / (q * (1 - p));
    r.details = {{"first_hypothesis", first}, {"second_hypothesis", second}};
    if (first) {
        ++r.instances;
        auto d = stochastic_dominance(hi, lo);
        r.details["first_holds"] = d.holds;
        if (!d.holds) r.fail({{"direction", "phi_{p',q'} <= phi_{p,q}"}, {"event", event_json(*d.witness)}});
    }
    if (second) {
        ++r.instances;
        auto d = stochastic_dominance(lo, hi);
        r.details["second_holds"] = d.holds;
        if (!d.holds) r.fail({{"direction", "phi_{p',q'} >= phi_{p,q}"}, {"event", event_json(*d.witness)}});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Positive association
// ---------------------------------------------------------------------------

/// Checks phi(A cap B) >= phi(A) phi(B) over every pair of increasing events
/// (|E| <= 4) and phi(fg) >= phi(f) phi(g) for random increasing simple
/// functions f = sum c_k 1_{A_k}. For q < 1 the report is a search result.
inline Report fkg_check(const Multigraph& g, const Rational& p, const Rational& q, int function_pairs = 100, std::uint64_t seed = 0) {
    Report r("positive association phi(fg) >= phi(f) phi(g)");
    r.informational = q < 1;
    r.parameters = {{"p", p.get_str()}, {"q", q.get_str()}, {"graph", describe(g)}, {"function_pairs", function_pairs}, {"seed", seed}};
    if (g.edge_count() > 4) throw ResourceError("FKG pair enumeration limited to 4 edges", 4);
    EventMeasure mu(rc_measure_table(g, RCParams(p, q)));
    const auto& events = enumerate_increasing_events(g.edge_count());
    std::vector<Integer> mass;
    mass.reserve(events.size());
    for (const auto& a : events) mass.push_back(mu.mass(a));
    for (std::size_t i = 0; i < events.size(); ++i)
        for (std::size_t j = i; j < events.size(); ++j) {
            ++r.instances;
            const Integer lhs = mu.total() * mu.mass(events[i] & events[j]);
            const Integer rhs = mass[i] * mass[j];
            if (lhs < rhs) {
                r.note_deviation(Rational(rhs - lhs) / (mu.total() * mu.total()));
                r.fail({{"A", event_json(events[i])}, {"B", event_json(events[j])}});
            }
        }

    Rng rng(seed);
    auto random_function = [&]() {
        std::vector<std::pair<Rational, std::size_t>> terms;
        const int k = 1 + rng.uniform_int(3);
        for (int t = 0; t < k; ++t)
            terms.emplace_back(Rational(1 + rng.uniform_int(10), 1 + rng.uniform_int(10)),
                               static_cast<std::size_t>(rng.uniform_int(static_cast<int>(events.size()))));
        return terms;
    };
    const Rational z(mu.total());
    for (int t = 0; t < function_pairs; ++t) {
        auto f = random_function(), h = random_function();
        Rational ef(0), eh(0), efh(0);
        for (const auto& [c, i] : f) ef += c * Rational(mass[i]) / z;
        for (const auto& [c, i] : h) eh += c * Rational(mass[i]) / z;
        for (const auto& [c, i] : f)
            for (const auto& [d, j] : h) efh += c * d * Rational(mu.mass(events[i] & events[j])) / z;
        ++r.instances;
        if (efh < ef * eh) {
            r.note_deviation(ef * eh - efh);
            r.fail({{"function_pair", t}, {"E[fg]", efh.get_str()}, {"E[f]E[g]", Rational(ef * eh).get_str()}});
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Disjoint occurrence and negative association
// ---------------------------------------------------------------------------

namespace detail {

/// cylinder(F, omega) = configurations agreeing with omega on F.
inline std::uint64_t cylinder(int m, std::uint64_t f, std::uint64_t omega) {
    std::uint64_t out = 0;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w)
        if (((w ^ omega) & f) == 0) out |= std::uint64_t{1} << w;
    return out;
}

struct CylinderTable {
    int m;
    std::vector<std::uint64_t> cyl;  // [F * 2^m + omega]
    explicit CylinderTable(int m_) : m(m_), cyl(std::size_t{1} << (2 * m_)) {
        const std::uint64_t n = std::uint64_t{1} << m;
        for (std::uint64_t f = 0; f < n; ++f)
            for (std::uint64_t w = 0; w < n; ++w) cyl[f * n + w] = cylinder(m, f, w);
    }
    std::uint64_t at(std::uint64_t f, std::uint64_t w) const { return cyl[f * (std::uint64_t{1} << m) + w]; }
};

inline const CylinderTable& cylinder_table(int m) {
    static std::mutex guard;
    static std::map<int, CylinderTable> tables;
    std::lock_guard lock(guard);
    auto it = tables.find(m);
    if (it == tables.end()) it = tables.emplace(m, CylinderTable(m)).first;
    return it->second;
}

} // namespace detail

/// A box B: omega such that some F has the cylinder of omega on F inside A and
/// the cylinder on the complement of F inside B.
inline Event box_product(const Event& a, const Event& b) {
    if (a.edges != b.edges) throw UsageError("box product of events on different spaces");
    require_event_edges(a.edges);
    const int m = a.edges;
    const auto& cyl = detail::cylinder_table(m);
    const std::uint64_t n = std::uint64_t{1} << m, all_edges = n - 1;
    Event out{0, m};
    for (std::uint64_t w = 0; w < n; ++w)
        for (std::uint64_t f = 0; f < n; ++f)
            if ((cyl.at(f, w) & ~a.mask) == 0 && (cyl.at(all_edges & ~f, w) & ~b.mask) == 0) {
                out.mask |= std::uint64_t{1} << w;
                break;
            }
    return out;
}

/// Events whose membership depends only on the edges in f.
inline bool is_defined_on(const Event& a, std::uint64_t f) {
    const auto& cyl = detail::cylinder_table(a.edges);
    for (std::uint64_t w = 0; w < a.states(); ++w)
        if (a.contains(w) != ((cyl.at(f, w) & ~a.mask) == 0)) return false;
    return true;
}

/// Up-sets of the sub-cube on edge set f, lifted to all m edges.
inline std::vector<Event> increasing_events_on(int m, std::uint64_t f) {
    std::vector<int> idx;
    for (int e = 0; e < m; ++e)
        if ((f >> e) & 1u) idx.push_back(e);
    std::vector<Event> out;
    for (const auto& u : enumerate_increasing_events(static_cast<int>(idx.size()))) {
        Event lifted{0, m};
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w) {
            std::uint64_t proj = 0;
            for (std::size_t k = 0; k < idx.size(); ++k)
                if ((w >> idx[k]) & 1u) proj |= std::uint64_t{1} << k;
            if (u.contains(proj)) lifted.mask |= std::uint64_t{1} << w;
        }
        out.push_back(lifted);
    }
    return out;
}

inline constexpr int kDisjointOccurrenceExhaustiveEdges = 3;
inline constexpr int kDisjointOccurrenceSampledEdges = 4;
inline constexpr int kDisjointOccurrenceSamples = 20000;

namespace detail {

struct BoxPair {
    Event a, b, box;
};

/// Pairs used by the disjoint-occurrence check, with their box products.
/// Exhaustive for m <= 3. For m = 4: every pair of increasing events, every
/// pair of decreasing events, and a fixed pseudo-random sample of arbitrary pairs.
inline const std::vector<BoxPair>& disjoint_occurrence_pairs(int m) {
    static std::mutex guard;
    static std::map<int, std::vector<BoxPair>> memo;
    std::lock_guard lock(guard);
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    std::vector<BoxPair> out;
    const std::uint64_t full = Event::full_mask(m);
    if (m <= kDisjointOccurrenceExhaustiveEdges) {
        for (std::uint64_t a = 0; a <= full; ++a)
            for (std::uint64_t b = 0; b <= full; ++b) out.push_back({{a, m}, {b, m}, box_product({a, m}, {b, m})});
    } else {
        const auto& up = enumerate_increasing_events(m);
        for (const auto& a : up)
            for (const auto& b : up) {
                out.push_back({a, b, box_product(a, b)});
                out.push_back({a.complement(), b.complement(), box_product(a.complement(), b.complement())});
            }
        Rng rng(0x5eed);
        for (int i = 0; i < kDisjointOccurrenceSamples; ++i) {
            Event a{rng.engine()() & full, m}, b{rng.engine()() & full, m};
            out.push_back({a, b, box_product(a, b)});
        }
    }
    return memo.emplace(m, std::move(out)).first->second;
}

} // namespace detail

struct NegativeAssociationReport {
    bool edge_na = true;
    std::optional<bool> na;                    // evaluated for |E| <= 5
    std::optional<bool> disjoint_occurrence;   // evaluated for |E| <= 4
    std::string disjoint_occurrence_coverage;  // "exhaustive", "sampled", or "not evaluated"
    bool chain_consistent = true;
    std::vector<nlohmann::json> witnesses;
};

/// Evaluates edge-NA, NA (each pair carries its own F), and the disjoint
/// occurrence property, then checks disjoint occurrence => NA => edge-NA
/// against the computed flags.
inline NegativeAssociationReport negative_association_checks(const MeasureTable& mu_table, bool want_na = true, bool want_do = true) {
    EventMeasure mu(mu_table);
    const int m = mu.edges();
    NegativeAssociationReport out;
    auto witness = [&](nlohmann::json w) {
        if (out.witnesses.size() < Report::kMaxWitnesses) out.witnesses.push_back(std::move(w));
    };

    for (int e = 0; e < m; ++e)
        for (int f = e + 1; f < m; ++f)
            if (!mu.negatively_correlated(Event::edge_open(m, e), Event::edge_open(m, f))) {
                out.edge_na = false;
                witness({{"property", "edge-NA"}, {"e", e}, {"f", f}});
            }

    if (want_na && m <= kMaxUpsetEdges) {
        bool na = true;
        const std::uint64_t all_edges = (std::uint64_t{1} << m) - 1;
        // F empty or full only yields the trivial events.
        for (std::uint64_t f = 1; f < all_edges; ++f) {
            auto as = increasing_events_on(m, f);
            auto bs = increasing_events_on(m, all_edges & ~f);
            for (const auto& a : as)
                for (const auto& b : bs)
                    if (!mu.negatively_correlated(a, b)) {
                        if (na) witness({{"property", "NA"}, {"F", f}, {"A", event_json(a)}, {"B", event_json(b)}});
                        na = false;
                    }
        }
        out.na = na;
    }

    out.disjoint_occurrence_coverage = "not evaluated";
    if (want_do && m <= kDisjointOccurrenceSampledEdges) {
        bool ok = true;
        for (const auto& pair : detail::disjoint_occurrence_pairs(m)) {
            if (mu.total() * mu.mass(pair.box) > mu.mass(pair.a) * mu.mass(pair.b)) {
                if (ok) witness({{"property", "disjoint occurrence"}, {"A", event_json(pair.a)}, {"B", event_json(pair.b)}});
                ok = false;
            }
        }
        out.disjoint_occurrence = ok;
        out.disjoint_occurrence_coverage = m <= kDisjointOccurrenceExhaustiveEdges ? "exhaustive" : "sampled";
    }

    if (out.disjoint_occurrence.value_or(false) && out.na.has_value() && !*out.na) out.chain_consistent = false;
    if (out.na.value_or(false) && !out.edge_na) out.chain_consistent = false;
    if (out.disjoint_occurrence.value_or(false) && !out.edge_na) out.chain_consistent = false;
    return out;
}

inline nlohmann::json to_json_value(const NegativeAssociationReport& r) {
    nlohmann::json j{{"edge_na", r.edge_na},
                     {"disjoint_occurrence_coverage", r.disjoint_occurrence_coverage},
                     {"chain_consistent", r.chain_consistent}};
    j["na"] = r.na ? nlohmann::json(*r.na) : nlohmann::json(nullptr);
    j["disjoint_occurrence"] = r.disjoint_occurrence ? nlohmann::json(*r.disjoint_occurrence) : nlohmann::json(nullptr);
    if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
    return j;
}

// ---------------------------------------------------------------------------
// Uniform substructure measures and the q -> 0 limits
// ---------------------------------------------------------------------------

enum class Substructure { spanning_tree, forest, connected_subgraph };

inline const char* to_string(Substructure s) {
    switch (s) {
    case Substructure::spanning_tree: return "spanning-tree";
    case Substructure::forest: return "forest";
    case Substructure::connected_subgraph: return "connected-subgraph";
    }
    return "?";
}

inline bool in_substructure(const Multigraph& g, std::uint64_t bits, Substructure kind) {
    const int k = detail::component_count_raw(g, bits);
    const int a = __builtin_popcountll(bits);
    const int corank = a - g.vertex_count() + k;
    switch (kind) {
    case Substructure::spanning_tree: return k == 1 && corank == 0;
    case Substructure::forest: return corank == 0;
    case Substructure::connected_subgraph: return k == 1;
    }
    return false;
}

/// Uniform measure on spanning trees, forests, or spanning connected subgraphs.
inline MeasureTable uniform_substructure_measure(const Multigraph& g, Substructure kind, int edge_cap = kMeasureTableEdgeCap) {
    if (kind != Substructure::forest && !is_connected(g))
        throw UsageError(std::string(to_string(kind)) + " measure needs a connected graph");
    require_edge_cap(g, edge_cap, "uniform substructure table");
    const std::uint64_t states = std::uint64_t{1} << g.edge_count();
    std::vector<Rational> w(static_cast<std::size_t>(states), Rational(0));
    for (std::uint64_t bits = 0; bits < states; ++bits)
        if (in_substructure(g, bits, kind)) w[static_cast<std::size_t>(bits)] = 1;
    return MeasureTable::from_weights(ConfigSpace::bond(g.edge_count()), std::move(w));
}

enum class LimitRegime { ucs, ust, usf };

inline const char* to_string(LimitRegime r) {
    switch (r) {
    case LimitRegime::ucs: return "ucs";
    case LimitRegime::ust: return "ust";
    case LimitRegime::usf: return "usf";
    }
    return "?";
}

struct LimitPath {
    /// Exponent a in p = q^a on the spanning-tree path; any a in (0,1) gives p -> 0, q/p -> 0.
    double ust_exponent = 0.5;

    double p_for(LimitRegime regime, double q) const {
        switch (regime) {
        case LimitRegime::ucs: return 0.5;
        case LimitRegime::ust: return std::pow(q, ust_exponent);
        case LimitRegime::usf: return q;
        }
        return 0.5;
    }
};

inline std::vector<double> default_q_schedule() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

/// TV(phi_{p,q}, target) along the regime's path must decrease strictly and
/// end below final_tolerance.
inline Report q_to_zero_limit_check(const Multigraph& g, LimitRegime regime, std::vector<double> schedule = default_q_schedule(),
                                    double final_tolerance = 1e-3, LimitPath path = {}) {
    Report r(std::string("phi_{p,q} -> ") + to_string(regime) + " as q -> 0");
    if (schedule.empty()) throw UsageError("empty q schedule");
    const Substructure target_kind = regime == LimitRegime::ucs   ? Substructure::connected_subgraph
                                     : regime == LimitRegime::ust ? Substructure::spanning_tree
                                                                  : Substructure::forest;
    const auto target = to_float(uniform_substructure_measure(g, target_kind));
    auto trace = nlohmann::json::array();
    double previous = INFINITY, last = 0;
    for (double q : schedule) {
        const double p = path.p_for(regime, q);
        const double tv = total_variation(rc_measure_table_of<double>(g, p, q), target);
        trace.push_back({{"q", q}, {"p", p}, {"tv", tv}});
        ++r.instances;
        if (!(tv < previous)) r.fail({{"non_decreasing_at_q", q}, {"tv", tv}, {"previous", previous}});
        previous = tv;
        last = tv;
    }
    r.note_deviation(last);
    if (!(last < final_tolerance)) r.fail({{"final_tv", last}, {"tolerance", final_tolerance}, {"q", schedule.back()}});
    r.parameters = {{"regime", to_string(regime)}, {"graph", describe(g)}, {"final_tolerance", final_tolerance}};
    if (regime == LimitRegime::ust) r.parameters["p_path"] = "p = q^" + format_double(path.ust_exponent);
    r.details = {{"trace", trace}};
    return r;
}

/// Negative association of the uniform spanning tree: full NA for |E| <= 5,
/// edge-NA beyond.
inline Report ust_feder_mihail_check(const Multigraph& g) {
    Report r("uniform spanning tree is negatively associated");
    r.parameters = {{"graph", describe(g)}};
    auto na = negative_association_checks(uniform_substructure_measure(g, Substructure::spanning_tree),
                                          g.edge_count() <= kMaxUpsetEdges, false);
    ++r.instances;
    const bool ok = na.edge_na && na.na.value_or(true);
    r.details = {{"na", to_json_value(na)}, {"scope", g.edge_count() <= kMaxUpsetEdges ? "NA" : "edge-NA"}};
    if (!ok) r.fail({{"graph", describe(g)}, {"na", to_json_value(na)}});
    return r;
}

/// Edge-NA (and NA where |E| <= 5) for USF and UCS on each graph. Findings are
/// reported; the report never gates.
inline Report conjecture_forest_scan(const std::vector<Multigraph>& graphs, bool include_na = true) {
    Report r("USF and UCS edge negative association (conjecture scan)");
    r.informational = true;
    int counterexamples = 0, na_checked = 0;
    for (const auto& g : graphs) {
        if (g.edge_count() > kMaxEventEdges) continue;
        for (auto kind : {Substructure::forest, Substructure::connected_subgraph}) {
            if (kind == Substructure::connected_subgraph && !is_connected(g)) continue;
            auto res = negative_association_checks(uniform_substructure_measure(g, kind),
                                                   include_na && g.edge_count() <= kMaxUpsetEdges, false);
            ++r.instances;
            na_checked += res.na.has_value();
            if (!res.edge_na || !res.na.value_or(true)) {
                ++counterexamples;
                r.fail({{"measure", kind == Substructure::forest ? "USF" : "UCS"}, {"graph", describe(g)}, {"result", to_json_value(res)}});
            }
        }
    }
    r.details = {{"graphs", graphs.size()}, {"counterexamples", counterexamples}, {"na_checked", na_checked}};
    return r;
}

} // namespace rcm
