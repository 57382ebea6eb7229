#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "rcm/association.hpp"
#include "rcm/coupling.hpp"
#include "rcm/exact_measures.hpp"
#include "rcm/flows.hpp"
#include "rcm/graph_enum.hpp"
#include "rcm/kn.hpp"
#include "rcm/report.hpp"
#include "rcm/tutte.hpp"

// Sweeps over graph families and parameter grids, one aggregate report per
// suite. Shared by `rcm verify` and the acceptance binary.

namespace rcm::suites {

struct Options {
    std::uint64_t seed = 0;
    int sw_sweeps = 100000;
    int mc_samples = 100000;
};

inline std::vector<std::pair<Rational, Rational>> pq_grid() {
    auto r = [](const char* s) { return parse_rational(s); };
    return {{r("1/2"), r("2")},   {r("1/3"), r("3")},   {r("3/4"), r("2")}, {r("1/5"), r("4")},   {r("2/3"), r("3")},
            {r("1/2"), r("1/2")}, {r("1/4"), r("3/2")}, {r("3/5"), r("5/2")}, {r("1/7"), r("1")}, {r("5/6"), r("2")}};
}

/// Merges a per-instance report into an aggregate.
inline void absorb(Report& total, const Report& part) {
    total.instances += part.instances;
    if (part.max_abs_deviation() != "0") {
        const double d = std::stod(part.max_abs_deviation());
        if (d != 0) total.note_deviation(d);
    }
    if (!part.pass && !part.informational) {
        for (const auto& w : part.witnesses) total.fail(w);
        if (part.witnesses.empty()) total.fail({{"identity", part.identity}});
    }
    if (!part.pass && part.informational)
        for (const auto& w : part.witnesses) total.note(w);
}

inline GraphFamily family(int max_vertices, int max_edges, bool connected, bool simple = false, bool no_isolated = false) {
    GraphFamily f;
    f.min_vertices = 1;
    f.max_vertices = max_vertices;
    f.max_edges = max_edges;
    f.connected_only = connected;
    f.loops = !simple;
    f.parallel_edges = !simple;
    f.no_isolated_vertices = no_isolated;
    return f;
}

inline nlohmann::json family_json(const GraphFamily& f) {
    return {{"max_vertices", f.max_vertices}, {"max_edges", f.max_edges}, {"connected_only", f.connected_only},
            {"loops", f.loops}, {"parallel_edges", f.parallel_edges}, {"no_isolated_vertices", f.no_isolated_vertices}};
}

/// Twenty rational points with u != 1.
inline std::vector<std::pair<Rational, Rational>> tutte_points() {
    std::vector<std::pair<Rational, Rational>> pts;
    const char* us[] = {"-2", "-3/2", "-1/3", "0", "1/2", "2", "5/3", "3", "7/2", "-5/4"};
    const char* vs[] = {"-1", "0", "1/3", "2", "5/2", "-2/3", "4", "1", "3/4", "-3"};
    for (int i = 0; i < 10; ++i) {
        pts.emplace_back(parse_rational(us[i]), parse_rational(vs[i]));
        pts.emplace_back(parse_rational(us[9 - i]), parse_rational(vs[(i + 3) % 10]));
    }
    return pts;
}

/// T_G(u,v) = (u-1)^{|V|-1} W_G(1/(u-1), v-1) on connected multigraphs.
inline Report tutte_identity(int max_vertices = 5, int max_edges = 8) {
    Report r("T_G(u,v) = (u-1)^{|V|-1} W_G((u-1)^{-1}, v-1)");
    const auto fam = family(max_vertices, max_edges, true);
    const auto pts = tutte_points();
    TutteComputer tc;
    std::size_t graphs = 0;
    for (const auto& g : enumerate_graphs(fam)) {
        ++graphs;
        const auto t = tc(g);
        const auto w = rank_gen_poly(g);
        for (const auto& [u, v] : pts) {
            const Rational lhs = eval_poly(t, u, v);
            const Rational rhs = pow(Rational(u - 1), g.vertex_count() - 1) * eval_poly(w, Rational(1 / (u - 1)), Rational(v - 1));
            ++r.instances;
            if (lhs != rhs) {
                r.note_deviation(Rational(lhs - rhs));
                r.fail({{"graph", describe(g)}, {"u", u.get_str()}, {"v", v.get_str()}, {"T", lhs.get_str()}, {"W_transform", rhs.get_str()}});
            }
        }
    }
    r.parameters = {{"family", family_json(fam)}, {"points", pts.size()}};
    r.details = {{"graphs", graphs}};
    return r;
}

/// Z_RC by subset sum = (1-p)^{|E|} multivariate Tutte with v_e = p/(1-p), and
/// for integer q >= 2, Z_RC = (1-p)^{|E|} Z_P with e^{-beta} = 1-p.
inline Report partition_correspondence(int max_vertices = 4, int max_edges = 5) {
    Report r("Z_RC = (1-p)^{|E|} Z(q, p/(1-p)) = (1-p)^{|E|} Z_P");
    const auto fam = family(max_vertices, max_edges, false);
    std::size_t graphs = 0;
    for (const auto& g : enumerate_graphs(fam)) {
        ++graphs;
        for (const auto& [p, q] : pq_grid()) {
            const Rational z = rc_partition(g, RCParams(p, q));
            const Rational scale = pow(Rational(1 - p), g.edge_count());
            std::vector<Rational> ws(static_cast<std::size_t>(g.edge_count()), Rational(p / (1 - p)));
            const Rational mt = scale * multivariate_tutte<Rational>(g, q, ws);
            ++r.instances;
            if (z != mt) {
                r.note_deviation(Rational(z - mt));
                r.fail({{"graph", describe(g)}, {"p", p.get_str()}, {"q", q.get_str()}, {"Z_RC", z.get_str()}, {"multivariate", mt.get_str()}});
            }
            if (q.get_den() == 1 && q >= 2) {
                absorb(r, verify_partition_identity(g, p, static_cast<int>(q.get_num().get_si())));
            }
        }
    }
    r.parameters = {{"family", family_json(fam)}, {"pq_grid_size", pq_grid().size()}};
    r.details = {{"graphs", graphs}};
    return r;
}

/// Prefactor identity with evaluation at (u,v) on connected graphs.
inline Report tutte_rcm(int max_vertices = 4, int max_edges = 5) {
    Report r("Z_RC = (u-1)(v-1)^{|V|} v^{-|E|} T_G(u,v), Z_P = (u-1)(v-1)^{|V|} T_G(u,v)");
    const auto fam = family(max_vertices, max_edges, true);
    TutteComputer tc;
    std::size_t graphs = 0, shifted_matches = 0, points = 0;
    for (const auto& g : enumerate_graphs(fam)) {
        ++graphs;
        for (const auto& [p, q] : pq_grid()) {
            const auto part = tutte_rc_identity(g, p, q, &tc);
            absorb(r, part);
            ++points;
            if (part.details.value("shifted_point_matches", false)) ++shifted_matches;
        }
    }
    r.parameters = {{"family", family_json(fam)}, {"pq_grid_size", pq_grid().size()}, {"evaluation_point", "(u,v)"}};
    r.details = {{"graphs", graphs},
                 {"instances_where_shifted_point_(u-1,v-1)_also_matches", shifted_matches},
                 {"instances_checked", points},
                 {"note", "the identity is evaluated at (u,v); writing the evaluation point as (u-1, v-1) does not reproduce Z_RC"}};
    return r;
}

inline Report corr_conn(int max_vertices = 4, int max_edges = 5) {
    Report r("tau_{beta,q}(x,y) = (1 - 1/q) phi_{p,q}(x<->y), p = 1 - e^{-beta}");
    const auto fam = family(max_vertices, max_edges, false);
    std::size_t graphs = 0;
    for (const auto& g : enumerate_graphs(fam)) {
        ++graphs;
        for (int q : {2, 3, 4})
            for (const char* p : {"1/4", "1/2", "3/4"}) absorb(r, verify_corr_conn(g, parse_rational(p), q));
    }
    r.parameters = {{"family", family_json(fam)}, {"q", {2, 3, 4}}, {"p", {"1/4", "1/2", "3/4"}}};
    r.details = {{"graphs", graphs}};
    return r;
}

/// Joint-table marginals and kernel stationarity.
inline Report coupling_exact(int max_vertices = 3, int max_edges = 4, std::uint64_t kernel_state_cap = 512) {
    Report r("coupling marginals and kernel stationarity");
    const auto fam = family(max_vertices, max_edges, false);
    std::size_t graphs = 0, stationarity = 0;
    for (const auto& g : enumerate_graphs(fam)) {
        ++graphs;
        for (int q : {2, 3})
            for (const char* ps : {"1/3", "1/2"}) {
                const Rational p = parse_rational(ps);
                const auto joint = joint_table(g, p, q);
                const auto bond = joint.bond_marginal();
                const auto spin = joint.spin_marginal();
                const auto rc = rc_measure_table(g, RCParams(p, Rational(q)));
                const auto potts = potts_table_exact(g, q, Rational(1 / (1 - p)));
                r.instances += 2;
                if (!(bond == rc)) r.fail({{"graph", describe(g)}, {"p", ps}, {"q", q}, {"marginal", "bond"}});
                if (!(spin == potts)) r.fail({{"graph", describe(g)}, {"p", ps}, {"q", q}, {"marginal", "spin"}});
                if (joint.size() <= kernel_state_cap) {
                    const auto space = joint.space();
                    const auto after_bond = apply_kernel(joint, [&](auto i, auto j) { return bond_kernel(g, space, p, i, j); });
                    const auto after_spin = apply_kernel(joint, [&](auto i, auto j) { return spin_kernel(g, space, i, j); });
                    r.instances += 2;
                    stationarity += 2;
                    if (!(after_bond == joint)) r.fail({{"graph", describe(g)}, {"p", ps}, {"q", q}, {"kernel", "bond"}});
                    if (!(after_spin == joint)) r.fail({{"graph", describe(g)}, {"p", ps}, {"q", q}, {"kernel", "spin"}});
                }
            }
    }
    r.parameters = {{"family", family_json(fam)}, {"q", {2, 3}}, {"p", {"1/3", "1/2"}}, {"kernel_state_cap", kernel_state_cap}};
    r.details = {{"graphs", graphs}, {"stationarity_checks", stationarity}};
    return r;
}

/// Swendsen-Wang estimates on the triangle at p = 1/2, q = 2 against exact values.
inline Report swendsen_wang(const Options& opt = {}) {
    Report r("Swendsen-Wang tau and connection estimates within 3 standard errors");
    const auto g = triangle();
    const Rational p(1, 2);
    const int q = 2;
    SamplerConfig cfg;
    cfg.seed = opt.seed;
    cfg.samples = opt.sw_sweeps;
    const auto stream = sw_sample(g, p.get_d(), q, cfg);
    const auto again = sw_sample(g, p.get_d(), q, cfg);
    bool deterministic = stream.size() == again.size();
    for (std::size_t i = 0; deterministic && i < stream.size(); ++i)
        deterministic = stream[i].spins == again[i].spins && stream[i].bonds.bits() == again[i].bonds.bits();
    ++r.instances;
    if (!deterministic) r.fail({{"determinism", "two runs with the same seed differ"}});

    const auto exact_conn = rc_connection_prob(g, RCParams(p, Rational(q)), 0, 1);
    const auto exact_tau = potts_two_point_exact(g, q, Rational(1 / (1 - p)), 0, 1);
    const auto est = estimate_two_point(g, stream, q, 0, 1);
    const double scale = 1.0 - 1.0 / q;
    const double tau_z = std::fabs(est.tau.value - exact_tau.get_d()) / est.tau.std_error;
    const double conn_z = std::fabs(scale * est.connection.value - scale * exact_conn.get_d()) / (scale * est.connection.std_error);
    r.instances += 2;
    r.note_deviation(est.tau.value - exact_tau.get_d());
    r.note_deviation(scale * (est.connection.value - exact_conn.get_d()));
    if (!(tau_z <= 3)) r.fail({{"estimate", "tau"}, {"z", tau_z}});
    if (!(conn_z <= 3)) r.fail({{"estimate", "(1-1/q) connection"}, {"z", conn_z}});
    r.parameters = {{"graph", describe(g)}, {"p", "1/2"}, {"q", q}, {"sweeps", cfg.samples}, {"burn_in", cfg.burn_in},
                    {"seed", cfg.seed}, {"x", 0}, {"y", 1}};
    r.details = {{"tau_exact", exact_tau.get_str()}, {"tau_estimate", est.tau.value}, {"tau_std_error", est.tau.std_error},
                 {"connection_exact", exact_conn.get_str()}, {"connection_estimate", est.connection.value},
                 {"connection_std_error", est.connection.std_error}, {"tau_z", tau_z}, {"connection_z", conn_z},
                 {"deterministic", deterministic}};
    return r;
}

/// Brute-force flow counts against the flow polynomial, parity at q = 2, and
/// orientation invariance.
inline Report flows(int max_vertices = 6, int flow_edges = 7, int parity_vertices = 5, int parity_edges = 10, int orientation_edges = 5,
                    std::uint64_t seed = 0) {
    Report r("flow counts = C_G(q); C_H(2) = [H even]; orientation invariance");
    const auto fam = family(max_vertices, flow_edges, false, false, true);
    std::size_t flow_graphs = 0, parity_graphs = 0, orientation_graphs = 0;
    for (const auto& g : enumerate_graphs(fam)) {
        ++flow_graphs;
        const auto c = flow_poly(g);
        for (int q = 2; q <= 6; ++q) {
            const Integer brute = count_flows(g, q);
            const Rational poly = eval_poly(c, Rational(q), Rational(0));
            ++r.instances;
            if (Rational(brute) != poly) {
                r.note_deviation(Rational(Rational(brute) - poly));
                r.fail({{"graph", describe(g)}, {"q", q}, {"count", brute.get_str()}, {"C_G(q)", poly.get_str()}});
            }
        }
        if (g.edge_count() <= orientation_edges) {
            ++orientation_graphs;
            for (int q : {2, 3, 4}) absorb(r, orientation_invariance_check(g, q, 20, seed));
        }
    }
    const auto parity_fam = family(parity_vertices, parity_edges, false, false, true);
    for (const auto& g : enumerate_graphs(parity_fam)) {
        ++parity_graphs;
        ++r.instances;
        const Integer c2 = count_flows(g, 2);
        if (c2 != (is_even(g) ? 1 : 0)) r.fail({{"graph", describe(g)}, {"C(2)", c2.get_str()}, {"even", is_even(g)}});
    }
    r.parameters = {{"flow_family", family_json(fam)}, {"parity_family", family_json(parity_fam)},
                    {"orientation_max_edges", orientation_edges}, {"q", "2..6"}, {"seed", seed}};
    r.details = {{"flow_graphs", flow_graphs}, {"parity_graphs", parity_graphs}, {"orientation_graphs", orientation_graphs}};
    return r;
}

/// Monte Carlo flow-correlation ratios against q tau_{beta,q} with beta = lambda q,
/// plus the compflow expansion within its tail bound.
inline Report flow_correlation(const Options& opt = {}) {
    Report r("flow-count ratios = q tau_{lambda q, q}(x,y); compflow expansion");
    FlowEvaluator ev;
    McConfig cfg;
    cfg.seed = opt.seed;
    cfg.samples = opt.mc_samples;
    auto checks = nlohmann::json::array();
    const std::vector<Multigraph> graphs = {path_graph(2), path_graph(3), triangle()};
    for (const auto& g : graphs)
        for (double lambda : {0.5, 1.0})
            for (int q : {2, 3}) {
                const double beta = lambda * q;
                const double tau = potts_two_point(g, PottsParams(beta, q), 0, g.vertex_count() - 1);
                const double exact = q * tau;
                const auto est = flow_correlation_mc(g, lambda, q, 0, g.vertex_count() - 1, cfg, &ev);
                const double z = std::fabs(est.value - exact) / est.std_error;
                ++r.instances;
                r.note_deviation(est.value - exact);
                checks.push_back({{"graph", describe(g)}, {"lambda", lambda}, {"q", q}, {"estimator", "flow"}, {"estimate", est.value},
                                  {"std_error", est.std_error}, {"exact", exact}, {"z", z}});
                if (!(z <= 3)) r.fail(checks.back());
                if (q == 2) {
                    const auto even = even_ratio_mc(g, lambda, 0, g.vertex_count() - 1, cfg);
                    const double ze = std::fabs(even.value - exact) / even.std_error;
                    ++r.instances;
                    r.note_deviation(even.value - exact);
                    checks.push_back({{"graph", describe(g)}, {"lambda", lambda}, {"q", 2}, {"estimator", "even"}, {"estimate", even.value},
                                      {"std_error", even.std_error}, {"exact", exact}, {"z", ze}});
                    if (!(ze <= 3)) r.fail(checks.back());
                }
            }

    auto comp = nlohmann::json::array();
    struct Case {
        Multigraph g;
        int q;
        double lambda;
    };
    const std::vector<Case> cases = {{Multigraph(2, {}), 2, 1.0}, {path_graph(2), 2, 1.0}, {triangle(), 3, 0.5}, {path_graph(3), 3, 1.0}};
    for (const auto& c : cases) {
        const double p = -std::expm1(-c.lambda * c.q);
        const auto res = compflow_identity(c.g, p, c.q, std::nullopt, 1e-8, 20'000'000, &ev);
        absorb(r, res.report);
        comp.push_back({{"graph", describe(c.g)}, {"q", c.q}, {"lambda", c.lambda}, {"m_max", res.m_max}, {"tail_bound", res.tail_bound},
                        {"pass", res.report.pass}});
        if (!(res.tail_bound <= 1e-8)) r.fail({{"graph", describe(c.g)}, {"tail_bound", res.tail_bound}});
    }
    r.parameters = {{"samples", cfg.samples}, {"seed", cfg.seed}, {"beta", "lambda q"}};
    r.details = {{"mc_checks", checks}, {"compflow", comp}};
    return r;
}

inline std::vector<std::array<Rational, 4>> comparison_grid() {
    // (p, q, p', q') with q' >= q, q' >= 1.
    std::vector<std::array<Rational, 4>> out;
    auto r = [](const char* s) { return parse_rational(s); };
    const char* ps[] = {"1/4", "1/2", "3/4"};
    const std::pair<const char*, const char*> qs[] = {{"1", "2"}, {"1/2", "1"}, {"2", "3"}, {"1", "1"}};
    for (const auto& [q, q2] : qs)
        for (const char* p : ps)
            for (const char* p2 : {"1/5", "1/2", "4/5"}) out.push_back({r(p), r(q), r(p2), r(q2)});
    return out;
}

/// Comparison inequalities, positive association, and the negative-association
/// implication chain on graphs with at most 4 edges; Feder-Mihail on connected
/// graphs with at most 5 edges. Isolated vertices do not change bond measures,
/// so 2|E| vertices cover every graph.
inline Report ordering_association(int max_edges = 4, int ust_edges = 5, std::uint64_t seed = 0) {
    Report r("comparison inequalities, positive association, NA chain, UST NA");
    const auto fam = family(2 * max_edges, max_edges, false, false, true);
    std::size_t graphs = 0, comparisons = 0, fkg = 0, chains = 0, ust = 0;
    const char* fkg_p[] = {"1/4", "1/2", "3/4"};
    const char* fkg_q[] = {"1", "3/2", "2", "4"};
    for (const auto& g : enumerate_graphs(fam)) {
        if (g.edge_count() == 0) continue;
        ++graphs;
        for (const auto& [p, q, p2, q2] : comparison_grid()) {
            auto part = comparison_check(g, p, q, p2, q2);
            comparisons += part.instances;
            absorb(r, part);
        }
        for (const char* p : fkg_p)
            for (const char* q : fkg_q) {
                ++fkg;
                absorb(r, fkg_check(g, parse_rational(p), parse_rational(q), 100, seed));
            }
        for (const char* p : {"1/3", "1/2"})
            for (const char* q : {"1/2", "1", "2"}) {
                auto na = negative_association_checks(rc_measure_table(g, RCParams(parse_rational(p), parse_rational(q))));
                ++chains;
                ++r.instances;
                if (!na.chain_consistent) r.fail({{"graph", describe(g)}, {"p", p}, {"q", q}, {"na", to_json_value(na)}});
                // Product measures have the disjoint occurrence property.
                if (std::string(q) == "1" && !na.disjoint_occurrence.value_or(true))
                    r.fail({{"graph", describe(g)}, {"p", p}, {"q", q}, {"disjoint_occurrence", false}});
            }
    }
    const auto ust_fam = family(ust_edges + 1, ust_edges, true);
    for (const auto& g : enumerate_graphs(ust_fam)) {
        if (g.edge_count() == 0) continue;
        ++ust;
        absorb(r, ust_feder_mihail_check(g));
    }
    r.parameters = {{"family", family_json(fam)}, {"ust_family", family_json(ust_fam)}, {"fkg_p", fkg_p}, {"fkg_q", fkg_q},
                    {"comparison_grid_size", comparison_grid().size()}, {"seed", seed}};
    r.details = {{"graphs", graphs}, {"comparison_checks", comparisons}, {"fkg_runs", fkg}, {"na_chain_checks", chains}, {"ust_graphs", ust}};
    return r;
}

/// Positive association searched at q < 1, where it may fail.
inline Report fkg_below_one(int max_edges = 4, std::uint64_t seed = 0) {
    Report r("positive association search at q < 1");
    r.informational = true;
    const auto fam = family(2 * max_edges, max_edges, false, false, true);
    for (const auto& g : enumerate_graphs(fam)) {
        if (g.edge_count() == 0) continue;
        for (const char* p : {"1/4", "1/2", "3/4"})
            for (const char* q : {"1/10", "1/2"}) {
                auto part = fkg_check(g, parse_rational(p), parse_rational(q), 20, seed);
                r.instances += part.instances;
                if (!part.pass) r.note({{"graph", describe(g)}, {"p", p}, {"q", q}, {"witness", part.witnesses.front()}});
            }
    }
    r.pass = r.witnesses.empty();
    r.parameters = {{"family", family_json(fam)}, {"seed", seed}};
    return r;
}

inline Report q_limits(std::vector<Multigraph> graphs = {triangle(), cycle_graph(4)}) {
    Report r("q -> 0 limits: UCS, UST, USF");
    auto runs = nlohmann::json::array();
    for (const auto& g : graphs)
        for (auto regime : {LimitRegime::ucs, LimitRegime::ust, LimitRegime::usf}) {
            auto part = q_to_zero_limit_check(g, regime);
            absorb(r, part);
            runs.push_back(nlohmann::json(part));
        }
    r.details = {{"runs", runs}};
    return r;
}

inline Report zero_temperature() {
    Report r("zero temperature: Z_P -> chi_G(q); frustration");
    absorb(r, zero_temperature_check(triangle(), 3));
    absorb(r, zero_temperature_check(path_graph(2), 2));
    const auto frustrated = ground_states(triangle(), 2, {-1, -1, -1});
    const auto proper = ground_states(triangle(), 3, {-1, -1, -1});
    r.instances += 2;
    if (!frustrated.frustrated) r.fail({{"graph", "triangle"}, {"q", 2}, {"expected", "frustrated"}});
    if (proper.frustrated || proper.colourings.size() != 6) r.fail({{"graph", "triangle"}, {"q", 3}, {"ground_states", proper.colourings.size()}});
    r.details = {{"triangle_q2_frustrated", frustrated.frustrated}, {"triangle_q3_ground_states", proper.colourings.size()}};
    return r;
}

inline Report complete_graph(double q = 2, double lambda = 1, std::vector<int> ns = {4, 8, 12, 14}) {
    Report r("complete-graph asymptotics");
    r.instances += 2;
    const double lc = kn::lambda_c(2);
    if (lc != 2.0) r.fail({{"lambda_c(2)", lc}});
    const double eta = kn::eta(1.0, 2.0);
    const double expected = std::log(2.0) - 0.25;
    r.note_deviation(eta - expected);
    if (!(std::fabs(eta - expected) <= 1e-12)) r.fail({{"eta(1,2)", eta}, {"expected", expected}});
    auto conv = kn::convergence_report(q, lambda, ns);
    absorb(r, conv);
    r.details = {{"lambda_c(2)", lc}, {"eta(1,2)", eta}, {"convergence", nlohmann::json(conv)}};
    return r;
}

inline Report forest_conjecture(int max_edges = 6) {
    std::vector<Multigraph> graphs;
    for (auto& g : enumerate_graphs(family(max_edges + 1, max_edges, true)))
        if (g.edge_count() > 0) graphs.push_back(std::move(g));
    auto r = conjecture_forest_scan(graphs);
    r.parameters = {{"family", family_json(family(max_edges + 1, max_edges, true))}};
    return r;
}

inline Report simon_scan(std::vector<Rational> qs = {Rational(1), Rational(3, 2), Rational(2)}, int max_vertices = 5,
                         std::vector<Rational> ps = {Rational(1, 4), Rational(1, 2), Rational(3, 4)}, int max_separator = 4) {
    Report r("Simon inequality scan");
    const auto fam = family(max_vertices, max_vertices * (max_vertices - 1) / 2, true, true);
    bool gating = false;
    std::size_t graphs = 0;
    for (const auto& q : qs) gating = gating || q == 1 || q == 2;
    auto per_q = nlohmann::json::object();
    for (const auto& q : qs) {
        std::size_t violations = 0, instances = 0;
        for (const auto& g : enumerate_graphs(fam)) {
            if (q == qs.front()) ++graphs;
            for (const auto& p : ps)
                for (int x = 0; x < g.vertex_count(); ++x)
                    for (int z = x + 1; z < g.vertex_count(); ++z) {
                        auto part = simon_check(g, p, q, x, z, max_separator);
                        instances += part.instances;
                        if (!part.pass) ++violations;
                        absorb(r, part);
                    }
        }
        per_q[q.get_str()] = {{"instances", instances}, {"violating_runs", violations}};
    }
    r.informational = !gating;
    r.parameters = {{"family", family_json(fam)}, {"separator_size_cap", max_separator}};
    r.details = {{"graphs", graphs}, {"per_q", per_q}};
    return r;
}

} // namespace rcm::suites
