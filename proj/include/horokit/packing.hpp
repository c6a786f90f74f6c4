#pragma once

// Optimal horoball configurations, their orbits under the reflection group,
// and packing verification.

#include "horokit/coxeter.hpp"
#include "horokit/horoball.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace horokit {

class ConfigurationError : public NumericError {
  public:
    using NumericError::NumericError;
};

class ParameterError : public Error {
  public:
    using Error::Error;
};

enum class PackingCase { BF336, KS336, Balanced436, Maximal436 };

inline const char* to_string(PackingCase c) {
    switch (c) {
    case PackingCase::BF336: return "bf";
    case PackingCase::KS336: return "ks";
    case PackingCase::Balanced436: return "balanced";
    case PackingCase::Maximal436: return "maximal";
    }
    return "?";
}

inline DomainKind domain_kind(PackingCase c) {
    return (c == PackingCase::BF336 || c == PackingCase::KS336) ? DomainKind::Tetra336 : DomainKind::Cube436;
}

inline DomainKind parse_tiling(const std::string& t) {
    if (t == "336")
        return DomainKind::Tetra336;
    if (t == "436")
        return DomainKind::Cube436;
    throw ParameterError("unknown tiling '" + t + "' (expected 336 or 436)");
}

/// Case name for the given tiling: bf, ks (336) or balanced, maximal (436).
inline PackingCase parse_case(DomainKind tiling, const std::string& name) {
    if (tiling == DomainKind::Tetra336) {
        if (name == "bf")
            return PackingCase::BF336;
        if (name == "ks")
            return PackingCase::KS336;
    } else {
        if (name == "balanced")
            return PackingCase::Balanced436;
        if (name == "maximal")
            return PackingCase::Maximal436;
    }
    throw ParameterError("case '" + name + "' is not defined for tiling " + to_string(tiling));
}

struct PackingConfig {
    FundamentalDomain domain;
    std::vector<Horoball> assignments;
    PackingCase packing_case;
    /// Human-readable record of every solved constant.
    std::vector<std::string> derivation_log;
};

namespace detail {

inline std::string format_constant(const char* label, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s = %.17g", label, v);
    return buf;
}

/// Smallest depth d in [lo, hi] with margin(d) >= 0, for a margin that is
/// non-decreasing in d. Returns the upper end of the final bracket, so the
/// result always satisfies the constraint.
template <class F>
double bisect_depth(F margin, double tol = 1e-12, double lo = -40.0, double hi = 40.0) {
    if (margin(lo) >= 0.0)
        throw ConfigurationError("depth bisection: constraint holds for arbitrarily large balls");
    if (margin(hi) < 0.0)
        throw ConfigurationError("depth bisection: constraint fails for arbitrarily small balls");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (margin(mid) >= 0.0 ? hi : lo) = mid;
    }
    if (hi - lo > tol)
        throw ConfigurationError("depth bisection did not converge");
    return hi;
}

/// Minimum horosphere value of h over the facets of d not incident with vertex v.
inline double admissibility_margin(const FundamentalDomain& d, int v, const Horoball& h) {
    double m = std::numeric_limits<double>::infinity();
    for (int f = 0; f < static_cast<int>(d.facet_count()); ++f)
        if (!d.facet_contains(f, v))
            m = std::min(m, plane_minimum(h, d.facet_forms[static_cast<std::size_t>(f)]).first);
    return m;
}

inline Vec3 vertex_axis(const FundamentalDomain& d, int v) {
    return d.vertices[static_cast<std::size_t>(v)].canonical().klein().normalized();
}

inline double min_gap(const Horoball& h, const std::vector<std::optional<Horoball>>& placed) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : placed)
        if (p)
            m = std::min(m, chord_gap(h, *p));
    return m;
}

} // namespace detail

/// Minimum over non-incident facets of the horosphere value; non-negative
/// iff the ball at vertex v meets the cell only in its vertex cusp.
inline double admissibility_margin(const PackingConfig& c, int v) {
    return detail::admissibility_margin(c.domain, v, c.assignments[static_cast<std::size_t>(v)]);
}

inline PackingConfig configuration_from_s(PackingCase pc, const std::vector<double>& s) {
    PackingConfig c{builtin_domain(domain_kind(pc)), {}, pc, {}};
    if (s.size() != c.domain.vertex_count())
        throw ParameterError("expected " + std::to_string(c.domain.vertex_count()) + " s-values, got " +
                             std::to_string(s.size()));
    for (std::size_t v = 0; v < s.size(); ++v)
        c.assignments.emplace_back(c.domain.vertices[v], s[v]);
    return c;
}

inline PackingConfig fundamental_configuration(PackingCase pc) {
    switch (pc) {
    case PackingCase::BF336: {
        auto c = configuration_from_s(pc, {0.0, 3.0 / 5, 3.0 / 5, 3.0 / 5});
        c.derivation_log.push_back("s = (0, 3/5, 3/5, 3/5)");
        return c;
    }
    case PackingCase::KS336: {
        auto c = configuration_from_s(pc, {0.5, 1.0 / 7, 1.0 / 7, 1.0 / 7});
        c.derivation_log.push_back("s = (1/2, 1/7, 1/7, 1/7)");
        return c;
    }
    case PackingCase::Balanced436: {
        const FundamentalDomain d = builtin_domain(DomainKind::Cube436);
        const std::array<int, 4> big{0, 4, 5, 6}, small{1, 2, 3, 7};
        // larger balls: equal size, pairwise tangent
        const Vec3 n0 = detail::vertex_axis(d, big[0]), n1 = detail::vertex_axis(d, big[1]);
        const double d_big = detail::bisect_depth([&](double x) {
            return chord_gap(Horoball::from_depth(n0, x), Horoball::from_depth(n1, x));
        });
        std::vector<std::optional<Horoball>> placed(8);
        for (int v : big)
            placed[static_cast<std::size_t>(v)] = Horoball::from_depth(detail::vertex_axis(d, v), d_big);
        // smaller balls: each the largest one that overlaps nothing
        std::vector<std::optional<Horoball>> bigs = placed;
        for (int v : small) {
            const Vec3 n = detail::vertex_axis(d, v);
            const double dv = detail::bisect_depth(
                [&](double x) { return detail::min_gap(Horoball::from_depth(n, x), bigs); });
            placed[static_cast<std::size_t>(v)] = Horoball::from_depth(n, dv);
        }
        PackingConfig c{d, {}, pc, {}};
        for (auto& p : placed)
            c.assignments.push_back(*p);
        c.derivation_log.push_back(
            "larger balls on vertices {0,4,5,6}: pairwise tangent, equal size (bisection on chord gap, tol 1e-12)");
        c.derivation_log.push_back(
            "smaller balls on vertices {1,2,3,7}: largest without overlap (bisection on chord gap, tol 1e-12)");
        c.derivation_log.push_back(detail::format_constant("s_large", c.assignments[0].s()));
        c.derivation_log.push_back(detail::format_constant("s_small", c.assignments[1].s()));
        return c;
    }
    case PackingCase::Maximal436: {
        const FundamentalDomain d = builtin_domain(DomainKind::Cube436);
        const std::size_t n = d.vertex_count();
        std::vector<std::optional<Horoball>> placed(n);
        const Vec3 a0 = detail::vertex_axis(d, 0);
        std::vector<int> order(n);
        for (std::size_t v = 0; v < n; ++v)
            order[v] = static_cast<int>(v);
        std::stable_sort(order.begin() + 1, order.end(), [&](int a, int b) {
            return detail::vertex_axis(d, a).dot(a0) > detail::vertex_axis(d, b).dot(a0);
        });
        PackingConfig c{d, {}, pc, {}};
        for (int v : order) {
            const Vec3 ax = detail::vertex_axis(d, v);
            const double dv = detail::bisect_depth([&](double x) {
                const Horoball h = Horoball::from_depth(ax, x);
                return std::min(detail::admissibility_margin(d, v, h), detail::min_gap(h, placed));
            });
            placed[static_cast<std::size_t>(v)] = Horoball::from_depth(ax, dv);
        }
        for (auto& p : placed)
            c.assignments.push_back(*p);
        c.derivation_log.push_back("vertex 0: largest ball meeting the cell only in its vertex cusp "
                                   "(bisection on facet margin, tol 1e-12)");
        c.derivation_log.push_back("remaining vertices, nearest to vertex 0 first: largest ball without "
                                   "overlap that also meets the cell only in its vertex cusp");
        for (std::size_t v = 0; v < n; ++v)
            c.derivation_log.push_back(
                detail::format_constant(("s_" + std::to_string(v)).c_str(), c.assignments[v].s()));
        return c;
    }
    }
    throw ParameterError("unknown packing case");
}

/// Volume of each vertex ball inside the cell.
inline std::vector<double> piece_volumes(const PackingConfig& c) {
    std::vector<double> out;
    for (int v = 0; v < static_cast<int>(c.domain.vertex_count()); ++v) {
        const auto nb = vertex_neighbors(c.domain, v);
        if (nb.size() != 3)
            throw DomainError("vertex cusp is not trihedral");
        out.push_back(piece_volume_tetra(c.assignments[static_cast<std::size_t>(v)],
                                         {c.domain.vertices[static_cast<std::size_t>(nb[0])],
                                          c.domain.vertices[static_cast<std::size_t>(nb[1])],
                                          c.domain.vertices[static_cast<std::size_t>(nb[2])]}));
    }
    return out;
}

/// Type id per vertex: balls share a type iff their pieces in the cell have
/// equal volume (relative tolerance `tol`). Ids are numbered by first vertex.
inline std::vector<int> horoball_types(const PackingConfig& c, double tol = 1e-9) {
    const auto vols = piece_volumes(c);
    std::vector<double> reps;
    std::vector<int> ids;
    for (double v : vols) {
        int id = -1;
        for (std::size_t k = 0; k < reps.size(); ++k)
            if (std::abs(v - reps[k]) <= tol * std::max(1.0, std::abs(reps[k])))
                id = static_cast<int>(k);
        if (id < 0) {
            id = static_cast<int>(reps.size());
            reps.push_back(v);
        }
        ids.push_back(id);
    }
    return ids;
}

struct OrbitRecord {
    std::vector<int> word;
    Isometry isometry;
    int crown;
};

struct OrbitHoroball {
    Horoball ball;
    int type_id;
    int crown;
    std::vector<int> word;
    int source_vertex;
};

struct Orbit {
    std::vector<OrbitRecord> records;
    std::vector<OrbitHoroball> horoballs;
};

namespace detail {

/// Tolerance-based lookup of normalized isometries, bucketed by M00.
class IsometryIndex {
  public:
    explicit IsometryIndex(double tol) : tol_(tol) {}

    bool contains(const Mat4& m) const {
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        const double key = m(0, 0);
        for (auto it = index_.lower_bound(key - tol_ * scale); it != index_.end() && it->first <= key + tol_ * scale;
             ++it)
            if ((mats_[it->second] - m).cwiseAbs().maxCoeff() <= tol_ * scale)
                return true;
        return false;
    }

    void insert(const Mat4& m) {
        index_.emplace(m(0, 0), mats_.size());
        mats_.push_back(m);
    }

  private:
    double tol_;
    std::vector<Mat4> mats_;
    std::multimap<double, std::size_t> index_;
};

/// Tolerance-based lookup of horoballs, bucketed by a generic projection of
/// the ideal centre.
class HoroballIndex {
  public:
    explicit HoroballIndex(double tol) : tol_(tol) {}

    bool contains(const Horoball& h) const {
        const double key = project(h.axis());
        for (auto it = index_.lower_bound(key - 2 * tol_); it != index_.end() && it->first <= key + 2 * tol_; ++it) {
            const Horoball& o = balls_[it->second];
            if ((o.axis() - h.axis()).norm() <= tol_ &&
                std::abs(o.depth() - h.depth()) <= tol_ * std::max(1.0, std::abs(h.depth())))
                return true;
        }
        return false;
    }

    void insert(const Horoball& h) {
        index_.emplace(project(h.axis()), balls_.size());
        balls_.push_back(h);
    }

  private:
    static double project(const Vec3& n) { return n.dot(Vec3(0.5773502691896258, 0.3090169943749474, 0.7557613140761707)); }

    double tol_;
    std::vector<Horoball> balls_;
    std::multimap<double, std::size_t> index_;
};

} // namespace detail

/// Breadth-first expansion over reduced words up to length `crowns`.
/// Appending generator j to a word right-multiplies its isometry by g_j.
inline Orbit expand_orbit(const PackingConfig& config, int crowns, const GeneratorSet& gens, double tol = 1e-9) {
    if (crowns < 0)
        throw ParameterError("crowns must be non-negative");
    const auto types = horoball_types(config);
    std::vector<Mat4> g;
    for (const auto& x : gens.generators)
        g.push_back(x.normalized().matrix);

    Orbit orbit;
    detail::IsometryIndex isos(tol);
    detail::HoroballIndex balls(tol);

    auto add_isometry = [&](OrbitRecord rec) {
        isos.insert(rec.isometry.matrix);
        for (std::size_t v = 0; v < config.assignments.size(); ++v) {
            const Horoball h = rec.crown == 0 ? config.assignments[v] : transform(config.assignments[v], rec.isometry);
            if (balls.contains(h))
                continue;
            balls.insert(h);
            orbit.horoballs.push_back({h, types[v], rec.crown, rec.word, static_cast<int>(v)});
        }
        orbit.records.push_back(std::move(rec));
    };

    add_isometry({{}, Isometry::identity(), 0});
    std::size_t frontier_begin = 0;
    for (int crown = 1; crown <= crowns; ++crown) {
        const std::size_t frontier_end = orbit.records.size();
        for (std::size_t r = frontier_begin; r < frontier_end; ++r) {
            for (int j = 0; j < static_cast<int>(g.size()); ++j) {
                const OrbitRecord& parent = orbit.records[r];
                if (!parent.word.empty() && parent.word.back() == j)
                    continue;
                std::vector<int> w = parent.word;
                w.push_back(j);
                const Isometry m = Isometry{parent.isometry.matrix * g[static_cast<std::size_t>(j)], w}.normalized();
                if (isos.contains(m.matrix))
                    continue;
                add_isometry({std::move(w), m, crown});
            }
        }
        frontier_begin = frontier_end;
    }
    return orbit;
}

struct TangencyEdge {
    std::size_t a;
    std::size_t b;
    ProjectivePoint point;
};

struct PackingReport {
    std::size_t disjoint = 0;
    std::size_t tangent = 0;
    std::size_t overlapping = 0;
    /// Largest overlap depth found (0 if none).
    double worst_overlap = 0.0;
    std::vector<TangencyEdge> edges;
    std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs;
    bool valid() const { return overlapping == 0; }
};

/// Classifies every unordered pair of horoballs.
inline PackingReport verify_packing(const std::vector<Horoball>& balls, double tol = 1e-9) {
    PackingReport rep;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            TangencyResult t;
            try {
                t = tangency(balls[i], balls[j], tol);
            } catch (const DomainError&) {
                t = Overlapping{std::numeric_limits<double>::infinity()};
            }
            if (const auto* x = std::get_if<Tangent>(&t)) {
                ++rep.tangent;
                rep.edges.push_back({i, j, x->point});
            } else if (const auto* o = std::get_if<Overlapping>(&t)) {
                ++rep.overlapping;
                rep.worst_overlap = std::max(rep.worst_overlap, o->depth);
                rep.overlapping_pairs.emplace_back(i, j);
            } else {
                ++rep.disjoint;
            }
        }
    }
    return rep;
}

inline std::vector<Horoball> balls_of(const Orbit& o) {
    std::vector<Horoball> out;
    out.reserve(o.horoballs.size());
    for (const auto& h : o.horoballs)
        out.push_back(h.ball);
    return out;
}

inline PackingReport verify_packing(const Orbit& orbit, double tol = 1e-9) { return verify_packing(balls_of(orbit), tol); }

struct TangencyGraph {
    std::size_t node_count = 0;
    std::vector<TangencyEdge> edges;
    std::vector<int> degrees;
    /// degree -> number of nodes with that degree
    std::map<int, std::size_t> degree_histogram;
};

inline TangencyGraph tangency_graph(std::size_t node_count, const std::vector<TangencyEdge>& edges) {
    TangencyGraph g{node_count, edges, std::vector<int>(node_count, 0), {}};
    for (const auto& e : edges) {
        ++g.degrees[e.a];
        ++g.degrees[e.b];
    }
    for (int d : g.degrees)
        ++g.degree_histogram[d];
    return g;
}

inline TangencyGraph tangency_graph(const Orbit& orbit, double tol = 1e-9) {
    return tangency_graph(orbit.horoballs.size(), verify_packing(orbit, tol).edges);
}

} // namespace horokit
