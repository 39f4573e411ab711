#pragma once

// Twig detection, bark computation, superfluous exceptional components, and
// the almost-/strongly-minimalization procedures, all relative to tracked
// curves. A twig is a chain of boundary components meeting the rest of the
// boundary in a single point at one end; it is admissible when every
// component is rational with self-intersection <= -2 and the intersection
// matrix is negative definite. The bark is the unique effective Q-divisor
// supported on the maximal admissible rational twigs with
// (K + D - Bk) . Z = 0 on every twig component.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "logsurf/model.hpp"

namespace logsurf {

struct Twig {
    std::vector<std::string> components; // tip first, attachment end last
    std::string attachment;              // boundary curve met by the last component
};

struct PeelingResult {
    QDivisor dsharp;
    QDivisor bark;
    std::vector<Twig> twigs;

    std::vector<std::string> bark_support() const {
        std::vector<std::string> out;
        for (const auto& t : twigs)
            out.insert(out.end(), t.components.begin(), t.components.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

namespace detail {

inline bool twig_eligible(const SurfaceModel& m, const Curve& c) {
    return c.pa == 0 && m.lattice.self_intersection(c.cls) <= -2;
}

} // namespace detail

/// All maximal admissible rational twigs, ordered by tip name. Errors out
/// when the whole boundary is an admissible rod or fork, which cannot happen
/// for an affine completion (the boundary divisor must be big).
inline std::vector<Twig> maximal_admissible_twigs(const SurfaceModel& m) {
    require_valid(m);
    DualGraph g = boundary_dual_graph(m);
    if (!g.connected())
        throw ValidationError("boundary is not connected");
    const std::size_t n = g.vertices.size();

    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges) {
        // Multiplicity matters for valence: an edge of weight w counts w times.
        for (Integer k = 0; k < e.weight; ++k) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
    }

    // Rod / fork guard: a connected boundary that is a chain, or a tree with a
    // single valence-3 branch vertex, made of admissible rational components.
    if (n > 0) {
        bool all_admissible = true;
        for (const auto& name : g.vertices) {
            const Curve& c = m.curve(name);
            if (!(c.pa == 0 && m.lattice.self_intersection(c.cls) <= -2)) { all_admissible = false; break; }
        }
        if (all_admissible) {
            std::size_t leaves = 0, branch3 = 0, big = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (adj[v].size() <= 1) ++leaves;
                else if (adj[v].size() == 3) ++branch3;
                else if (adj[v].size() > 3) ++big;
            }
            bool tree = g.edges.size() + 1 == n;
            bool rod = tree && branch3 == 0 && big == 0;
            bool fork = tree && branch3 == 1 && big == 0;
            std::vector<DivisorClass> all;
            for (const auto& name : g.vertices) all.push_back(m.curve(name).cls);
            if ((rod || fork) && m.lattice.is_negative_definite(all))
                throw NotAffineCompletion(rod ? "the boundary is an admissible rational rod"
                                              : "the boundary is an admissible rational fork");
        }
    }

    auto index_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < n; ++i)
            if (g.vertices[i] == name) return i;
        throw Error("internal: vertex lookup");
    };
    (void)index_of;

    std::vector<Twig> out;
    std::set<std::size_t> used;
    // Grow chains from admissible valence-1 tips.
    std::vector<std::size_t> tips;
    for (std::size_t v = 0; v < n; ++v)
        if (adj[v].size() == 1 && detail::twig_eligible(m, m.curve(g.vertices[v])))
            tips.push_back(v);
    std::sort(tips.begin(), tips.end(),
              [&](std::size_t a, std::size_t b) { return g.vertices[a] < g.vertices[b]; });

    for (std::size_t tip : tips) {
        if (used.count(tip)) continue;
        std::vector<std::size_t> chain{tip};
        std::size_t prev = tip, cur = adj[tip][0];
        // Extend while the next vertex continues a chain of admissible pieces.
        while (true) {
            if (used.count(cur)) break;
            if (adj[cur].size() != 2) break; // branch vertex or other tip: attachment
            if (!detail::twig_eligible(m, m.curve(g.vertices[cur]))) break;
            if (adj[cur][0] == adj[cur][1]) break; // meets one neighbor twice
            std::size_t nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
            chain.push_back(cur);
            prev = cur;
            cur = nxt;
        }
        // cur is the attachment candidate; the chain must meet it exactly once.
        if (m.pairing(g.vertices[chain.back()], g.vertices[cur]) != 1) {
            // Attachment with multiplicity >= 2: the last chain element cannot
            // be in a twig ending there; shrink.
            if (chain.size() == 1) continue;
            cur = chain.back();
            chain.pop_back();
        }
        std::vector<DivisorClass> classes;
        for (std::size_t v : chain) classes.push_back(m.curve(g.vertices[v]).cls);
        if (!m.lattice.is_negative_definite(classes)) continue; // not admissible
        Twig t;
        for (std::size_t v : chain) t.components.push_back(g.vertices[v]);
        t.attachment = g.vertices[cur];
        for (std::size_t v : chain) used.insert(v);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(),
              [](const Twig& a, const Twig& b) { return a.components.front() < b.components.front(); });
    return out;
}

/// Solve the peeling system: for twig components Z_1..Z_r,
/// sum_i b_i (Z_i . Z_j) = (K + D) . Z_j. The system is block-diagonal across
/// twigs (distinct twigs never touch) and each block is the tridiagonal
/// intersection matrix of a chain with unit off-diagonals, solved by a
/// forward / backward sweep along the chain. Negative definiteness, checked
/// per block, keeps every pivot nonzero. Verifies every PeelingResult
/// invariant before returning.
inline PeelingResult compute_bark(const SurfaceModel& m) {
    PeelingResult result;
    result.twigs = maximal_admissible_twigs(m);

    std::vector<std::string> support;
    for (const auto& t : result.twigs)
        support.insert(support.end(), t.components.begin(), t.components.end());

    QDivisor d = m.boundary_divisor();
    DivisorClass kd = m.lattice.canonical_class() + m.class_of(d);

    for (const auto& twig : result.twigs) {
        const std::size_t r = twig.components.size();
        QVector piv(r), red(r);
        for (std::size_t i = 0; i < r; ++i) {
            const DivisorClass& zi = m.curve(twig.components[i]).cls;
            piv[i] = m.lattice.self_intersection(zi);
            red[i] = m.lattice.pairing(kd, zi);
            if (i + 1 < r && m.pairing(twig.components[i], twig.components[i + 1]) != 1)
                throw InternalConsistencyError("twig chain adjacency is not simple");
            if (i > 0) {
                if (piv[i - 1] == 0) throw InternalConsistencyError("singular peeling block");
                Rational w = Rational(1) / piv[i - 1];
                piv[i] -= w;
                red[i] -= w * red[i - 1];
            }
        }
        if (piv[r - 1] == 0) throw InternalConsistencyError("singular peeling block");
        QVector b(r);
        b[r - 1] = red[r - 1] / piv[r - 1];
        for (std::size_t i = r - 1; i-- > 0;) b[i] = (red[i] - b[i + 1]) / piv[i];
        for (std::size_t i = 0; i < r; ++i) {
            if (!(b[i] > 0 && b[i] < 1))
                throw InternalConsistencyError("bark coefficient of '" + twig.components[i] +
                                               "' = " + to_string(b[i]) + " is not in (0,1)");
            result.bark.set(twig.components[i], b[i]);
        }
    }
    // Distinct twigs must not touch, or the blocks would not be the whole
    // system.
    for (std::size_t a = 0; a < result.twigs.size(); ++a)
        for (std::size_t b = a + 1; b < result.twigs.size(); ++b)
            for (const auto& x : result.twigs[a].components)
                for (const auto& y : result.twigs[b].components)
                    if (m.pairing(x, y) != 0)
                        throw InternalConsistencyError("distinct twigs touch: " + x + ", " + y);
    result.dsharp = d - result.bark;

    // Invariants: dsharp + bark = D, bark coefficients in (0,1), hence
    // ceil(dsharp) = D; and (K + dsharp) . Z = 0 on every twig component.
    for (const auto& [name, b] : result.bark.terms) {
        if (!(b > 0 && b < 1))
            throw InternalConsistencyError("bark coefficient of '" + name + "' = " + to_string(b) +
                                           " is not in (0,1)");
    }
    DivisorClass nef = m.lattice.canonical_class() + m.class_of(result.dsharp);
    for (const auto& name : support)
        if (m.lattice.pairing(nef, m.curve(name).cls) != 0)
            throw InternalConsistencyError("(K + D#) . " + name + " != 0 after peeling");
    return result;
}

/// A boundary (-1)-curve E with E.(D-E) <= 2 that, in the equality case,
/// meets two distinct components once each. Deterministic: first by name.
inline std::optional<std::string> find_superfluous_exceptional(const SurfaceModel& m) {
    require_valid(m);
    std::vector<std::string> names = m.boundary_names();
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        const Curve& e = m.curve(name);
        if (e.pa != 0 || m.lattice.self_intersection(e.cls) != -1) continue;
        Rational total(0);
        std::vector<Rational> met;
        for (const auto& c : m.curves) {
            if (!c.in_boundary || c.name == name) continue;
            Rational w = m.lattice.pairing(e.cls, c.cls);
            if (w > 0) { total += w; met.push_back(w); }
        }
        if (total > 2) continue;
        if (total == 2 && !(met.size() == 2 && met[0] == 1 && met[1] == 1))
            continue; // meets one component twice: contracting would break SNC
        return name;
    }
    return std::nullopt;
}

struct MinimalizationResult {
    SurfaceModel model;
    std::vector<std::string> contracted; // ordered log
};

namespace detail {

/// Contract (-1)-curves among `watch` that meet at most two boundary
/// components, repeating on their images until none applies. Names are
/// resolved against the evolving model.
inline void contract_collapsible(SurfaceModel& m, std::set<std::string> watch,
                                 std::vector<std::string>& log) {
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::string> sorted(watch.begin(), watch.end());
        std::sort(sorted.begin(), sorted.end());
        for (const auto& name : sorted) {
            const Curve* c = m.find_curve(name);
            if (!c) { watch.erase(name); continue; }
            if (c->pa != 0 || m.lattice.self_intersection(c->cls) != -1) continue;
            int boundary_neighbors = 0;
            for (const auto& other : m.curves) {
                if (!other.in_boundary || other.name == name) continue;
                if (m.lattice.pairing(c->cls, other.cls) > 0) ++boundary_neighbors;
            }
            if (boundary_neighbors > 2) continue;
            m = contract(m, name);
            log.push_back(name);
            watch.erase(name);
            progress = true;
            break;
        }
    }
}

} // namespace detail

/// Almost-minimalization: repeatedly (a) contract superfluous exceptional
/// components, (b) peel, (c) contract a tracked (-1)-curve U outside the
/// boundary with U.(K + D#) < 0 and U + Supp(Bk) negative definite, together
/// with the subsequently contractible components of the twig it meets.
/// Candidate search is restricted to tracked curves; ties break by name.
inline MinimalizationResult almost_minimalize(const SurfaceModel& input) {
    require_valid(input);
    if (!input.affine_claimed)
        throw ValidationError("almost-minimalization requires an affine-claimed model");
    MinimalizationResult res{input, {}};
    for (std::size_t guard = input.lattice.rank() + 1; guard > 0; --guard) {
        // (a) superfluous exceptional components
        if (auto s = find_superfluous_exceptional(res.model)) {
            res.model = contract(res.model, *s);
            res.contracted.push_back(*s);
            continue;
        }
        // (b) bark
        PeelingResult peel = compute_bark(res.model);
        DivisorClass nef = res.model.lattice.canonical_class() + res.model.class_of(peel.dsharp);
        // (c) a contractible curve off the boundary
        std::vector<std::string> names;
        for (const auto& c : res.model.curves)
            if (!c.in_boundary) names.push_back(c.name);
        std::sort(names.begin(), names.end());
        std::optional<std::string> found;
        for (const auto& name : names) {
            const Curve& u = res.model.curve(name);
            if (u.pa != 0 || res.model.lattice.self_intersection(u.cls) != -1) continue;
            if (!(res.model.lattice.pairing(nef, u.cls) < 0)) continue;
            std::vector<std::string> set = peel.bark_support();
            set.push_back(name);
            if (!res.model.is_negative_definite(set)) continue;
            found = name;
            break;
        }
        if (!found) return res;
        // The twig U meets (it meets exactly one, through its unique boundary
        // neighbor of fractional coefficient).
        std::set<std::string> watch;
        for (const auto& t : peel.twigs) {
            bool meets = false;
            for (const auto& comp : t.components)
                if (res.model.pairing(*found, comp) > 0) meets = true;
            if (meets) watch.insert(t.components.begin(), t.components.end());
        }
        res.model = contract(res.model, *found);
        res.contracted.push_back(*found);
        detail::contract_collapsible(res.model, watch, res.contracted);
    }
    throw InternalConsistencyError("almost-minimalization did not terminate");
}

/// Strong minimalization: after almost-minimalizing, repeatedly contract a
/// tracked (-1)-curve E with E.(K + D#) = 0, E outside Supp(floor(D#)), and
/// E + Supp(Bk) negative definite, plus the subsequently contractible bark
/// components. Each step asserts E.D = E.floor(D#) = 1 beforehand and the
/// pullback identity for K + D# afterwards.
inline MinimalizationResult strongly_minimalize(const SurfaceModel& input) {
    MinimalizationResult res = almost_minimalize(input);
    for (std::size_t guard = input.lattice.rank() + 1; guard > 0; --guard) {
        PeelingResult peel = compute_bark(res.model);
        DivisorClass nef = res.model.lattice.canonical_class() + res.model.class_of(peel.dsharp);
        QDivisor floor_dsharp = peel.dsharp.floor();

        std::vector<std::string> names;
        for (const auto& c : res.model.curves) names.push_back(c.name);
        std::sort(names.begin(), names.end());
        std::optional<std::string> found;
        for (const auto& name : names) {
            const Curve& e = res.model.curve(name);
            if (e.pa != 0 || res.model.lattice.self_intersection(e.cls) != -1) continue;
            if (floor_dsharp.coeff(name) != 0) continue; // inside Supp(floor(D#))
            if (res.model.lattice.pairing(nef, e.cls) != 0) continue;
            std::vector<std::string> set = peel.bark_support();
            set.push_back(name);
            if (!res.model.is_negative_definite(set)) continue;
            found = name;
            break;
        }
        if (!found) return res;

        const Curve& e = res.model.curve(*found);
        Rational ed = res.model.lattice.pairing(e.cls, res.model.class_of(res.model.boundary_divisor()));
        Rational efl = res.model.lattice.pairing(e.cls, res.model.class_of(floor_dsharp));
        if (ed != 1 || efl != 1)
            throw InternalConsistencyError(
                "strong-minimalization invariant violated: the contracted curve must meet the "
                "boundary in exactly one coefficient-one component (E.D = " + to_string(ed) +
                ", E.floor(D#) = " + to_string(efl) + ")");

        Rational nef_sq_before = res.model.lattice.self_intersection(nef);
        DivisorClass nef_before = nef;

        std::vector<std::vector<DivisorClass>> sections;
        sections.push_back(contraction_section(res.model, *found));
        SurfaceModel next = contract(res.model, *found);
        std::vector<std::string> sublog{*found};
        {
            std::set<std::string> watch;
            for (const auto& t : peel.twigs) watch.insert(t.components.begin(), t.components.end());
            // contract_collapsible records sections as it goes
            bool progress = true;
            while (progress) {
                progress = false;
                std::vector<std::string> sorted(watch.begin(), watch.end());
                std::sort(sorted.begin(), sorted.end());
                for (const auto& nm : sorted) {
                    const Curve* c = next.find_curve(nm);
                    if (!c) { watch.erase(nm); continue; }
                    if (c->pa != 0 || next.lattice.self_intersection(c->cls) != -1) continue;
                    int bn = 0;
                    for (const auto& other : next.curves) {
                        if (!other.in_boundary || other.name == nm) continue;
                        if (next.lattice.pairing(c->cls, other.cls) > 0) ++bn;
                    }
                    if (bn > 2) continue;
                    sections.push_back(contraction_section(next, nm));
                    next = contract(next, nm);
                    sublog.push_back(nm);
                    watch.erase(nm);
                    progress = true;
                    break;
                }
            }
        }

        // Pullback identity: K + D# downstairs pulls back to K + D# upstairs,
        // and the self-intersection is unchanged.
        PeelingResult peel_after = compute_bark(next);
        DivisorClass nef_after = next.lattice.canonical_class() + next.class_of(peel_after.dsharp);
        if (next.lattice.self_intersection(nef_after) != nef_sq_before)
            throw InternalConsistencyError("(K + D#)^2 changed under strong minimalization");
        DivisorClass pulled = nef_after;
        for (auto it = sections.rbegin(); it != sections.rend(); ++it) {
            const auto& basis = *it;
            DivisorClass up = DivisorClass::zero(basis.empty() ? 0 : basis[0].rank());
            for (std::size_t i = 0; i < basis.size(); ++i) up += pulled.coeffs[i] * basis[i];
            pulled = up;
        }
        if (!(pulled == nef_before))
            throw InternalConsistencyError("pullback identity for K + D# failed under strong minimalization");

        res.model = next;
        res.contracted.insert(res.contracted.end(), sublog.begin(), sublog.end());

        // The pair stays almost minimal; re-establish and fold any residual
        // steps into the log (none are expected).
        MinimalizationResult again = almost_minimalize(res.model);
        res.model = again.model;
        res.contracted.insert(res.contracted.end(), again.contracted.begin(), again.contracted.end());
    }
    throw InternalConsistencyError("strong minimalization did not terminate");
}

} // namespace logsurf
