#pragma once

// The combinatorial avatar of an SNC pair (V, D): an intersection lattice,
// tracked curves with a boundary subset, and the blow-up / contraction
// calculus. Models are immutable values; blow_up and contract return new
// models.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "logsurf/lattice.hpp"
#include "logsurf/qdivisor.hpp"

namespace logsurf {

struct Curve {
    std::string name;
    DivisorClass cls;    // integer entries
    Rational pa;         // arithmetic genus, must match adjunction
    bool in_boundary = false;
};

enum class BaseKind { P1xP1, P2, Hirzebruch, Abstract };

struct BlowUpRecord {
    std::string exceptional_name;
    std::vector<std::string> hosts; // 0 (free point), 1 (point on curve) or 2 (intersection)
    bool boundary = true;
};

struct BaseCurveRecord {
    std::string name;
    ZVector cls;
    Rational pa;
    bool in_boundary = false;
    bool declared_after_blowups = false; // class given in the blown-up basis
};

/// Replayable construction history. Present only for models built from a
/// base-surface declaration; contraction clears it.
struct Provenance {
    BaseKind base = BaseKind::Abstract;
    int hirzebruch_n = 0;
    std::vector<BaseCurveRecord> base_curves;
    std::vector<BlowUpRecord> blowups;
};

struct Violation {
    std::string rule;
    std::string detail;
};

struct SurfaceModel {
    IntersectionLattice lattice;
    std::vector<Curve> curves;
    std::optional<Provenance> provenance;
    bool affine_claimed = false;
    std::optional<int> base_genus_hint;

    const Curve* find_curve(const std::string& name) const {
        for (const auto& c : curves)
            if (c.name == name) return &c;
        return nullptr;
    }
    const Curve& curve(const std::string& name) const {
        const Curve* c = find_curve(name);
        if (!c) throw Error("unknown curve '" + name + "'");
        return *c;
    }

    std::vector<std::string> boundary_names() const {
        std::vector<std::string> out;
        for (const auto& c : curves)
            if (c.in_boundary) out.push_back(c.name);
        return out;
    }

    Rational pairing(const std::string& a, const std::string& b) const {
        return lattice.pairing(curve(a).cls, curve(b).cls);
    }

    /// Class of a Q-divisor supported on tracked curves.
    DivisorClass class_of(const QDivisor& d) const {
        DivisorClass acc = DivisorClass::zero(lattice.rank());
        for (const auto& [name, coeff] : d.terms) acc += coeff * curve(name).cls;
        return acc;
    }

    /// The boundary divisor D as a Q-divisor (all coefficients 1).
    QDivisor boundary_divisor() const {
        QDivisor d;
        for (const auto& c : curves)
            if (c.in_boundary) d.set(c.name, Rational(1));
        return d;
    }

    bool is_negative_definite(const std::vector<std::string>& names) const {
        std::set<std::string> seen;
        std::vector<DivisorClass> classes;
        for (const auto& n : names) {
            if (!seen.insert(n).second) throw Error("duplicate curve '" + n + "' in set");
            classes.push_back(curve(n).cls);
        }
        return lattice.is_negative_definite(classes);
    }
};

// --- validation --------------------------------------------------------

struct DualGraph {
    std::vector<std::string> vertices; // boundary curves, model order
    struct Edge { std::size_t a, b; Integer weight; };
    std::vector<Edge> edges;

    bool connected() const {
        if (vertices.size() <= 1) return true;
        std::vector<std::size_t> comp(vertices.size());
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
        std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (const auto& e : edges) comp[root(e.a)] = root(e.b);
        for (std::size_t i = 1; i < comp.size(); ++i)
            if (root(i) != root(0)) return false;
        return true;
    }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (const auto& e : edges) {
            if (e.a == v) out.push_back(e.b);
            if (e.b == v) out.push_back(e.a);
        }
        return out;
    }
};

inline DualGraph boundary_dual_graph(const SurfaceModel& m) {
    DualGraph g;
    std::vector<const Curve*> bd;
    for (const auto& c : m.curves)
        if (c.in_boundary) { g.vertices.push_back(c.name); bd.push_back(&c); }
    for (std::size_t i = 0; i < bd.size(); ++i)
        for (std::size_t j = i + 1; j < bd.size(); ++j) {
            Rational w = m.lattice.pairing(bd[i]->cls, bd[j]->cls);
            if (w > 0) g.edges.push_back({i, j, numerator(w)});
        }
    return g;
}

inline std::vector<Violation> validate(const SurfaceModel& m) {
    std::vector<Violation> out;
    try {
        m.lattice.check_well_formed();
    } catch (const Error& e) {
        out.push_back({"lattice", e.what()});
        return out;
    }
    std::set<std::string> names;
    for (const auto& c : m.curves) {
        if (!names.insert(c.name).second)
            out.push_back({"duplicate curve name", c.name});
        if (c.cls.rank() != m.lattice.rank())
            out.push_back({"class rank", c.name});
        else {
            if (!c.cls.is_integral())
                out.push_back({"non-integral class", c.name});
            if (m.lattice.adjunction_pa(c.cls) != c.pa)
                out.push_back({"adjunction mismatch",
                               c.name + ": declared pa=" + to_string(c.pa) +
                                   ", adjunction gives " + to_string(m.lattice.adjunction_pa(c.cls))});
        }
    }
    if (!out.empty()) return out;

    // SNC necessary conditions on the boundary.
    std::vector<const Curve*> bd;
    for (const auto& c : m.curves)
        if (c.in_boundary) bd.push_back(&c);
    for (std::size_t i = 0; i < bd.size(); ++i)
        for (std::size_t j = i + 1; j < bd.size(); ++j) {
            Rational w = m.lattice.pairing(bd[i]->cls, bd[j]->cls);
            if (w < 0)
                out.push_back({"negative boundary intersection", bd[i]->name + "." + bd[j]->name + " = " + to_string(w)});
            else if (w >= 2)
                out.push_back({"non-SNC tangency",
                               bd[i]->name + "." + bd[j]->name + " = " + to_string(w) +
                                   " (two boundary components may meet at most once)"});
        }
    if (m.affine_claimed) {
        if (bd.empty())
            out.push_back({"boundary empty", "affine claim requires a nonempty boundary"});
        else if (!boundary_dual_graph(m).connected())
            out.push_back({"boundary not connected", "affine claim requires connected Supp D"});
    }
    return out;
}

inline void require_valid(const SurfaceModel& m) {
    auto v = validate(m);
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid model:";
    for (const auto& x : v) os << " [" << x.rule << ": " << x.detail << "]";
    throw ValidationError(os.str());
}

// --- blow-up ------------------------------------------------------------

struct BlowUpTarget {
    std::vector<std::string> hosts; // empty = free point
    static BlowUpTarget free_point() { return {}; }
    static BlowUpTarget on(std::string c) { return {{std::move(c)}}; }
    static BlowUpTarget at(std::string a, std::string b) { return {{std::move(a), std::move(b)}}; }
};

inline SurfaceModel blow_up(const SurfaceModel& m, const std::string& exceptional_name,
                            const BlowUpTarget& target, bool exceptional_in_boundary = true) {
    if (m.find_curve(exceptional_name))
        throw Error("curve '" + exceptional_name + "' already exists");
    if (target.hosts.size() > 2) throw Error("blow-up target names more than two curves");
    for (const auto& h : target.hosts) m.curve(h); // existence
    if (target.hosts.size() == 2) {
        if (target.hosts[0] == target.hosts[1])
            throw Error("blow-up target repeats curve '" + target.hosts[0] + "'");
        if (m.pairing(target.hosts[0], target.hosts[1]) < 1)
            throw Error("curves '" + target.hosts[0] + "' and '" + target.hosts[1] + "' are disjoint");
    }

    SurfaceModel out = m;
    const std::size_t n = m.lattice.rank();
    out.lattice.basis_names.push_back(exceptional_name);
    for (auto& row : out.lattice.gram) row.push_back(0);
    ZVector last(n + 1, Integer(0));
    last[n] = -1;
    out.lattice.gram.push_back(std::move(last));
    out.lattice.canonical.push_back(1);

    for (auto& c : out.curves) {
        c.cls.coeffs.push_back(Rational(0));
        for (const auto& h : target.hosts)
            if (c.name == h) c.cls.coeffs.back() = Rational(-1);
    }
    Curve e;
    e.name = exceptional_name;
    e.cls = DivisorClass::zero(n + 1);
    e.cls.coeffs[n] = Rational(1);
    e.pa = 0;
    e.in_boundary = exceptional_in_boundary;
    out.curves.push_back(std::move(e));

    if (out.provenance)
        out.provenance->blowups.push_back({exceptional_name, target.hosts, exceptional_in_boundary});
    return out;
}

// --- contraction --------------------------------------------------------

/// Contract a tracked (-1)-curve of genus zero. The pushforward on classes is
/// p(x) = x + (x.e)e, which maps the lattice onto the saturated sublattice
/// e-perp; a basis of the image is produced by integral column reduction.
inline SurfaceModel contract(const SurfaceModel& m, const std::string& curve_name) {
    const Curve& e = m.curve(curve_name);
    if (e.pa != 0 || m.lattice.self_intersection(e.cls) != -1)
        throw Error("'" + curve_name + "' is not a (-1)-curve of genus 0");
    const std::size_t n = m.lattice.rank();

    auto pairing_with_e = [&](const DivisorClass& x) { return m.lattice.pairing(x, e.cls); };
    auto push = [&](const DivisorClass& x) {
        DivisorClass out = x;
        Rational k = pairing_with_e(x);
        for (std::size_t i = 0; i < n; ++i) out.coeffs[i] += k * e.cls.coeffs[i];
        return out;
    };
    auto to_int = [](const DivisorClass& x) {
        ZVector v(x.rank());
        for (std::size_t i = 0; i < x.rank(); ++i) {
            if (denominator(x.coeffs[i]) != 1)
                throw InternalConsistencyError("pushforward produced a non-integral class");
            v[i] = numerator(x.coeffs[i]);
        }
        return v;
    };

    // Basis of the image lattice.
    std::vector<ZVector> pushed;
    for (std::size_t i = 0; i < n; ++i) {
        DivisorClass basis_vec = DivisorClass::zero(n);
        basis_vec.coeffs[i] = 1;
        pushed.push_back(to_int(push(basis_vec)));
    }
    std::vector<ZVector> basis = hermite_column_basis(std::move(pushed));
    if (basis.size() != n - 1)
        throw InternalConsistencyError("contraction image has unexpected rank");

    auto express = [&](const ZVector& w) {
        auto x = solve_in_span(basis, w);
        if (!x) throw InternalConsistencyError("class not in contracted lattice span");
        QVector out(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (denominator((*x)[i]) != 1)
                throw InternalConsistencyError("non-integral coordinates in contracted basis");
            out[i] = (*x)[i];
        }
        return DivisorClass(std::move(out));
    };

    SurfaceModel out;
    out.affine_claimed = m.affine_claimed;
    out.base_genus_hint = m.base_genus_hint;
    out.provenance = std::nullopt; // history no longer replayable
    out.lattice.basis_names.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        out.lattice.basis_names[i] = "b" + std::to_string(i + 1);
    out.lattice.gram.assign(n - 1, ZVector(n - 1, Integer(0)));
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) {
            Rational g(0);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (basis[i][a] != 0 && basis[j][b] != 0)
                        g += Rational(basis[i][a]) * Rational(m.lattice.gram[a][b]) * Rational(basis[j][b]);
            out.lattice.gram[i][j] = numerator(g);
        }
    out.lattice.canonical.resize(n - 1);
    {
        DivisorClass k = express(to_int(push(m.lattice.canonical_class())));
        for (std::size_t i = 0; i + 1 < n; ++i) out.lattice.canonical[i] = numerator(k.coeffs[i]);
    }
    for (const auto& c : m.curves) {
        if (c.name == curve_name) continue;
        Rational k = pairing_with_e(c.cls);
        Curve nc;
        nc.name = c.name;
        nc.cls = express(to_int(push(c.cls)));
        nc.pa = c.pa + k * (k - 1) / 2;
        nc.in_boundary = c.in_boundary;
        out.curves.push_back(std::move(nc));
    }
    return out;
}

/// The inclusion e-perp -> old lattice for the contraction just performed:
/// maps a class in the contracted basis back to old coordinates. Built from
/// the same reduction as contract(); used for pullback identities.
inline std::vector<DivisorClass> contraction_section(const SurfaceModel& before, const std::string& curve_name) {
    const Curve& e = before.curve(curve_name);
    const std::size_t n = before.lattice.rank();
    std::vector<ZVector> pushed;
    for (std::size_t i = 0; i < n; ++i) {
        DivisorClass b = DivisorClass::zero(n);
        b.coeffs[i] = 1;
        DivisorClass p = b;
        Rational k = before.lattice.pairing(b, e.cls);
        for (std::size_t j = 0; j < n; ++j) p.coeffs[j] += k * e.cls.coeffs[j];
        ZVector v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = numerator(p.coeffs[j]);
        pushed.push_back(std::move(v));
    }
    std::vector<ZVector> basis = hermite_column_basis(std::move(pushed));
    std::vector<DivisorClass> out;
    for (const auto& v : basis) out.push_back(before.lattice.from_integers(v));
    return out;
}

} // namespace logsurf
