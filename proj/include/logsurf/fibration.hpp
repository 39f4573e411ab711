#pragma once

// Numerical fibration data of a log-Kodaira-one pair over a base curve B:
// base genus g, the degree t of the horizontal correction divisor, and for
// each degenerate boundary fiber a datum (branch_count, multiplicity) with
//   d = 1 - 1/m        for branch_count 2,
//   d = (1/2)(1 - 1/m) for branch_count 1,   1/infinity = 0.
// The fibration criterion at level m is
//   deg delta_m = m(2g - 2 + t) + sum_i floor(m d_i) >= 2g + 1,
// and fibration_threshold finds the least M with the criterion true for all
// m >= M, using the horizon H0 = ceil((2g + 1 + s)/eps), eps = 2g - 2 + t +
// sum d_i: beyond H0 the criterion holds because floor(x) > x - 1.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "logsurf/classification.hpp"

namespace logsurf {

/// A fiber multiplicity: a positive integer or infinity. Infinity is a
/// distinct symbolic value, never a large stand-in; d = 1 exactly matters.
struct Multiplicity {
    bool infinite = false;
    long long value = 1; // >= 1 when finite

    static Multiplicity inf() { return {true, 0}; }
    static Multiplicity of(long long v) { return {false, v}; }
    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
    std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

inline Rational d_value(int branch_count, Multiplicity m) {
    if (branch_count != 1 && branch_count != 2) throw Error("branch count must be 1 or 2");
    if (!m.infinite && m.value < 1) throw Error("multiplicity must be >= 1");
    Rational base = m.infinite ? Rational(1) : Rational(m.value - 1, m.value);
    return branch_count == 2 ? base : base / 2;
}

struct BoundaryFiberDatum {
    int branch_count = 2;
    Multiplicity multiplicity;
    Rational d; // derived; in [0,1]

    static BoundaryFiberDatum make(int branch_count, Multiplicity m) {
        BoundaryFiberDatum f;
        f.branch_count = branch_count;
        f.multiplicity = m;
        f.d = d_value(branch_count, m);
        return f;
    }
};

enum class HorizontalType { TwoSections, IrreducibleSeparable, IrreducibleInseparable };

inline std::string to_string(HorizontalType t) {
    switch (t) {
    case HorizontalType::TwoSections: return "2sec";
    case HorizontalType::IrreducibleSeparable: return "sep";
    case HorizontalType::IrreducibleInseparable: return "insep";
    }
    return "?";
}

struct FibrationData {
    long long g = 0;
    long long t = 0;
    HorizontalType horizontal_type = HorizontalType::TwoSections;
    std::vector<BoundaryFiberDatum> fibers; // d > 0, sorted descending by d

    static FibrationData make(long long g, long long t, HorizontalType type,
                              std::vector<BoundaryFiberDatum> fibers) {
        FibrationData out;
        out.g = g;
        out.t = t;
        out.horizontal_type = type;
        if (g < 0) throw Error("base genus must be >= 0");
        for (auto& f : fibers)
            if (f.d > 0) out.fibers.push_back(f);
        std::sort(out.fibers.begin(), out.fibers.end(),
                  [](const BoundaryFiberDatum& a, const BoundaryFiberDatum& b) { return a.d > b.d; });
        switch (type) {
        case HorizontalType::TwoSections:
            if (t < 0) throw Error("two sections give t = H1.H2 >= 0");
            break;
        case HorizontalType::IrreducibleSeparable:
            if (t < 0) throw Error("a separable 2-section gives t >= 0");
            break;
        case HorizontalType::IrreducibleInseparable:
            if (t != 1 - g) throw Error("an inseparable 2-section forces t = 1 - g");
            for (const auto& f : out.fibers)
                if (f.branch_count != 1)
                    throw Error("an inseparable 2-section meets every fiber in one point");
            break;
        }
        for (const auto& f : out.fibers)
            if (f.branch_count == 1 && f.d > 0 && f.d != Rational(1, 2))
                throw Error("a one-point fiber with d > 0 forces d = 1/2");
        return out;
    }

    long long s() const { return static_cast<long long>(fibers.size()); }

    /// eps = 2g - 2 + t + sum d_i; the criterion's asymptotic slope.
    Rational eps() const {
        Rational e(2 * g - 2 + t);
        for (const auto& f : fibers) e += f.d;
        return e;
    }

    /// The log-Kodaira-one condition (3.1): eps > 0.
    bool kodaira_one_condition() const { return eps() > 0; }
};

inline Integer delta_m_degree(const FibrationData& data, long long m) {
    if (m < 1) throw Error("m must be >= 1");
    Integer deg = Integer(m) * Integer(2 * data.g - 2 + data.t);
    for (const auto& f : data.fibers) deg += floor_int(Rational(m) * f.d);
    return deg;
}

inline bool fibration_criterion(const FibrationData& data, long long m) {
    return delta_m_degree(data, m) >= Integer(2 * data.g + 1);
}

struct ThresholdResult {
    long long threshold = 1;
    long long horizon = 1;
};

inline ThresholdResult fibration_threshold(const FibrationData& data) {
    if (!data.kodaira_one_condition())
        throw Error("not log Kodaira dimension one: 2g - 2 + t + sum d_i <= 0");
    Rational eps = data.eps();
    Integer h0 = ceil_int(Rational(2 * data.g + 1 + data.s()) / eps);
    long long horizon = h0 < 1 ? 1 : static_cast<long long>(h0);
    long long threshold = 1;
    for (long long m = horizon; m >= 1; --m) {
        if (!fibration_criterion(data, m)) { threshold = m + 1; break; }
    }
    return {threshold, horizon};
}

// --- extraction from a surface model -------------------------------------

/// Caller-declared partition of the boundary into horizontal components and
/// degenerate fiber groups, with the base data that lattice arithmetic alone
/// cannot decide (base genus; branch point count of a separable 2-section).
struct FiberAssignment {
    std::vector<std::string> horizontal;
    HorizontalType horizontal_type = HorizontalType::TwoSections;
    std::vector<std::vector<std::string>> fiber_groups;
    long long base_genus = 0;
    std::optional<long long> branch_points; // separable 2-sections only
};

struct ExtractionResult {
    FibrationData data;
    DivisorClass fiber_class;
    ZariskiData zariski;
};

namespace detail {

/// Multiplicities of the components of a full fiber: the primitive integer
/// kernel vector of the group's Gram matrix, which must be negative
/// semidefinite of corank one with a positive kernel vector.
inline ZVector fiber_multiplicities(const SurfaceModel& m, const std::vector<std::string>& group) {
    const std::size_t r = group.size();
    QMatrix a = qmatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            a[i][j] = m.pairing(group[i], group[j]);
    // Kernel by row reduction.
    QMatrix red = a;
    std::vector<long long> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < r && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && red[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(red[piv], red[rank]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank || red[i][col] == 0) continue;
            Rational f = red[i][col] / red[rank][col];
            for (std::size_t c = 0; c < r; ++c) red[i][c] -= f * red[rank][c];
        }
        pivot_col.push_back(static_cast<long long>(col));
        ++rank;
    }
    if (rank != r - 1)
        throw Error("fiber group does not have corank one (not a full fiber support)");
    // Free column = the one not a pivot.
    std::vector<bool> is_pivot(r, false);
    for (long long c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    QVector kernel(r, Rational(0));
    kernel[free_col] = 1;
    for (std::size_t i = 0; i < rank; ++i)
        kernel[pivot_col[i]] = -red[i][free_col] / red[i][pivot_col[i]];
    // Scale to primitive positive integers.
    Integer lcm_den(1);
    for (const auto& q : kernel) {
        Integer d = denominator(q);
        lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, d) * d;
    }
    ZVector mult(r);
    Integer g(0);
    for (std::size_t i = 0; i < r; ++i) {
        mult[i] = numerator(kernel[i] * Rational(lcm_den));
        g = boost::multiprecision::gcd(g, mult[i]);
    }
    for (auto& v : mult) v /= g;
    bool all_pos = true, all_neg = true;
    for (const auto& v : mult) {
        if (v <= 0) all_pos = false;
        if (v >= 0) all_neg = false;
    }
    if (all_neg)
        for (auto& v : mult) v = -v;
    else if (!all_pos)
        throw Error("fiber group kernel vector is not positive (not a full fiber support)");
    return mult;
}

} // namespace detail

/// Reads the numerical fibration data off a kappa-one model. The model must
/// already be almost minimal; every boundary curve must be declared either
/// horizontal or inside a fiber group. Cross-checks performed exactly:
///   - each group supports a full fiber (corank-one Gram, positive kernel);
///   - all group fiber classes agree, square to zero, and meet D in degree 2;
///   - d_i from (branch_count, multiplicity) matches the D# coefficient of
///     every boundary group component meeting the horizontal part;
///   - class(K + D#) = (2g - 2 + t + sum d_i) * fiber_class;
///   - two-point fibers with 0 < d < 1 have disconnected boundary part, and
///     one-point fibers with d > 0 have d = 1/2.
inline ExtractionResult extract_fibration_data(const SurfaceModel& input, const FiberAssignment& fa) {
    ZariskiData z = zariski(input);
    if (!z.minimal_log.empty())
        throw Error("model is not almost minimal; re-run after minimalization");
    if (z.kappa != Kappa::One)
        throw Error("model does not have kappa = 1 (got " + to_string(z.kappa) + ")");
    const SurfaceModel& m = z.model;

    if (m.base_genus_hint && *m.base_genus_hint != fa.base_genus)
        throw Error("assignment base genus disagrees with the model's base_genus hint");

    // Horizontal components: boundary curves of coefficient one in D#.
    for (const auto& h : fa.horizontal) {
        const Curve& c = m.curve(h);
        if (!c.in_boundary) throw Error("horizontal component '" + h + "' is not in the boundary");
        if (z.dsharp.coeff(h) != 1)
            throw Error("horizontal component '" + h + "' has D# coefficient != 1");
    }

    // Assignment must cover the boundary.
    {
        std::set<std::string> assigned(fa.horizontal.begin(), fa.horizontal.end());
        for (const auto& grp : fa.fiber_groups)
            for (const auto& n : grp)
                if (!assigned.insert(n).second)
                    throw Error("curve '" + n + "' assigned twice");
        for (const auto& c : m.curves)
            if (c.in_boundary && !assigned.count(c.name))
                throw Error("boundary curve '" + c.name + "' is neither horizontal nor in a fiber group");
    }

    ExtractionResult out;
    out.zariski = z;

    DivisorClass horizontal_class = DivisorClass::zero(m.lattice.rank());
    for (const auto& h : fa.horizontal) horizontal_class += m.curve(h).cls;

    std::optional<DivisorClass> fiber_class;
    std::vector<BoundaryFiberDatum> fibers;

    for (const auto& grp : fa.fiber_groups) {
        if (grp.empty()) throw Error("empty fiber group");
        ZVector mult = detail::fiber_multiplicities(m, grp);
        DivisorClass fc = DivisorClass::zero(m.lattice.rank());
        for (std::size_t i = 0; i < grp.size(); ++i)
            fc += Rational(mult[i]) * m.curve(grp[i]).cls;
        if (m.lattice.self_intersection(fc) != 0)
            throw Error("fiber class of a group has nonzero self-intersection");
        if (fiber_class) {
            if (!(fc == *fiber_class)) throw Error("fiber groups yield different fiber classes");
        } else {
            fiber_class = fc;
        }

        // Branch count at this fiber: how many points of the fiber lie on H.
        std::vector<std::pair<std::size_t, Rational>> meets; // (index in grp, c.H)
        for (std::size_t i = 0; i < grp.size(); ++i) {
            Rational w = m.lattice.pairing(m.curve(grp[i]).cls, horizontal_class);
            if (w < 0) throw Error("negative pairing with the horizontal part");
            if (w > 0) meets.emplace_back(i, w);
        }
        int branch_count = 0;
        if (meets.size() == 2 && meets[0].second == 1 && meets[1].second == 1) {
            branch_count = 2;
        } else if (meets.size() == 1 && meets[0].second == 1) {
            branch_count = 1; // one transversal point on a multiplicity-2 component
        } else if (meets.size() == 1 && meets[0].second == 2 &&
                   fa.horizontal_type == HorizontalType::TwoSections) {
            branch_count = 2; // each section crosses the component once
        } else if (meets.size() == 1 && meets[0].second == 2) {
            throw Error("cannot decide the branch count of a component meeting an irreducible "
                        "2-section twice (possible tangency)");
        } else {
            throw Error("fiber group meets the horizontal part in an unexpected pattern");
        }

        // Multiplicity: the fiber multiplicity of the unique component outside
        // the boundary, or infinity when the whole fiber lies in D.
        Multiplicity fiber_mult = Multiplicity::inf();
        int outside = 0;
        for (std::size_t i = 0; i < grp.size(); ++i) {
            if (!m.curve(grp[i]).in_boundary) {
                ++outside;
                fiber_mult = Multiplicity::of(static_cast<long long>(mult[i]));
            }
        }
        if (outside > 1)
            throw Error("fiber group has more than one component outside the boundary");

        BoundaryFiberDatum datum = BoundaryFiberDatum::make(branch_count, fiber_mult);

        if (branch_count == 1 && datum.d > 0 && datum.d != Rational(1, 2))
            throw Error("one-point fiber with d = " + to_string(datum.d) +
                        "; inconsistent with any (branch_count, multiplicity) pair");

        // D# coefficient cross-check on the components meeting H.
        for (const auto& [i, w] : meets) {
            const Curve& c = m.curve(grp[i]);
            if (!c.in_boundary) continue;
            Rational expect = datum.d * Rational(mult[i]);
            if (z.dsharp.coeff(c.name) != expect)
                throw Error("D# coefficient of '" + c.name + "' is " + to_string(z.dsharp.coeff(c.name)) +
                            ", inconsistent with d = " + to_string(datum.d) + " x multiplicity " +
                            mult[i].str());
        }

        // Two-point fibers with 0 < d < 1: the boundary part is disconnected.
        if (branch_count == 2 && datum.d > 0 && datum.d < 1) {
            std::vector<std::size_t> bidx;
            for (std::size_t i = 0; i < grp.size(); ++i)
                if (m.curve(grp[i]).in_boundary) bidx.push_back(i);
            if (bidx.size() >= 2) {
                std::vector<std::size_t> comp(bidx.size());
                for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
                std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
                    while (comp[x] != x) x = comp[x] = comp[comp[x]];
                    return x;
                };
                for (std::size_t i = 0; i < bidx.size(); ++i)
                    for (std::size_t j = i + 1; j < bidx.size(); ++j)
                        if (m.pairing(grp[bidx[i]], grp[bidx[j]]) > 0) comp[root(i)] = root(j);
                bool connected = true;
                for (std::size_t i = 1; i < bidx.size(); ++i)
                    if (root(i) != root(0)) connected = false;
                if (connected)
                    throw Error("two-point fiber with 0 < d < 1 must have disconnected boundary part");
            }
        }

        fibers.push_back(datum);
    }
    if (!fiber_class) throw Error("assignment declares no fiber groups");

    // Horizontal sanity + t.
    long long t = 0;
    switch (fa.horizontal_type) {
    case HorizontalType::TwoSections: {
        if (fa.horizontal.size() != 2) throw Error("two_sections needs exactly two horizontal curves");
        for (const auto& h : fa.horizontal)
            if (m.lattice.pairing(m.curve(h).cls, *fiber_class) != 1)
                throw Error("'" + h + "' is not a section (pairing with the fiber != 1)");
        Rational tt = m.pairing(fa.horizontal[0], fa.horizontal[1]);
        t = static_cast<long long>(numerator(tt));
        break;
    }
    case HorizontalType::IrreducibleSeparable: {
        if (fa.horizontal.size() != 1) throw Error("an irreducible 2-section is a single curve");
        if (m.lattice.pairing(m.curve(fa.horizontal[0]).cls, *fiber_class) != 2)
            throw Error("'" + fa.horizontal[0] + "' is not a 2-section");
        if (!fa.branch_points) throw Error("separable 2-section requires a declared branch point count");
        if (*fa.branch_points < 0 || *fa.branch_points % 2 != 0)
            throw Error("branch point count must be a nonnegative even integer");
        t = *fa.branch_points / 2;
        break;
    }
    case HorizontalType::IrreducibleInseparable: {
        if (fa.horizontal.size() != 1) throw Error("an irreducible 2-section is a single curve");
        if (m.lattice.pairing(m.curve(fa.horizontal[0]).cls, *fiber_class) != 2)
            throw Error("'" + fa.horizontal[0] + "' is not a 2-section");
        t = 1 - fa.base_genus;
        break;
    }
    }

    // F . D = 2.
    if (m.lattice.pairing(*fiber_class, m.class_of(m.boundary_divisor())) != 2)
        throw Error("fiber class does not meet the boundary in degree 2");

    out.data = FibrationData::make(fa.base_genus, t, fa.horizontal_type, std::move(fibers));
    out.fiber_class = *fiber_class;

    // Global identity: class(K + D#) = eps * fiber_class, eps > 0.
    Rational eps = out.data.eps();
    if (!(eps > 0))
        throw Error("not log Kodaira dimension one: 2g - 2 + t + sum d_i <= 0");
    DivisorClass expect = eps * *fiber_class;
    if (!(z.nef_class == expect))
        throw InternalConsistencyError(
            "class(K + D#) != (2g - 2 + t + sum d_i) x fiber class; assignment inconsistent with the model");
    return out;
}

/// Class of floor(m(K + D#)) with the fractional parts floored fiber-wise,
/// i.e. the computation on the relatively minimal model, where the boundary
/// fibers are irreducible: the result is deg(delta_m) times the fiber class.
/// (The coefficientwise floor on a non-minimal model differs from this by the
/// class of an effective exceptional fixed part, which carries no sections.)
inline DivisorClass floor_multiple_class(const ExtractionResult& ex, long long m) {
    Integer deg = delta_m_degree(ex.data, m);
    return Rational(deg) * ex.fiber_class;
}

} // namespace logsurf
