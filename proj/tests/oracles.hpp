#pragma once

// Test-only oracles, deliberately independent of the production paths:
//   - dense_bark: one dense Gauss solve over the full twig support, against
//     the production per-twig peeling system;
//   - ldlt_negative_definite: LDL^T pivots, against Sylvester leading minors;
//   - brute_force_case_holds: exhaustive grid enumeration of case-family
//     instances, against the reduction-based verifier.

#include <optional>
#include <vector>

#include "logsurf/catalog.hpp"
#include "logsurf/peeling.hpp"

namespace oracle {

using namespace logsurf;

/// Negative-definiteness via exact rational LDL^T: all pivots < 0. A zero
/// pivot means a vanishing leading minor, which already refutes definiteness.
inline bool ldlt_negative_definite(QMatrix a) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) return false;
        if (!(a[k][k] < 0)) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

/// Bark by a single dense solve of the joint system over all twig components,
/// using the generic rational solver. Returns nullopt if singular.
inline std::optional<QDivisor> dense_bark(const SurfaceModel& m, const std::vector<Twig>& twigs) {
    std::vector<std::string> support;
    for (const auto& t : twigs)
        support.insert(support.end(), t.components.begin(), t.components.end());
    QDivisor out;
    if (support.empty()) return out;
    const std::size_t r = support.size();
    QMatrix a = qmatrix(r, r);
    QVector rhs(r);
    DivisorClass kd = m.lattice.canonical_class() + m.class_of(m.boundary_divisor());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = m.pairing(support[i], support[j]);
        rhs[i] = m.lattice.pairing(kd, m.curve(support[i]).cls);
    }
    auto sol = solve(a, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) out.set(support[i], (*sol)[i]);
    return out;
}

// --- brute-force case-family enumeration ----------------------------------

struct GridLimits {
    long long g_max = 5;
    long long s_max = 6;
    long long mult_max = 12; // finite multiplicities 2..12, plus infinity
};

/// All slot d-values available to a family's free slots on the grid.
inline std::vector<BoundaryFiberDatum> slot_universe(SlotKind kind, const GridLimits& lim) {
    std::vector<BoundaryFiberDatum> out;
    switch (kind) {
    case SlotKind::None:
        break;
    case SlotKind::Half:
        out.push_back(BoundaryFiberDatum::make(1, Multiplicity::inf()));
        break;
    case SlotKind::TwoPoint:
        for (long long k = 2; k <= lim.mult_max; ++k)
            out.push_back(BoundaryFiberDatum::make(2, Multiplicity::of(k)));
        out.push_back(BoundaryFiberDatum::make(2, Multiplicity::inf()));
        break;
    case SlotKind::Any:
        for (long long k = 2; k <= lim.mult_max; ++k) {
            out.push_back(BoundaryFiberDatum::make(2, Multiplicity::of(k)));
        }
        out.push_back(BoundaryFiberDatum::make(2, Multiplicity::inf()));
        out.push_back(BoundaryFiberDatum::make(1, Multiplicity::inf()));
        break;
    }
    return out;
}

/// Does the criterion hold at m for EVERY grid instance of the family?
/// Enumerates g, t, s and sorted multisets of slot values, keeping instances
/// that satisfy the strict sum condition. Evaluates the criterion directly
/// from precomputed floor tables; multiset recursion carries running sums.
inline bool brute_force_case_holds(const CaseFamily& fam, long long m, const GridLimits& lim,
                                   long long* counted = nullptr) {
    if (fam.impossible) return true;
    std::vector<BoundaryFiberDatum> universe = slot_universe(fam.slot_kind, lim);
    std::vector<Rational> slot_d(universe.size());
    std::vector<Integer> slot_floor(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) {
        slot_d[i] = universe[i].d;
        slot_floor[i] = floor_int(Rational(m) * universe[i].d);
    }
    Rational forced_sum(0);
    Integer forced_floor(0);
    for (const auto& d : fam.forced_d) {
        forced_sum += d;
        forced_floor += floor_int(Rational(m) * d);
    }

    std::vector<long long> g_values;
    for (long long g = fam.g_min; g <= std::max(fam.g_min, lim.g_max); ++g) {
        g_values.push_back(g);
        if (!fam.g_unbounded) break;
    }

    long long found = 0;
    bool ok = true;
    for (long long g : g_values) {
        long long t_lo = fam.t_coupled ? (1 - g) : fam.t_min;
        long long t_hi = fam.t_coupled ? (1 - g) : fam.t_max;
        if (fam.t_unbounded) t_hi = t_lo + 3; // a few sample values; degree grows in t
        for (long long t = t_lo; t <= t_hi; ++t) {
            Rational base_sum = forced_sum + Rational(2 * g - 2 + t);
            Integer base_deg = forced_floor + Integer(m) * Integer(2 * g - 2 + t);
            Integer required(2 * g + 1);
            long long s_lo = fam.s_min;
            long long s_hi = fam.extra_slots ? lim.s_max : fam.s_min;
            for (long long s = s_lo; s <= s_hi && ok; ++s) {
                long long free_count = s - static_cast<long long>(fam.forced_d.size());
                if (free_count < 0) continue;
                // Sorted index multisets, depth-first with running sums.
                std::function<void(std::size_t, long long, Rational, Integer)> rec =
                    [&](std::size_t from, long long left, Rational sum, Integer deg) {
                        if (!ok) return;
                        if (left == 0) {
                            if (!(sum > 0)) return; // fails the kappa-one condition
                            ++found;
                            if (deg < required) ok = false;
                            return;
                        }
                        for (std::size_t i = from; i < universe.size(); ++i)
                            rec(i, left - 1, sum + slot_d[i], deg + slot_floor[i]);
                    };
                if (free_count == 0) {
                    if (base_sum > 0) {
                        ++found;
                        if (base_deg < required) ok = false;
                    }
                    continue;
                }
                if (universe.empty()) continue;
                rec(0, free_count, base_sum, base_deg);
            }
        }
    }
    if (counted) *counted = found;
    return ok;
}

} // namespace oracle
