#pragma once

// Nefness relative to tracked curves, the Zariski decomposition of K + D for
// almost minimal pairs (nef part K + D#, negative part Bk(D)), and the
// log-Kodaira classification it induces:
//   kappa = 0  <=>  class(K + D#) = 0
//   kappa = 1  <=>  (K + D#)^2 = 0 and class != 0
//   kappa = 2  <=>  (K + D#)^2 > 0
// A failed nefness check yields not_nef_on_tracked rather than "= -infinity":
// lattice data cannot certify almost minimality absolutely, so the library
// never claims more than the tracked curves support.

#include <string>
#include <vector>

#include "logsurf/peeling.hpp"

namespace logsurf {

enum class Kappa { Zero, One, Two, NotNefOnTracked };

inline std::string to_string(Kappa k) {
    switch (k) {
    case Kappa::Zero: return "0";
    case Kappa::One: return "1";
    case Kappa::Two: return "2";
    case Kappa::NotNefOnTracked: return "not_nef_on_tracked";
    }
    return "?";
}

struct NefCheck {
    bool nef = false;
    std::vector<std::pair<std::string, Rational>> violators; // curve, pairing
};

inline NefCheck is_nef_on_tracked(const SurfaceModel& m, const DivisorClass& x) {
    require_valid(m);
    NefCheck out;
    out.nef = true;
    for (const auto& c : m.curves) {
        Rational p = m.lattice.pairing(x, c.cls);
        if (p < 0) {
            out.nef = false;
            out.violators.emplace_back(c.name, p);
        }
    }
    return out;
}

struct ZariskiData {
    SurfaceModel model;                  // the almost-minimal model the data refers to
    std::vector<std::string> minimal_log; // contractions performed to reach it
    DivisorClass nef_class;              // class of K + D#
    QDivisor dsharp;                     // Q-divisor form of D#
    QDivisor negative_part;              // Bk(D)
    std::vector<Twig> twigs;
    Rational nef_self_intersection;
    Kappa kappa = Kappa::NotNefOnTracked;
    std::vector<std::pair<std::string, Rational>> nef_violators;
};

/// Zariski decomposition of K + D, computed on the almost-minimal model
/// (almost-minimalization runs first; for already-minimal inputs it is the
/// identity and the log comes back empty).
inline ZariskiData zariski(const SurfaceModel& input) {
    MinimalizationResult min = almost_minimalize(input);
    const SurfaceModel& m = min.model;
    PeelingResult peel = compute_bark(m);

    ZariskiData z;
    z.model = m;
    z.minimal_log = min.contracted;
    z.dsharp = peel.dsharp;
    z.negative_part = peel.bark;
    z.twigs = peel.twigs;
    z.nef_class = m.lattice.canonical_class() + m.class_of(peel.dsharp);
    z.nef_self_intersection = m.lattice.self_intersection(z.nef_class);

    NefCheck nef = is_nef_on_tracked(m, z.nef_class);
    if (!nef.nef) {
        z.kappa = Kappa::NotNefOnTracked;
        z.nef_violators = nef.violators;
        return z;
    }
    if (z.nef_class.is_zero()) z.kappa = Kappa::Zero;
    else if (z.nef_self_intersection == 0) z.kappa = Kappa::One;
    else if (z.nef_self_intersection > 0) z.kappa = Kappa::Two;
    else
        throw InternalConsistencyError(
            "K + D# is nef on all tracked curves but has negative self-intersection " +
            to_string(z.nef_self_intersection) + "; the model is missing tracked curves");
    return z;
}

/// Nakai-Moishezon relative to tracked curves: L^2 > 0 and L.c > 0 for every
/// tracked curve. Supports affineness claims (an ample class disjoint from S).
inline bool ample_witness_check(const SurfaceModel& m, const QDivisor& L) {
    require_valid(m);
    DivisorClass cls = m.class_of(L);
    if (!(m.lattice.self_intersection(cls) > 0)) return false;
    for (const auto& c : m.curves)
        if (!(m.lattice.pairing(cls, c.cls) > 0)) return false;
    return true;
}

} // namespace logsurf
