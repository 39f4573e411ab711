#pragma once

// The three bundled example models and their fiber assignments. The model
// texts are embedded so the examples command works from any directory; the
// LOGSURF_EXAMPLES_DIR environment variable redirects loading to
// <dir>/<name>.lsm instead (names use '_' for '-').

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "logsurf/fibration.hpp"
#include "logsurf/model_io.hpp"

namespace logsurf {

// Untwisted punctured-line fibration over the affine line: two disjoint
// sections, one full boundary fiber, and two degenerate fibers whose chains
// are [3,1,2,2] and [2,1,2] with the (-1)-curves E2, E3 left outside the
// boundary. d = (1, 2/3, 1/2).
inline const char* kModelExample32 =
    "surface p1xp1\n"
    "curve F1 class=1,0 pa=0 boundary=yes\n"
    "curve D2 class=1,0 pa=0 boundary=yes\n"
    "curve D4 class=1,0 pa=0 boundary=yes\n"
    "curve H1 class=0,1 pa=0 boundary=yes\n"
    "curve H2 class=0,1 pa=0 boundary=yes\n"
    "blowup D1 at D2,H1\n"
    "blowup D3 at D1,D2\n"
    "blowup E2 at D1,D3 boundary=no\n"
    "blowup D5 at D4,H2\n"
    "blowup E3 at D5,D4 boundary=no\n"
    "flags affine=yes\n";

// Twisted variant: one irreducible 2-section H ~ 2s + f with two branch
// points, the same two degenerate fibers, plus the ample-witness curves
// F, G1, G2 (proper transforms of a third fiber and of the two rulings
// through the blown-up points). d = (2/3, 1/2).
inline const char* kModelProp41 =
    "surface p1xp1\n"
    "curve H class=1,2 pa=0 boundary=yes\n"
    "curve D2 class=1,0 pa=0 boundary=yes\n"
    "curve D4 class=1,0 pa=0 boundary=yes\n"
    "blowup D1 at D2,H\n"
    "blowup D3 at D1,D2\n"
    "blowup E1 at D1,D3 boundary=no\n"
    "blowup D5 at D4,H\n"
    "blowup E2 at D5,D4 boundary=no\n"
    "curve F class=1,0,0,0,0,0,0 pa=0 boundary=no\n"
    "curve G1 class=0,1,-1,0,0,0,0 pa=0 boundary=no\n"
    "curve G2 class=0,1,0,0,0,-1,0 pa=0 boundary=no\n"
    "flags affine=yes\n";

// Characteristic-two numerical model: ruled surface over an elliptic base
// (numerical lattice only), an inseparable 2-section H with K + H = 0, and
// one degenerate fiber [2,1,2] whose three components all lie in the
// boundary, meeting H at the middle (-1)-curve E1. d = (1/2). The tangential
// blow-up history puts three curves through one center, which the two-host
// replay grammar cannot express, so the model ships in abstract form.
inline const char* kModelProp42 =
    "surface abstract rank=4\n"
    "gram\n"
    "0 1 0 0\n"
    "1 0 0 0\n"
    "0 0 -1 0\n"
    "0 0 0 -1\n"
    "canonical 0 -2 1 1\n"
    "base_genus 1\n"
    "curve H class=0,2,-1,-1 pa=1 boundary=yes\n"
    "curve D1 class=1,0,-1,-1 pa=0 boundary=yes\n"
    "curve D2 class=0,0,1,-1 pa=0 boundary=yes\n"
    "curve E1 class=0,0,0,1 pa=0 boundary=yes\n"
    "flags affine=yes\n";

struct BundledExample {
    std::string name;      // CLI name
    std::string file_stem; // <stem>.lsm
    const char* text;
    FiberAssignment assignment;
};

inline std::vector<BundledExample> bundled_examples() {
    std::vector<BundledExample> out;
    {
        BundledExample e;
        e.name = "example-3-2";
        e.file_stem = "example_3_2";
        e.text = kModelExample32;
        e.assignment.horizontal = {"H1", "H2"};
        e.assignment.horizontal_type = HorizontalType::TwoSections;
        e.assignment.fiber_groups = {{"F1"}, {"D1", "E2", "D3", "D2"}, {"D4", "E3", "D5"}};
        e.assignment.base_genus = 0;
        out.push_back(std::move(e));
    }
    {
        BundledExample e;
        e.name = "prop-4-1";
        e.file_stem = "prop_4_1";
        e.text = kModelProp41;
        e.assignment.horizontal = {"H"};
        e.assignment.horizontal_type = HorizontalType::IrreducibleSeparable;
        e.assignment.fiber_groups = {{"D1", "E1", "D3", "D2"}, {"D4", "E2", "D5"}};
        e.assignment.base_genus = 0;
        e.assignment.branch_points = 2;
        out.push_back(std::move(e));
    }
    {
        BundledExample e;
        e.name = "prop-4-2";
        e.file_stem = "prop_4_2";
        e.text = kModelProp42;
        e.assignment.horizontal = {"H"};
        e.assignment.horizontal_type = HorizontalType::IrreducibleInseparable;
        e.assignment.fiber_groups = {{"D1", "E1", "D2"}};
        e.assignment.base_genus = 1;
        out.push_back(std::move(e));
    }
    return out;
}

inline const BundledExample& bundled_example(const std::string& name) {
    static const std::vector<BundledExample> all = bundled_examples();
    for (const auto& e : all)
        if (e.name == name) return e;
    throw Error("unknown example '" + name + "' (expected example-3-2, prop-4-1 or prop-4-2)");
}

/// Model text for a bundled example, honoring LOGSURF_EXAMPLES_DIR.
inline std::string bundled_example_text(const BundledExample& e) {
    if (const char* dir = std::getenv("LOGSURF_EXAMPLES_DIR")) {
        std::string path = std::string(dir) + "/" + e.file_stem + ".lsm";
        std::ifstream in(path);
        if (!in) throw Error("cannot open '" + path + "'");
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    return e.text;
}

} // namespace logsurf
