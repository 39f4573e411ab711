#include <catch2/catch_amalgamated.hpp>

#include "logsurf/bundled.hpp"
#include "logsurf/fibration.hpp"

using namespace logsurf;

namespace {

FibrationData sharp_config() {
    // g = 0, t = 1, two sections, d = (2/3, 1/2): the extremal configuration.
    return FibrationData::make(0, 1, HorizontalType::TwoSections,
                               {BoundaryFiberDatum::make(2, Multiplicity::of(3)),
                                BoundaryFiberDatum::make(2, Multiplicity::of(2))});
}

} // namespace

TEST_CASE("d_value formula") {
    CHECK(d_value(2, Multiplicity::of(3)) == Rational(2, 3));
    CHECK(d_value(1, Multiplicity::of(1)) == 0);
    CHECK(d_value(2, Multiplicity::of(2)) == Rational(1, 2));
    CHECK(d_value(1, Multiplicity::inf()) == Rational(1, 2));
    CHECK(d_value(2, Multiplicity::inf()) == 1);
    CHECK(d_value(2, Multiplicity::of(1)) == 0);
    CHECK_THROWS_AS(d_value(3, Multiplicity::of(2)), Error);
}

TEST_CASE("d_value range: 1 only at (2, inf), 0 only at multiplicity 1") {
    for (int b : {1, 2}) {
        for (long long k = 1; k <= 40; ++k) {
            Rational d = d_value(b, Multiplicity::of(k));
            CHECK(d >= 0);
            CHECK(d <= 1);
            CHECK((d == 1) == false); // finite multiplicity never reaches 1
            CHECK((d == 0) == (k == 1));
        }
        Rational dinf = d_value(b, Multiplicity::inf());
        CHECK((dinf == 1) == (b == 2));
    }
}

TEST_CASE("delta_m degree on the key configurations") {
    SECTION("sharp configuration: 0 at m = 7, 1 at m = 8") {
        FibrationData d = sharp_config();
        CHECK(delta_m_degree(d, 7) == 0); // -7 + floor(14/3) + floor(7/2)
        CHECK(delta_m_degree(d, 8) == 1); // -8 + floor(16/3) + floor(8/2)
    }
    SECTION("genus-one inseparable configuration: 2 at m = 5, 3 at m = 6") {
        FibrationData d = FibrationData::make(1, 0, HorizontalType::IrreducibleInseparable,
                                              {BoundaryFiberDatum::make(1, Multiplicity::inf())});
        CHECK(delta_m_degree(d, 5) == 2);
        CHECK(delta_m_degree(d, 6) == 3);
    }
}

TEST_CASE("fibration criterion") {
    SECTION("t = 3 with no fibers holds from m = 1") {
        FibrationData d = FibrationData::make(0, 3, HorizontalType::TwoSections, {});
        CHECK(fibration_criterion(d, 1));
    }
    SECTION("sharp configuration fails at 7") {
        CHECK_FALSE(fibration_criterion(sharp_config(), 7));
        CHECK(fibration_criterion(sharp_config(), 8));
    }
    SECTION("g = 0, t = 2, d = (1/2) holds from m = 2") {
        FibrationData d = FibrationData::make(0, 2, HorizontalType::TwoSections,
                                              {BoundaryFiberDatum::make(2, Multiplicity::of(2))});
        CHECK_FALSE(fibration_criterion(d, 1));
        CHECK(fibration_criterion(d, 2));
    }
}

TEST_CASE("fibration threshold") {
    SECTION("sharp configuration: 8") {
        auto t = fibration_threshold(sharp_config());
        CHECK(t.threshold == 8);
    }
    SECTION("genus-one inseparable: 6") {
        FibrationData d = FibrationData::make(1, 0, HorizontalType::IrreducibleInseparable,
                                              {BoundaryFiberDatum::make(1, Multiplicity::inf())});
        CHECK(fibration_threshold(d).threshold == 6);
    }
    SECTION("t = 3, no fibers: 1") {
        FibrationData d = FibrationData::make(0, 3, HorizontalType::TwoSections, {});
        CHECK(fibration_threshold(d).threshold == 1);
    }
    SECTION("sum condition violated is an error") {
        FibrationData d = FibrationData::make(0, 1, HorizontalType::TwoSections,
                                              {BoundaryFiberDatum::make(2, Multiplicity::of(2))});
        CHECK_FALSE(d.kodaira_one_condition());
        CHECK_THROWS_AS(fibration_threshold(d), Error);
    }
    SECTION("the threshold is the unique boundary: false at M-1, true on [M, horizon]") {
        std::vector<FibrationData> samples = {
            sharp_config(),
            FibrationData::make(1, 0, HorizontalType::IrreducibleInseparable,
                                {BoundaryFiberDatum::make(1, Multiplicity::inf())}),
            FibrationData::make(0, 0, HorizontalType::TwoSections,
                                {BoundaryFiberDatum::make(2, Multiplicity::inf()),
                                 BoundaryFiberDatum::make(2, Multiplicity::of(3)),
                                 BoundaryFiberDatum::make(2, Multiplicity::of(2))}),
            FibrationData::make(2, -1, HorizontalType::IrreducibleInseparable, {}),
            FibrationData::make(0, 2, HorizontalType::IrreducibleSeparable,
                                {BoundaryFiberDatum::make(1, Multiplicity::inf())}),
        };
        for (const auto& d : samples) {
            auto t = fibration_threshold(d);
            if (t.threshold > 1) CHECK_FALSE(fibration_criterion(d, t.threshold - 1));
            for (long long m = t.threshold; m <= t.horizon; ++m) CHECK(fibration_criterion(d, m));
        }
    }
}

TEST_CASE("delta degree growth: deg/m approaches eps") {
    std::vector<FibrationData> samples = {
        sharp_config(),
        FibrationData::make(1, 0, HorizontalType::IrreducibleInseparable,
                            {BoundaryFiberDatum::make(1, Multiplicity::inf())}),
        FibrationData::make(0, 0, HorizontalType::TwoSections,
                            {BoundaryFiberDatum::make(2, Multiplicity::inf()),
                             BoundaryFiberDatum::make(2, Multiplicity::of(3)),
                             BoundaryFiberDatum::make(2, Multiplicity::of(2))}),
    };
    const long long m = 10000;
    for (const auto& d : samples) {
        Rational ratio = Rational(delta_m_degree(d, m)) / m;
        Rational err = ratio - d.eps();
        if (err < 0) err = -err;
        CHECK(err <= Rational(d.s() + 1, m));
    }
}

TEST_CASE("fibration data construction rules") {
    CHECK_THROWS_AS(FibrationData::make(0, -1, HorizontalType::TwoSections, {}), Error);
    CHECK_THROWS_AS(FibrationData::make(1, 1, HorizontalType::IrreducibleInseparable, {}), Error);
    // inseparable with a two-point fiber
    CHECK_THROWS_AS(FibrationData::make(1, 0, HorizontalType::IrreducibleInseparable,
                                        {BoundaryFiberDatum::make(2, Multiplicity::of(2))}),
                    Error);
    // fibers sort descending and d = 0 entries drop
    FibrationData d = FibrationData::make(0, 1, HorizontalType::TwoSections,
                                          {BoundaryFiberDatum::make(2, Multiplicity::of(2)),
                                           BoundaryFiberDatum::make(2, Multiplicity::of(1)),
                                           BoundaryFiberDatum::make(2, Multiplicity::inf())});
    REQUIRE(d.s() == 2);
    CHECK(d.fibers[0].d == 1);
    CHECK(d.fibers[1].d == Rational(1, 2));
}

TEST_CASE("extraction from the bundled models") {
    SECTION("example-3-2: (g, t) = (0, 0), two sections, d = (1, 2/3, 1/2)") {
        const auto& e = bundled_example("example-3-2");
        ExtractionResult ex = extract_fibration_data(load_model(e.text), e.assignment);
        CHECK(ex.data.g == 0);
        CHECK(ex.data.t == 0);
        CHECK(ex.data.horizontal_type == HorizontalType::TwoSections);
        REQUIRE(ex.data.s() == 3);
        CHECK(ex.data.fibers[0].d == 1);
        CHECK(ex.data.fibers[1].d == Rational(2, 3));
        CHECK(ex.data.fibers[2].d == Rational(1, 2));
        CHECK(fibration_threshold(ex.data).threshold == 8);
        // the fiber class has square zero and meets D in degree 2
        SurfaceModel m = load_model(e.text);
        CHECK(m.lattice.self_intersection(ex.fiber_class) == 0);
        CHECK(m.lattice.pairing(ex.fiber_class, m.class_of(m.boundary_divisor())) == 2);
        // nef part is eps times the fiber class
        CHECK(ex.zariski.nef_class == ex.data.eps() * ex.fiber_class);
    }
    SECTION("prop-4-1: t from two branch points; threshold 8") {
        const auto& e = bundled_example("prop-4-1");
        ExtractionResult ex = extract_fibration_data(load_model(e.text), e.assignment);
        CHECK(ex.data.t == 1);
        CHECK(ex.data.horizontal_type == HorizontalType::IrreducibleSeparable);
        REQUIRE(ex.data.s() == 2);
        CHECK(ex.data.fibers[0].d == Rational(2, 3));
        CHECK(ex.data.fibers[1].d == Rational(1, 2));
        CHECK(fibration_threshold(ex.data).threshold == 8);
    }
    SECTION("prop-4-2: the whole degenerate fiber sits in D, so m = inf and d = 1/2") {
        const auto& e = bundled_example("prop-4-2");
        ExtractionResult ex = extract_fibration_data(load_model(e.text), e.assignment);
        CHECK(ex.data.g == 1);
        CHECK(ex.data.t == 0);
        REQUIRE(ex.data.s() == 1);
        CHECK(ex.data.fibers[0].branch_count == 1);
        CHECK(ex.data.fibers[0].multiplicity == Multiplicity::inf());
        CHECK(ex.data.fibers[0].d == Rational(1, 2));
        CHECK(fibration_threshold(ex.data).threshold == 6);
        CHECK(floor_multiple_class(ex, 5) == Rational(2) * ex.fiber_class);
    }
    SECTION("floor multiples on example-3-2") {
        const auto& e = bundled_example("example-3-2");
        ExtractionResult ex = extract_fibration_data(load_model(e.text), e.assignment);
        CHECK(floor_multiple_class(ex, 7).is_zero());
        CHECK(floor_multiple_class(ex, 8) == ex.fiber_class);
    }
    SECTION("kappa != 1 is an error") {
        SurfaceModel m = load_model(
            "surface p1xp1\n"
            "curve F1 class=1,0 pa=0 boundary=yes\n"
            "curve F2 class=1,0 pa=0 boundary=yes\n"
            "curve H1 class=0,1 pa=0 boundary=yes\n"
            "curve H2 class=0,1 pa=0 boundary=yes\n"
            "flags affine=yes\n");
        FiberAssignment fa;
        fa.horizontal = {"H1", "H2"};
        fa.fiber_groups = {{"F1"}, {"F2"}};
        CHECK_THROWS_WITH(extract_fibration_data(m, fa),
                          Catch::Matchers::ContainsSubstring("kappa"));
    }
    SECTION("odd branch point counts are rejected") {
        const auto& e = bundled_example("prop-4-1");
        FiberAssignment fa = e.assignment;
        fa.branch_points = 3;
        CHECK_THROWS_WITH(extract_fibration_data(load_model(e.text), fa),
                          Catch::Matchers::ContainsSubstring("even"));
    }
    SECTION("unassigned boundary curves are rejected") {
        const auto& e = bundled_example("example-3-2");
        FiberAssignment fa = e.assignment;
        fa.fiber_groups.pop_back();
        CHECK_THROWS_WITH(extract_fibration_data(load_model(e.text), fa),
                          Catch::Matchers::ContainsSubstring("neither horizontal nor in a fiber group"));
    }
}

TEST_CASE("floor class on the contracted relatively minimal model agrees") {
    // Contract the exceptional cluster of example-3-2 down to the ruled model
    // and take the coefficientwise floor there: the class of
    // 7K + floor(7 C) must vanish, matching the fiber-wise computation.
    SurfaceModel m = load_model(bundled_example("example-3-2").text);
    PeelingResult peel = compute_bark(m);
    QDivisor dsharp = peel.dsharp;
    SurfaceModel w = m;
    for (const char* name : {"E2", "D3", "D1", "E3", "D5"}) {
        // D# pushes forward by dropping the contracted curve's term.
        dsharp.terms.erase(name);
        w = contract(w, name);
    }
    REQUIRE(w.lattice.rank() == 2);
    // C = pushforward of D#: H1 + H2 + F1 + (2/3)F2 + (1/2)F3 where the fiber
    // names survive as D2 and D4.
    CHECK(dsharp.coeff("D2") == Rational(2, 3));
    CHECK(dsharp.coeff("D4") == Rational(1, 2));
    QDivisor scaled = Rational(7) * dsharp;
    DivisorClass floor_class = w.class_of(scaled.floor());
    DivisorClass total = Rational(7) * w.lattice.canonical_class() + floor_class;
    CHECK(total.is_zero());
}
