#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "jbt/calculus.hpp"
#include "jbt/peirce.hpp"

using namespace jbt;
using jbt_test::elem;
using Catch::Approx;

namespace {
Element cube(const Element& x) { return triple_product(x, x, x); }
}  // namespace

TEST_CASE("triple spectrum lists singular values with multiplicities") {
    auto d3 = build_space(FactorSpec::diagonal(3));
    TripleSpectrum sp = triple_spectrum(elem(d3, {3.0, -1.0, 1.0}));
    REQUIRE(sp.values.size() == 2);
    CHECK(sp.values[0] == Approx(3.0));
    CHECK(sp.values[1] == Approx(1.0));
    CHECK(sp.multiplicities[0] == 1);
    CHECK(sp.multiplicities[1] == 2);

    auto m = jbt_test::m2();
    TripleSpectrum one = triple_spectrum(elem(m, {0.0, 2.0, 0.0, 0.0}));
    REQUIRE(one.values.size() == 1);
    CHECK(one.values[0] == Approx(2.0));
    CHECK(triple_spectrum(elem(m, {0.0, 0.0, 0.0, 0.0})).values.empty());
}

TEST_CASE("nearly equal singular values merge into one cluster") {
    auto d2 = build_space(FactorSpec::diagonal(2));
    TripleSpectrum sp = triple_spectrum(elem(d2, {1.0, 1.0 + 1e-13}));
    REQUIRE(sp.values.size() == 1);
    CHECK(sp.multiplicities[0] == 2);
}

TEST_CASE("odd calculus reproduces identity and odd powers") {
    Rng rng(41);
    for (auto spec : {FactorSpec::rectangular(2, 3), FactorSpec::q3(), FactorSpec::symmetric(3)}) {
        auto sp = build_space(spec);
        for (int t = 0; t < 10; ++t) {
            Element x = jbt_test::random_element(sp, rng);
            double scale = std::max(1.0, std::pow(x.norm(), 5));
            Element ident = odd_calculus(x, [](double s) { return s; });
            CHECK((ident - x).frob() < 1e-10 * scale);
            Element cubed = odd_calculus(x, [](double s) { return s * s * s; });
            CHECK((cubed - cube(x)).frob() < 1e-10 * scale);
            Element fifth = odd_calculus(x, [](double s) { return std::pow(s, 5); });
            CHECK((fifth - triple_product(x, x, cube(x))).frob() < 1e-9 * scale);
        }
    }
}

TEST_CASE("cubic root composes back to the argument") {
    Rng rng(42);
    for (auto spec : {FactorSpec::rectangular(2, 2), FactorSpec::antisymmetric(4)}) {
        auto sp = build_space(spec);
        for (int t = 0; t < 10; ++t) {
            Element x = jbt_test::random_element(sp, rng);
            Element y = cubic_root(x);
            CHECK((cube(y) - x).frob() < 1e-9 * std::max(1.0, x.frob()));
        }
    }
}

TEST_CASE("range tripotent of invertible diagonal elements is the identity") {
    auto d2 = build_space(FactorSpec::diagonal(2));
    RangeTripotent r = range_tripotent(elem(d2, {3.0, 1.0}));
    CHECK_FALSE(r.zero);
    CHECK((r.tripotent - elem(d2, {1.0, 1.0})).frob() < 1e-12);

    auto m = jbt_test::m2();
    RangeTripotent re = range_tripotent(elem(m, {0.0, 2.0, 0.0, 0.0}));
    CHECK((re.tripotent - elem(m, {0.0, 1.0, 0.0, 0.0})).frob() < 1e-12);

    RangeTripotent z = range_tripotent(elem(m, {0.0, 0.0, 0.0, 0.0}));
    CHECK(z.zero);
    CHECK(z.tripotent.frob() == 0.0);
}

TEST_CASE("range tripotent keeps phases and dominates its argument") {
    auto m = jbt_test::m2();
    Element x = elem(m, {Complex(0, 2), 0.0, 0.0, 0.5});
    RangeTripotent r = range_tripotent(x);
    CHECK((r.tripotent - elem(m, {Complex(0, 1), 0.0, 0.0, 1.0})).frob() < 1e-12);
    CHECK(is_tripotent(r.tripotent));
    PeirceSystem ps = peirce(r.tripotent);
    CHECK((ps.project(2, x) - x).frob() < 1e-10);
}

TEST_CASE("range tripotent matches iterated cubic roots") {
    Rng rng(43);
    for (auto spec : {FactorSpec::rectangular(2, 2), FactorSpec::q3(), FactorSpec::symmetric(2),
                      FactorSpec::diagonal(3)}) {
        auto sp = build_space(spec);
        for (int t = 0; t < 6; ++t) {
            Element x = jbt_test::random_element(sp, rng);
            RangeTripotent fast = range_tripotent(x);
            Element slow = iterated_cubic_root_tripotent(x);
            CHECK((fast.tripotent - slow).frob() < 1e-6);
        }
    }
}

TEST_CASE("odd calculus stays inside closed subspaces") {
    std::vector<Vec> gens{Vec::Unit(4, 0), Vec::Unit(4, 1)};
    auto sub = build_space(FactorSpec::subspace(FactorSpec::rectangular(2, 2), gens));
    Rng rng(44);
    for (int t = 0; t < 10; ++t) {
        Element x = jbt_test::random_element(sub, rng);
        CHECK_NOTHROW(odd_calculus(x, [](double s) { return s * s * s; }));
        CHECK_NOTHROW(range_tripotent(x));
    }
}

TEST_CASE("range tripotent of direct sums acts blockwise") {
    auto ds = build_space(
        FactorSpec::direct_sum({FactorSpec::diagonal(2), FactorSpec::rectangular(1, 2)}));
    Element x = elem(ds, {2.0, 0.0, 0.0, 3.0});
    RangeTripotent r = range_tripotent(x);
    CHECK((r.tripotent - elem(ds, {1.0, 0.0, 0.0, 1.0})).frob() < 1e-12);
    TripleSpectrum sp = triple_spectrum(x);
    REQUIRE(sp.values.size() == 2);
    CHECK(sp.values[0] == Approx(3.0));
    CHECK(sp.values[1] == Approx(2.0));
}
