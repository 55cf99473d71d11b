#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "jbt/ideals.hpp"

using namespace jbt;
using jbt_test::elem;
using Catch::Approx;

namespace {
Element unit_elem(const SpaceRef& s, int k) { return Element{s, Vec::Unit(s->dim, k)}; }
}  // namespace

TEST_CASE("inner ideal of an invertible element is the whole factor") {
    auto m = jbt_test::m2();
    Element eye = elem(m, {1.0, 0.0, 0.0, 1.0});
    InnerIdealAlgebra alg = inner_ideal(eye);
    CHECK(alg.dim == 4);
    CHECK((alg.unit - eye).frob() < 1e-12);
    CHECK(alg.rank == 2);
    double res = 0.0;
    alg.to_alg(unit_elem(m, 1), &res);
    CHECK(res < 1e-12);
}

TEST_CASE("inner ideal of a rank-one element is a line") {
    auto rect = build_space(FactorSpec::rectangular(1, 2));
    InnerIdealAlgebra alg = inner_ideal(unit_elem(rect, 0));
    CHECK(alg.dim == 1);
    CHECK((alg.unit - unit_elem(rect, 0)).frob() < 1e-12);

    auto m = jbt_test::m2();
    InnerIdealAlgebra line = inner_ideal(unit_elem(m, 1));
    CHECK(line.dim == 1);
    Element x = 3.0 * unit_elem(m, 1);
    CHECK((line.product(x, x) - 9.0 * unit_elem(m, 1)).frob() < 1e-12);
}

TEST_CASE("inner ideal of a singular diagonal keeps only its support") {
    auto d3 = build_space(FactorSpec::diagonal(3));
    Element a = elem(d3, {1.0, 2.0, 0.0});
    InnerIdealAlgebra alg = inner_ideal(a);
    CHECK(alg.dim == 2);
    CHECK((alg.unit - elem(d3, {1.0, 1.0, 0.0})).frob() < 1e-12);
    double res = 0.0;
    alg.to_alg(elem(d3, {5.0, -7.0, 0.0}), &res);
    CHECK(res < 1e-12);
    alg.to_alg(elem(d3, {0.0, 0.0, 1.0}), &res);
    CHECK(res == Approx(1.0));
    CHECK(alg.is_associative());

    CHECK_THROWS_AS(inner_ideal(elem(d3, {0.0, 0.0, 0.0})), ZeroGenerator);
}

TEST_CASE("compression is a unital star homomorphism on the inner ideal") {
    Rng rng(51);
    for (auto spec : {FactorSpec::rectangular(2, 2), FactorSpec::q3(), FactorSpec::symmetric(2)}) {
        auto sp = build_space(spec);
        Element a = jbt_test::random_element(sp, rng);
        InnerIdealAlgebra alg = inner_ideal(a);
        CHECK((alg.phi(alg.unit) - Mat::Identity(alg.rank, alg.rank)).norm() < 1e-9);
        for (int t = 0; t < 5; ++t) {
            Element x = alg.from_alg(rng.gaussian_vector(alg.dim));
            Element y = alg.from_alg(rng.gaussian_vector(alg.dim));
            Mat lhs = alg.phi(alg.product(x, y));
            Mat rhs = 0.5 * (alg.phi(x) * alg.phi(y) + alg.phi(y) * alg.phi(x));
            CHECK((lhs - rhs).norm() < 1e-8 * std::max(1.0, rhs.norm()));
            CHECK((alg.phi(alg.involution(x)) - alg.phi(x).adjoint()).norm() < 1e-9);
        }
    }
}

TEST_CASE("multiplication and involution matrices act on coordinates") {
    Rng rng(52);
    auto m = jbt_test::m2();
    Element a = jbt_test::random_element(m, rng);
    InnerIdealAlgebra alg = inner_ideal(a);
    Mat J = alg.invol_matrix();
    for (int t = 0; t < 5; ++t) {
        Vec xc = rng.gaussian_vector(alg.dim), yc = rng.gaussian_vector(alg.dim);
        Element x = alg.from_alg(xc), y = alg.from_alg(yc);
        CHECK((alg.mult_matrix(x) * yc - alg.to_alg(alg.product(x, y))).norm() < 1e-10);
        CHECK((J * xc.conjugate() - alg.to_alg(alg.involution(x))).norm() < 1e-10);
    }
}

TEST_CASE("associativity defect separates diagonal from full factors") {
    auto d3 = build_space(FactorSpec::diagonal(3));
    CHECK(inner_ideal(elem(d3, {1.0, 1.0, 1.0})).assoc_defect() < 1e-12);
    auto m = jbt_test::m2();
    InnerIdealAlgebra full = inner_ideal(elem(m, {1.0, 0.0, 0.0, 1.0}));
    CHECK(full.assoc_defect() > 0.1);
    CHECK_FALSE(full.is_associative());
    CHECK(full.nilpotency_residual(unit_elem(m, 1)) < 1e-12);
    CHECK(full.nilpotency_residual(unit_elem(m, 0)) == Approx(1.0));
}

TEST_CASE("two-nilpotents exist exactly in non-associative inner ideals") {
    auto m = jbt_test::m2();
    auto cert = find_2nilpotent(elem(m, {1.0, 0.0, 0.0, 1.0}));
    REQUIRE(cert.has_value());
    CHECK(cert->certified());
    CHECK(cert->norm > 1e-6);

    auto q = jbt_test::q3();
    auto qcert = find_2nilpotent(elem(q, {1.0, 0.0, 0.0}));
    REQUIRE(qcert.has_value());
    CHECK(qcert->certified());

    auto s2 = build_space(FactorSpec::symmetric(2));
    auto scert = find_2nilpotent(elem(s2, {0.0, 0.0, 1.0}));
    REQUIRE(scert.has_value());
    CHECK(scert->certified());

    auto d3 = build_space(FactorSpec::diagonal(3));
    CHECK_FALSE(find_2nilpotent(elem(d3, {1.0, 1.0, 1.0})).has_value());
    auto rect = build_space(FactorSpec::rectangular(1, 2));
    CHECK_FALSE(find_2nilpotent(unit_elem(rect, 0)).has_value());
}

TEST_CASE("nilpotent search succeeds on random invertible generators") {
    Rng rng(53);
    for (auto spec : {FactorSpec::rectangular(2, 2), FactorSpec::symmetric(2),
                      FactorSpec::antisymmetric(4)}) {
        auto sp = build_space(spec);
        for (int t = 0; t < 3; ++t) {
            Element a = jbt_test::random_element(sp, rng);
            InnerIdealAlgebra alg = inner_ideal(a);
            if (alg.is_associative()) continue;
            auto cert = find_2nilpotent(alg, 7 + t);
            REQUIRE(cert.has_value());
            CHECK(cert->certified());
            double res = 0.0;
            alg.to_alg(cert->b, &res);
            CHECK(res < 1e-6 * cert->norm);
        }
    }
}

TEST_CASE("range inclusion defect flags Hilbert directions") {
    auto rect = build_space(FactorSpec::rectangular(1, 2));
    RangeInclusionDefect d = laa_range_defect(unit_elem(rect, 0));
    CHECK(d.defect == Approx(0.5).margin(1e-10));
    CHECK(d.witness_index == 1);
    CHECK_FALSE(check_Laa_in_Ea(unit_elem(rect, 0)));

    auto d3 = build_space(FactorSpec::diagonal(3));
    CHECK(check_Laa_in_Ea(elem(d3, {1.0, 2.0, 0.0})));
    CHECK_THROWS_AS(check_Laa_in_Ea(elem(d3, {0.0, 0.0, 0.0})), ZeroGenerator);

    auto m = jbt_test::m2();
    CHECK_FALSE(check_Laa_in_Ea(unit_elem(m, 0)));
    CHECK(check_Laa_in_Ea(elem(m, {1.0, 0.0, 0.0, 1.0})));
}

TEST_CASE("T operator construction on the full two-by-two factor") {
    auto m = jbt_test::m2();
    Element eye = elem(m, {1.0, 0.0, 0.0, 1.0});
    Element b = unit_elem(m, 1);
    TOperator top = build_T_operator(eye, b);
    CHECK((top.b_sharp - unit_elem(m, 2)).frob() < 1e-12);
    CHECK((top.c - elem(m, {0.5, 0.0, 0.0, 0.5})).frob() < 1e-12);
    CHECK((top.b_cubed - b).frob() < 1e-12);
    Element image = top.T.apply(eye);
    CHECK(image.frob() > 0.1);

    CHECK_THROWS_AS(build_T_operator(eye, unit_elem(m, 0)), NotNilpotent);
    CHECK_THROWS_AS(build_T_operator(eye, 2.0 * b), InvalidInput);
    CHECK_THROWS_AS(build_T_operator(unit_elem(m, 0), b), InvalidInput);
}

TEST_CASE("T operator construction on the three dimensional spin example") {
    auto q = jbt_test::q3();
    Element a = elem(q, {1.0, 0.0, 0.0});
    Element b = elem(q, {0.0, 0.0, 1.0});
    TOperator top = build_T_operator(a, b);
    CHECK((top.b_sharp - elem(q, {0.0, 1.0, 0.0})).frob() < 1e-12);
    CHECK((top.c - elem(q, {1.0 / std::sqrt(2.0), 0.0, 0.0})).frob() < 1e-12);
    CHECK((top.b_cubed - b).frob() < 1e-12);
}

TEST_CASE("the subalgebra generated by a nilpotent carries the sl2 table") {
    auto m = jbt_test::m2();
    Element eye = elem(m, {1.0, 0.0, 0.0, 1.0});
    InnerIdealAlgebra alg = inner_ideal(eye);
    Element u = unit_elem(m, 1);
    Mat basis = generated_subalgebra(alg, u);
    CHECK(basis.cols() == 3);

    Element v = alg.involution(u);
    Element w = 2.0 * alg.product(u, v);
    CHECK(alg.product(u, u).frob() < 1e-12);
    CHECK(alg.product(v, v).frob() < 1e-12);
    CHECK((alg.product(w, w) - w).frob() < 1e-12);
    CHECK((alg.product(w, u) - u).frob() < 1e-12);
    CHECK((alg.product(w, v) - v).frob() < 1e-12);
    CHECK((2.0 * alg.product(u, v) - w).frob() < 1e-12);

    auto q = jbt_test::q3();
    InnerIdealAlgebra qalg = inner_ideal(elem(q, {1.0, 0.0, 0.0}));
    CHECK(generated_subalgebra(qalg, elem(q, {0.0, 0.0, 1.0})).cols() == 3);
}

TEST_CASE("commutativity report on commutative spaces") {
    for (auto spec : {FactorSpec::diagonal(3),
                      FactorSpec::direct_sum({FactorSpec::diagonal(2), FactorSpec::diagonal(1)})}) {
        CommutativityReport rep = commutativity_report(build_space(spec));
        for (const ItemReport* item : rep.items()) {
            INFO(item->id);
            CHECK(item->holds);
        }
        CHECK(rep.commutator_defect < 1e-10);
        CHECK_FALSE(rep.nilpotent.has_value());
        CHECK(rep.tripotents_sampled > 0);
        CHECK(rep.generators_checked > 0);
    }
}

TEST_CASE("commutativity report on full factors fails every item") {
    for (auto spec : {FactorSpec::rectangular(2, 2), FactorSpec::q3(), FactorSpec::symmetric(2),
                      FactorSpec::antisymmetric(4)}) {
        CommutativityReport rep = commutativity_report(build_space(spec));
        for (const ItemReport* item : rep.items()) {
            INFO(item->id);
            CHECK_FALSE(item->holds);
        }
        CHECK(rep.nilpotent.has_value());
        CHECK(rep.nilpotent->certified());
    }
}

TEST_CASE("commutativity report separates the split items on Hilbert pieces") {
    for (auto spec : {FactorSpec::rectangular(1, 2),
                      FactorSpec::direct_sum({FactorSpec::diagonal(2), FactorSpec::rectangular(1, 2)})}) {
        CommutativityReport rep = commutativity_report(build_space(spec));
        CHECK_FALSE(rep.item_i.holds);
        CHECK_FALSE(rep.item_ix.holds);
        CHECK_FALSE(rep.item_x.holds);
        CHECK_FALSE(rep.item_xi.holds);
        CHECK(rep.item_xii.holds);
        CHECK(rep.item_xiii.holds);
        CHECK_FALSE(rep.item_xiv.holds);
        CHECK_FALSE(rep.nilpotent.has_value());
    }
}
