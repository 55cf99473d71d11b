#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace jbt;
using jbt_test::elem;
using Catch::Approx;

TEST_CASE("canonical bases have the expected shape") {
    auto r22 = build_space(FactorSpec::rectangular(2, 2));
    REQUIRE(r22->dim == 4);
    REQUIRE(r22->rows == 2);
    REQUIRE(r22->cols == 2);
    CHECK(r22->basis[0](0, 0) == Complex(1, 0));
    CHECK(r22->basis[1](0, 1) == Complex(1, 0));
    CHECK(r22->basis[2](1, 0) == Complex(1, 0));
    CHECK(r22->basis[3](1, 1) == Complex(1, 0));

    CHECK(build_space(FactorSpec::symmetric(2))->dim == 3);
    CHECK(build_space(FactorSpec::symmetric(3))->dim == 6);
    CHECK(build_space(FactorSpec::antisymmetric(4))->dim == 6);
    CHECK(build_space(FactorSpec::diagonal(5))->dim == 5);

    auto q = jbt_test::q3();
    REQUIRE(q->dim == 3);
    CHECK(q->basis[0](0, 0).real() == Approx(1.0 / std::sqrt(2.0)));
    CHECK(q->basis[0](1, 1).real() == Approx(1.0 / std::sqrt(2.0)));
    CHECK(q->basis[1](0, 1) == Complex(1, 0));
    CHECK(q->basis[2](1, 0) == Complex(1, 0));
}

TEST_CASE("q3 coordinates of [[a,b],[g,a]]") {
    auto q = jbt_test::q3();
    Mat m(2, 2);
    Complex a(0.3, -0.1), b(1.5, 0.2), g(-0.7, 0.4);
    m << a, b, g, a;
    Vec c = q->coords(m);
    CHECK(std::abs(c(0) - a * std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(c(1) - b) < 1e-14);
    CHECK(std::abs(c(2) - g) < 1e-14);
    CHECK(q->span_residual(m) < 1e-14);
}

TEST_CASE("bases are trace-orthonormal and coords invert ambient") {
    Rng rng(2024);
    for (auto spec : {FactorSpec::rectangular(2, 3), FactorSpec::symmetric(3),
                      FactorSpec::antisymmetric(3), FactorSpec::q3(),
                      FactorSpec::direct_sum({FactorSpec::diagonal(2), FactorSpec::q3()})}) {
        auto sp = build_space(spec);
        for (int i = 0; i < sp->dim; ++i)
            for (int j = 0; j < sp->dim; ++j) {
                Complex g = trace_dot(sp->basis[i], sp->basis[j]);
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
        for (int t = 0; t < 5; ++t) {
            Vec c = rng.gaussian_vector(sp->dim);
            CHECK((sp->coords(sp->ambient(c)) - c).norm() < 1e-12);
            CHECK(std::abs(sp->ambient(c).norm() - c.norm()) < 1e-12);
        }
    }
}

TEST_CASE("triple product matches the ambient formula and stays inside") {
    Rng rng(7);
    auto sp = build_space(FactorSpec::symmetric(3));
    for (int t = 0; t < 20; ++t) {
        Element a = jbt_test::random_element(sp, rng);
        Element b = jbt_test::random_element(sp, rng);
        Element c = jbt_test::random_element(sp, rng);
        Mat direct = 0.5 * (a.ambient() * b.ambient().adjoint() * c.ambient() +
                            c.ambient() * b.ambient().adjoint() * a.ambient());
        CHECK((triple_product(a, b, c).ambient() - direct).norm() < 1e-10);
        CHECK(jbt_test::least_squares_residual(*sp, direct) < 1e-10);
    }
}

TEST_CASE("rank-one factor reproduces the Hilbert-space product") {
    auto h = build_space(FactorSpec::rectangular(1, 2));
    Element xi1 = elem(h, {1.0, 0.0});
    Element xi2 = elem(h, {0.0, 1.0});
    Element p = triple_product(xi1, xi1, xi2);
    CHECK((p - 0.5 * xi2).frob() < 1e-14);
    CHECK(triple_product(xi1, xi1, xi1).x(0) == Complex(1, 0));
}

TEST_CASE("triple product agrees with the Jordan-algebra formula on M2") {
    // {x,y,z} = (x o y*) o z + (z o y*) o x - (x o z) o y* with
    // u o v = (uv + vu)/2; certifies the representation carries the
    // JB*-algebra triple structure.
    Rng rng(99);
    auto sp = jbt_test::m2();
    auto jord = [](const Mat& u, const Mat& v) { return Mat(0.5 * (u * v + v * u)); };
    for (int t = 0; t < 20; ++t) {
        Mat x = rng.gaussian_matrix(2, 2), y = rng.gaussian_matrix(2, 2),
            z = rng.gaussian_matrix(2, 2);
        Mat ys = y.adjoint();
        Mat expected = jord(jord(x, ys), z) + jord(jord(z, ys), x) - jord(jord(x, z), ys);
        CHECK((triple_product_ambient(x, y, z) - expected).norm() < 1e-12);
    }
}

TEST_CASE("spectral norm rules") {
    auto d2 = build_space(FactorSpec::diagonal(2));
    CHECK(elem(d2, {3.0, -4.0}).norm() == Approx(4.0));

    Rng rng(5);
    auto sp = build_space(FactorSpec::rectangular(2, 3));
    for (int t = 0; t < 30; ++t) {
        Element a = jbt_test::random_element(sp, rng);
        Element b = jbt_test::random_element(sp, rng);
        CHECK((a + b).norm() <= a.norm() + b.norm() + 1e-12);
        CHECK((Complex(0.0, -2.5) * a).norm() == Approx(2.5 * a.norm()));
        double cube = triple_product(a, a, a).norm();
        CHECK(cube == Approx(std::pow(a.norm(), 3)).epsilon(1e-8));
    }
}

TEST_CASE("direct sums take the max norm across blocks") {
    auto sum = build_space(FactorSpec::direct_sum({FactorSpec::diagonal(1), FactorSpec::rectangular(2, 2)}));
    REQUIRE(sum->dim == 5);
    REQUIRE(sum->rows == 3);
    REQUIRE(sum->cols == 3);
    Element x = elem(sum, {0.3, 1.0, 0.0, 0.0, 0.0});
    CHECK(x.norm() == Approx(1.0));
    Element y = elem(sum, {2.0, 1.0, 0.0, 0.0, 0.0});
    CHECK(y.norm() == Approx(2.0));
}

TEST_CASE("subspace closure is decided by the exhaustive basis check") {
    auto r22 = FactorSpec::rectangular(2, 2);
    // span{E11, E12}: the first-row copy of the 1x2 factor, closed.
    std::vector<Vec> row;
    row.push_back(Vec::Unit(4, 0));
    row.push_back(Vec::Unit(4, 1));
    auto sub = build_space(FactorSpec::subspace(r22, row));
    CHECK(sub->dim == 2);
    Element xi1{sub, Vec::Unit(2, 0)}, xi2{sub, Vec::Unit(2, 1)};
    CHECK((triple_product(xi1, xi1, xi2) - 0.5 * xi2).frob() < 1e-12);

    // span{E11, E12+E21} is not closed: {s,E11,s} = E22 escapes.
    std::vector<Vec> bad;
    bad.push_back(Vec::Unit(4, 0));
    Vec s = Vec::Zero(4);
    s(1) = s(2) = 1.0;
    bad.push_back(s);
    CHECK_THROWS_AS(build_space(FactorSpec::subspace(r22, bad)), SubspaceNotClosed);
}

TEST_CASE("degenerate subspace spans are rejected") {
    auto r22 = FactorSpec::rectangular(2, 2);
    std::vector<Vec> dep;
    dep.push_back(Vec::Unit(4, 0));
    dep.push_back(2.0 * Vec::Unit(4, 0));
    CHECK_THROWS_AS(build_space(FactorSpec::subspace(r22, dep)), DegenerateBasis);

    CHECK_THROWS_AS(build_space(FactorSpec::rectangular(0, 2)), InvalidInput);
    CHECK_THROWS_AS(build_space(FactorSpec::antisymmetric(1)), InvalidInput);
}

TEST_CASE("subspaces orthonormalize while preserving order") {
    auto r22 = FactorSpec::rectangular(2, 2);
    std::vector<Vec> span;
    Vec v0 = Vec::Zero(4);
    v0(0) = 2.0;
    Vec v1 = Vec::Zero(4);
    v1(0) = 1.0;
    v1(1) = 1.0;
    span.push_back(v0);
    span.push_back(v1);
    auto sub = build_space(FactorSpec::subspace(r22, span));
    REQUIRE(sub->dim == 2);
    CHECK((sub->basis[0] - jbt_test::m2()->basis[0]).norm() < 1e-12);
    CHECK((sub->basis[1] - jbt_test::m2()->basis[1]).norm() < 1e-12);
}

TEST_CASE("elements of different spaces do not mix") {
    auto a = jbt_test::m2();
    auto b = jbt_test::m2();  // same spec, distinct space object
    Element x{a, Vec::Unit(4, 0)};
    Element y{b, Vec::Unit(4, 0)};
    CHECK_THROWS_AS(x + y, SpaceMismatch);
    CHECK_THROWS_AS(triple_product(x, x, y), SpaceMismatch);
    CHECK_THROWS_AS(make_element(a, Vec::Zero(3)), SpaceMismatch);
}

TEST_CASE("nested composites build") {
    auto spec = FactorSpec::direct_sum(
        {FactorSpec::diagonal(2),
         FactorSpec::subspace(FactorSpec::rectangular(2, 2),
                              {Vec(Vec::Unit(4, 0)), Vec(Vec::Unit(4, 1))})});
    auto sp = build_space(spec);
    CHECK(sp->dim == 4);
    CHECK(sp->rows == 4);
    CHECK(sp->cols == 4);
}
