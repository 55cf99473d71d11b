#ifndef JBT_TEST_HELPERS_HPP
#define JBT_TEST_HELPERS_HPP

#include "jbt/space.hpp"

namespace jbt_test {

using namespace jbt;

inline SpaceRef m2() { return build_space(FactorSpec::rectangular(2, 2)); }
inline SpaceRef q3() { return build_space(FactorSpec::q3()); }

inline Element elem(const SpaceRef& s, std::initializer_list<Complex> coords) {
    Vec c(s->dim);
    int i = 0;
    for (Complex v : coords) c(i++) = v;
    return Element{s, c};
}

inline Element random_element(const SpaceRef& s, Rng& rng) {
    return Element{s, rng.gaussian_vector(s->dim)};
}

inline Element random_unit(const SpaceRef& s, Rng& rng) {
    Element e = random_element(s, rng);
    double n = e.norm();
    while (n < 1e-6) {
        e = random_element(s, rng);
        n = e.norm();
    }
    return (1.0 / n) * e;
}

/// Distance from m to the span of the basis, via least squares on the
/// stacked ambient vectors; independent of the trace-pairing projection.
inline double least_squares_residual(const TripleSpace& sp, const Mat& m) {
    Mat stacked(sp.rows * sp.cols, sp.dim);
    for (int k = 0; k < sp.dim; ++k)
        stacked.col(k) = Eigen::Map<const Vec>(sp.basis[k].data(), sp.rows * sp.cols);
    Vec target = Eigen::Map<const Vec>(m.data(), sp.rows * sp.cols);
    Vec sol = stacked.completeOrthogonalDecomposition().solve(target);
    return (stacked * sol - target).norm();
}

}  // namespace jbt_test

#endif
