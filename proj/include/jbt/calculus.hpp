#ifndef JBT_CALCULUS_HPP
#define JBT_CALCULUS_HPP

#include <functional>
#include <vector>

#include "jbt/space.hpp"

namespace jbt {

/// Distinct singular values of the ambient matrix (the triple spectrum),
/// descending, zeros dropped, near-ties clustered.
struct TripleSpectrum {
    std::vector<double> values;
    std::vector<int> multiplicities;
};

namespace detail {

struct AmbientSVD {
    Mat U;
    Mat V;
    RVec sigma;
};

inline AmbientSVD thin_svd(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.matrixV(), svd.singularValues()};
}

/// Group indices of a descending singular-value list into clusters whose
/// internal gaps are at most width. Values at or below floor are dropped.
inline std::vector<std::vector<int>> cluster_singular_values(const RVec& sigma, double width,
                                                             double floor) {
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < sigma.size(); ++i) {
        if (sigma(i) <= floor) break;
        if (!clusters.empty() && sigma(clusters.back().back()) - sigma(i) <= width)
            clusters.back().push_back(i);
        else
            clusters.push_back({i});
    }
    return clusters;
}

}  // namespace detail

inline TripleSpectrum triple_spectrum(const Element& x, double rank_tol = 1e-10) {
    detail::AmbientSVD svd = detail::thin_svd(x.ambient());
    TripleSpectrum ts;
    if (svd.sigma.size() == 0 || svd.sigma(0) <= 0.0) return ts;
    double s1 = svd.sigma(0);
    auto clusters = detail::cluster_singular_values(svd.sigma, 1e-10 * s1, rank_tol * s1);
    for (const auto& c : clusters) {
        double mean = 0.0;
        for (int i : c) mean += svd.sigma(i);
        ts.values.push_back(mean / static_cast<double>(c.size()));
        ts.multiplicities.push_back(static_cast<int>(c.size()));
    }
    return ts;
}

/// Odd functional calculus: x = U diag(sigma) V^* maps to U diag(f(sigma)) V^*.
/// Singular values are clustered (relative width 1e-10) and f is applied to
/// cluster means, so exact ties keep block structure; sigma below the noise
/// floor 1e-14*sigma_max is treated as an exact zero. Raises ResultLeftSpace
/// if the result fails to live in the space.
inline Element odd_calculus(const Element& x, const std::function<double(double)>& f) {
    const TripleSpace& sp = *x.space;
    Mat xm = x.ambient();
    detail::AmbientSVD svd = detail::thin_svd(xm);
    Mat result = Mat::Zero(sp.rows, sp.cols);
    if (svd.sigma.size() > 0 && svd.sigma(0) > 0.0) {
        double s1 = svd.sigma(0);
        auto clusters = detail::cluster_singular_values(svd.sigma, 1e-10 * s1, 1e-14 * s1);
        for (const auto& c : clusters) {
            double mean = 0.0;
            for (int i : c) mean += svd.sigma(i);
            mean /= static_cast<double>(c.size());
            double fv = f(mean);
            if (fv == 0.0) continue;
            for (int i : c) result += fv * (svd.U.col(i) * svd.V.col(i).adjoint());
        }
    }
    double scale = std::max(1.0, result.norm());
    if (sp.span_residual(result) > 1e-9 * scale)
        throw ResultLeftSpace("odd_calculus: image left the space");
    return Element{x.space, sp.coords(result)};
}

/// Triple-cube root: {y,y,y} = x.
inline Element cubic_root(const Element& x) {
    return odd_calculus(x, [](double t) { return std::cbrt(t); });
}

/// Range tripotent r(x) with a zero flag instead of an exception for x = 0.
struct RangeTripotent {
    Element tripotent;
    bool zero = false;
};

/// Polar construction of the range tripotent: the partial isometry U1 V1^*
/// over singular values above rank_tol * sigma_max (thresholds snapped to
/// cluster boundaries so exact ties are kept together). Validates the
/// tripotent identity and positivity of x in the associated Peirce-2 space.
inline RangeTripotent range_tripotent(const Element& x, double rank_tol = 1e-10) {
    const TripleSpace& sp = *x.space;
    Mat xm = x.ambient();
    detail::AmbientSVD svd = detail::thin_svd(xm);
    if (svd.sigma.size() == 0 || svd.sigma(0) <= 1e-300)
        return {Element{x.space, Vec::Zero(sp.dim)}, true};
    double s1 = svd.sigma(0);
    auto clusters = detail::cluster_singular_values(svd.sigma, 1e-10 * s1, 1e-14 * s1);
    Mat e = Mat::Zero(sp.rows, sp.cols);
    int rank = 0;
    for (const auto& c : clusters) {
        if (svd.sigma(c.front()) <= rank_tol * s1) break;
        for (int i : c) {
            e += svd.U.col(i) * svd.V.col(i).adjoint();
            ++rank;
        }
    }
    if (sp.span_residual(e) > 1e-9 * std::max(1.0, e.norm()))
        throw ResultLeftSpace("range_tripotent: image left the space");
    Element r{x.space, sp.coords(e)};

    Mat u1 = svd.U.leftCols(rank);
    Mat v1 = svd.V.leftCols(rank);
    Mat compression = u1.adjoint() * xm * v1;
    double eps = 1e-8 * s1;
    if ((compression - compression.adjoint()).norm() > eps)
        throw InconsistentCharacterization("range_tripotent: compression of x is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(compression), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eps)
        throw InconsistentCharacterization("range_tripotent: x is not positive in its Peirce-2 space");
    Mat cube = triple_product_ambient(e, e, e);
    if ((cube - e).norm() > 1e-8 * std::max(1.0, e.norm()))
        throw InconsistentCharacterization("range_tripotent: result is not a tripotent");
    return {std::move(r), false};
}

/// Slow-path oracle: r(x) as the limit of iterated triple-cube roots,
/// x^(1/3^n). Used by tests to certify the polar construction.
inline Element iterated_cubic_root_tripotent(const Element& x, int iterations = 20) {
    Element y = x;
    for (int i = 0; i < iterations; ++i) y = cubic_root(y);
    return y;
}

}  // namespace jbt

#endif
