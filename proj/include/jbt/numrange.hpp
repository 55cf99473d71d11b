#ifndef JBT_NUMRANGE_HPP
#define JBT_NUMRANGE_HPP

#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

#include "jbt/calculus.hpp"
#include "jbt/ideals.hpp"
#include "jbt/operators.hpp"

namespace jbt {

inline double space_norm(const Element& x) { return x.norm(); }

struct OptimizerBudget {
    int starts = 64;
    int steps = 200;
};

/// Result of a radius/norm maximization. value is a certified lower bound:
/// it is the exact objective value at witness.
struct RadiusEstimate {
    double value = 0.0;
    Element witness;
    double theta = 0.0;
    int starts_used = 0;
    bool converged = false;
    double tolerance = 1e-6;
    /// Coordinate-matrix upper bound, set by operator_norm.
    double upper_bound = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

/// Frame of the top singular cluster of a matrix (relative width 1e-10).
struct NormingFrame {
    Mat U1, V1;
    int mult = 0;
    double sigma1 = 0.0;
    double gap = 0.0;  ///< sigma1 - next distinct singular value
};

inline NormingFrame norming_frame(const AmbientSVD& svd) {
    NormingFrame f;
    if (svd.sigma.size() == 0) return f;
    f.sigma1 = svd.sigma(0);
    int m = 1;
    while (m < svd.sigma.size() && f.sigma1 - svd.sigma(m) <= 1e-10 * f.sigma1) ++m;
    f.mult = m;
    f.U1 = svd.U.leftCols(m);
    f.V1 = svd.V.leftCols(m);
    f.gap = (m < svd.sigma.size()) ? f.sigma1 - svd.sigma(m) : f.sigma1;
    return f;
}

struct SmallRadius {
    double value = 0.0;
    double theta = 0.0;
    Vec s;
};

/// Numerical radius of a small matrix as max over theta of the largest
/// eigenvalue of Herm(e^{i theta} C); coarse grid then golden-section.
inline SmallRadius small_numrad(const Mat& C, double theta_tol = 1e-6) {
    SmallRadius out;
    if (C.rows() == 1) {
        out.value = std::abs(C(0, 0));
        out.theta = (out.value > 0.0) ? -std::arg(C(0, 0)) : 0.0;
        out.s = Vec::Ones(1);
        return out;
    }
    auto lam = [&](double th) {
        Mat m = std::polar(1.0, th) * C;
        Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
        return es.eigenvalues().maxCoeff();
    };
    const int grid = 64;
    double best_th = 0.0, best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        double th = 2.0 * M_PI * i / grid;
        double v = lam(th);
        if (v > best) {
            best = v;
            best_th = th;
        }
    }
    double a = best_th - 2.0 * M_PI / grid, b = best_th + 2.0 * M_PI / grid;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = lam(c), fd = lam(d);
    while (b - a > theta_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = lam(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = lam(d);
        }
    }
    out.theta = 0.5 * (a + b);
    Mat m = std::polar(1.0, out.theta) * C;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m));
    int idx = 0;
    es.eigenvalues().maxCoeff(&idx);
    out.value = es.eigenvalues()(idx);
    out.s = es.eigenvectors().col(idx);
    return out;
}

inline int thread_count(int starts) {
    int n = 1;
    if (const char* env = std::getenv("JBT_THREADS")) {
        n = std::atoi(env);
        if (n < 1) n = 1;
    }
    return std::min(n, starts);
}

/// Deterministic start list: caller hints first (e.g. the witness of a
/// previous norm run, where the radius of an index-one operator is
/// attained), then identity-like and tripotent starts (the nonsmooth
/// extreme points the structured operators attain), then seeded random
/// units. Prefix-stable in the budget.
inline std::vector<Vec> start_points(const SpaceRef& space, std::uint64_t seed, int count,
                                     const std::vector<Vec>& hints = {}) {
    const TripleSpace& sp = *space;
    std::vector<Vec> starts;
    auto push_unit = [&](Vec c) {
        double n = spectral_norm(sp.ambient(c));
        if (n < 1e-12) return;
        c /= n;
        starts.push_back(std::move(c));
    };
    for (const Vec& h : hints) push_unit(h);
    if (sp.rows == sp.cols) push_unit(sp.coords(Mat::Identity(sp.rows, sp.cols)));
    for (int k = 0; k < sp.dim && static_cast<int>(starts.size()) < count; ++k) {
        RangeTripotent r = range_tripotent(Element{space, Vec::Unit(sp.dim, k)});
        if (!r.zero) push_unit(r.tripotent.x);
    }
    int t = 0;
    while (static_cast<int>(starts.size()) < count) {
        Rng rng = Rng::derive(seed, 500 + static_cast<std::uint64_t>(t));
        Vec g = rng.gaussian_vector(sp.dim);
        if (t % 2 == 0) {
            RangeTripotent r = range_tripotent(Element{space, g});
            if (!r.zero) push_unit(r.tripotent.x);
        } else {
            push_unit(g);
        }
        ++t;
    }
    if (static_cast<int>(starts.size()) > count) starts.resize(count);
    return starts;
}

struct AscentResult {
    double value = -1.0;
    Vec witness;
    double theta = 0.0;
    bool converged = false;
};

struct Evaluation {
    double value = 0.0;
    double theta = 0.0;
    Vec u, v;  ///< ambient norming pair
    Vec x;     ///< unit-normalized coordinates
};

/// Projected subgradient ascent with backtracking. eval(z) must return the
/// exact objective at z/||z|| together with the touching functional data
/// (u, v, theta); grad produces the coordinate ascent direction of
/// Re e^{i theta} u^* amb(T .) v. All acceptance tests are relative, so the
/// iterates are invariant under scaling of the operator.
template <class Objective, class Gradient>
AscentResult ascend(const Vec& start, int steps, Objective&& eval, Gradient&& grad) {
    AscentResult res;
    Evaluation ev = eval(start);
    res.value = ev.value;
    res.witness = ev.x;
    res.theta = ev.theta;
    for (int step = 0; step < steps; ++step) {
        Vec h = grad(ev);
        Complex overlap = ev.x.dot(h);
        h -= (overlap.real() / ev.x.squaredNorm()) * ev.x;
        double hn = h.norm();
        if (hn <= 1e-12 * std::max(1.0, res.value)) {
            res.converged = true;
            break;
        }
        h /= hn;
        bool improved = false;
        double alpha = 0.6;
        for (int ls = 0; ls < 14; ++ls, alpha *= 0.5) {
            Evaluation cand = eval(ev.x + alpha * h);
            if (cand.value > res.value * (1.0 + 1e-12) ||
                (res.value <= 0.0 && cand.value > res.value)) {
                ev = cand;
                res.value = cand.value;
                res.witness = cand.x;
                res.theta = cand.theta;
                improved = true;
                break;
            }
        }
        if (!improved) {
            res.converged = true;
            break;
        }
    }
    return res;
}

/// Conditional-gradient polish: at the current iterate, the touching
/// functional is linear in x, and its exact maximizer over the unit ball is
/// the range tripotent of the gradient element (dual-norm alignment). Runs
/// a few alternation rounds keeping the best exactly evaluated value; this
/// reaches the nonsmooth corners where subgradient steps stall.
template <class Objective, class Gradient>
void polish(const SpaceRef& space, AscentResult& res, int rounds, Objective&& eval,
            Gradient&& grad) {
    if (res.value <= 0.0) return;
    Evaluation ev = eval(res.witness);
    for (int round = 0; round < rounds; ++round) {
        Vec h = grad(ev);
        if (h.norm() <= 1e-14 * std::max(1.0, res.value)) break;
        RangeTripotent r = range_tripotent(Element{space, h});
        if (r.zero) break;
        Evaluation cand = eval(r.tripotent.x);
        if (cand.value > res.value) {
            res.value = cand.value;
            res.witness = cand.x;
            res.theta = cand.theta;
        }
        if ((cand.x - ev.x).norm() < 1e-12) break;
        ev = cand;
    }
}

/// Run all starts (parallel when JBT_THREADS > 1) and merge by value with
/// start order as tie-break, so the result is independent of thread count.
template <class RunStart>
AscentResult run_starts(const std::vector<Vec>& starts, RunStart&& run) {
    const int n = static_cast<int>(starts.size());
    std::vector<AscentResult> results(n);
    int threads = thread_count(n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) results[i] = run(starts[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    results[i] = run(starts[i]);
            });
        for (auto& th : pool) th.join();
    }
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (results[i].value > results[best].value) best = i;
    return results[best];
}

}  // namespace detail

/// One-sided derivative of t |-> ||x + t y|| at t = 0+ for a unit vector x:
/// the top eigenvalue of the Hermitian part of the compression of y onto the
/// top singular cluster of x. Cross-checked against Richardson-extrapolated
/// central differences whenever the top singular value is simple with a
/// clear gap (at nonsmooth points central differences measure a two-sided
/// average, not the one-sided derivative). Disagreement raises
/// OracleMismatch.
inline double dir_derivative(const Element& x, const Element& y) {
    require_same_space(x, y, "dir_derivative");
    Mat xa = x.ambient();
    detail::AmbientSVD svd = detail::thin_svd(xa);
    if (svd.sigma.size() == 0 || std::abs(svd.sigma(0) - 1.0) > 1e-6)
        throw NotUnitVector("dir_derivative: x must be a unit vector");
    detail::NormingFrame f = detail::norming_frame(svd);
    Mat ya = y.ambient();
    Mat comp = f.U1.adjoint() * ya * f.V1;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(comp), Eigen::EigenvaluesOnly);
    double exact = es.eigenvalues().maxCoeff();

    double yn = spectral_norm(ya);
    if (f.mult == 1 && f.gap > 1e-2 * std::max(1.0, yn)) {
        auto norm_at = [&](double t) { return spectral_norm(xa + t * ya); };
        auto central = [&](double h) { return (norm_at(h) - norm_at(-h)) / (2.0 * h); };
        double h = 1e-4;
        double fd = (4.0 * central(0.5 * h) - central(h)) / 3.0;
        if (std::abs(fd - exact) > 1e-5 * std::max(1.0, yn))
            throw OracleMismatch("dir_derivative: finite differences disagree");
    }
    return exact;
}

/// Numerical radius sup |phi(Tx)| over norming pairs (phi, x), by
/// multi-start projected subgradient ascent. The inner maximization at
/// fixed x is solved exactly through the compression onto the top singular
/// cluster. Requires a complex-linear operator.
inline RadiusEstimate numerical_radius(const RealLinearOperator& T, std::uint64_t seed = 0,
                                       OptimizerBudget budget = {},
                                       const std::vector<Vec>& hints = {}) {
    if (!T.is_complex_linear(1e-10))
        throw InvalidInput("numerical_radius: operator must be complex-linear");
    const TripleSpace& sp = *T.space;
    std::vector<Mat> tb(sp.dim);
    for (int j = 0; j < sp.dim; ++j) tb[j] = sp.ambient(T.A.col(j));

    auto eval = [&](const Vec& z) {
        detail::Evaluation ev;
        Mat za = sp.ambient(z);
        detail::AmbientSVD svd = detail::thin_svd(za);
        double n = svd.sigma(0);
        ev.x = z / n;
        svd.sigma /= n;
        detail::NormingFrame f = detail::norming_frame(svd);
        Mat y = sp.ambient(T.apply(ev.x));
        Mat comp = f.U1.adjoint() * y * f.V1;
        detail::SmallRadius sr = detail::small_numrad(comp);
        ev.value = sr.value;
        ev.theta = sr.theta;
        ev.u = f.U1 * sr.s;
        ev.v = f.V1 * sr.s;
        return ev;
    };
    auto grad = [&](const detail::Evaluation& ev) {
        Vec h(sp.dim);
        Complex phase = std::polar(1.0, ev.theta);
        for (int j = 0; j < sp.dim; ++j)
            h(j) = std::conj(phase * (ev.u.adjoint() * tb[j] * ev.v)(0, 0));
        return h;
    };

    std::vector<Vec> starts = detail::start_points(T.space, seed, budget.starts, hints);
    detail::AscentResult best = detail::run_starts(starts, [&](const Vec& s) {
        detail::AscentResult r = detail::ascend(s, budget.steps, eval, grad);
        detail::polish(T.space, r, 12, eval, grad);
        return r;
    });

    RadiusEstimate out;
    out.value = best.value;
    out.witness = Element{T.space, best.witness};
    out.theta = best.theta;
    out.starts_used = static_cast<int>(starts.size());
    out.converged = best.converged;
    return out;
}

/// Operator norm sup ||Tx|| over the unit sphere, same ascent scheme with
/// the top singular pair as touching functional. Handles conjugate-linear
/// parts. Also reports the coordinate upper bound
/// ||T|| <= frob_to_op * ||T||_coord.
inline RadiusEstimate operator_norm(const RealLinearOperator& T, std::uint64_t seed = 0,
                                    OptimizerBudget budget = {},
                                    const std::vector<Vec>& hints = {}) {
    const TripleSpace& sp = *T.space;
    std::vector<Mat> ta(sp.dim), tanti(sp.dim);
    bool has_anti = !T.B.isZero(0.0);
    for (int j = 0; j < sp.dim; ++j) {
        ta[j] = sp.ambient(T.A.col(j));
        if (has_anti) tanti[j] = sp.ambient(T.B.col(j));
    }

    auto eval = [&](const Vec& z) {
        detail::Evaluation ev;
        Mat za = sp.ambient(z);
        double n = spectral_norm(za);
        ev.x = z / n;
        Mat y = sp.ambient(T.apply(ev.x));
        detail::AmbientSVD svd = detail::thin_svd(y);
        ev.value = svd.sigma.size() ? svd.sigma(0) : 0.0;
        ev.u = svd.U.col(0);
        ev.v = svd.V.col(0);
        ev.theta = 0.0;
        return ev;
    };
    auto grad = [&](const detail::Evaluation& ev) {
        Vec h(sp.dim);
        for (int j = 0; j < sp.dim; ++j) {
            Complex c = (ev.u.adjoint() * ta[j] * ev.v)(0, 0);
            h(j) = std::conj(c);
            if (has_anti) h(j) += (ev.u.adjoint() * tanti[j] * ev.v)(0, 0);
        }
        return h;
    };

    std::vector<Vec> starts = detail::start_points(T.space, seed, budget.starts, hints);
    detail::AscentResult best = detail::run_starts(starts, [&](const Vec& s) {
        detail::AscentResult r = detail::ascend(s, budget.steps, eval, grad);
        detail::polish(T.space, r, 12, eval, grad);
        return r;
    });

    RadiusEstimate out;
    out.value = best.value;
    out.witness = Element{T.space, best.witness};
    out.theta = 0.0;
    out.starts_used = static_cast<int>(starts.size());
    out.converged = best.converged;
    out.upper_bound = sp.frob_to_op * T.coord_norm();
    return out;
}

/// Sampled points of the spatial numerical range at smooth unit vectors
/// (simple top singular value, so the norming functional is unique).
inline std::vector<Complex> numerical_range_sample(const RealLinearOperator& T, int n_points,
                                                   std::uint64_t seed = 0) {
    const TripleSpace& sp = *T.space;
    std::vector<Complex> pts;
    Rng rng = Rng::derive(seed, 29);
    int guard = 0;
    while (static_cast<int>(pts.size()) < n_points && guard < 100 * n_points) {
        ++guard;
        Vec z = rng.gaussian_vector(sp.dim);
        Mat za = sp.ambient(z);
        detail::AmbientSVD svd = detail::thin_svd(za);
        double s1 = svd.sigma(0);
        if (s1 < 1e-9) continue;
        if (svd.sigma.size() > 1 && svd.sigma(0) - svd.sigma(1) < 1e-3 * s1) continue;
        Vec x = z / s1;
        Mat y = sp.ambient(T.apply(x));
        pts.push_back((svd.U.col(0).adjoint() * y * svd.V.col(0))(0, 0));
    }
    return pts;
}

/// Upper-bound estimate of the numerical index inf v(T)/||T||, minimized
/// over structured witnesses (operators built from 2-nilpotents) and seeded
/// random complex-linear operators.
struct IndexEstimate {
    double value = 1.0;
    RealLinearOperator witness;
    std::string witness_kind;
    int operators_tested = 0;
    std::vector<double> ratios;
};

namespace detail {

struct IndexCandidate {
    RealLinearOperator op;
    std::string kind;
};

/// Multiplication-type operators built from a 2-nilpotent of a generic
/// inner ideal: the L(b,c) + L(c,b^#) construction, and L(b,e) when the
/// ideal's unit is unitary in the whole space.
inline void structured_candidates(const SpaceRef& space, std::uint64_t seed,
                                  std::vector<IndexCandidate>& out) {
    const TripleSpace& sp = *space;
    std::vector<Element> gens;
    if (sp.rows == sp.cols) {
        Vec c = sp.coords(Mat::Identity(sp.rows, sp.cols));
        double n = spectral_norm(sp.ambient(c));
        if (n > 1e-9) gens.push_back(Element{space, c / n});
    }
    Rng rng = Rng::derive(seed, 43);
    for (int t = 0; t < 2; ++t) {
        RangeTripotent r = range_tripotent(Element{space, rng.gaussian_vector(sp.dim)});
        if (!r.zero) gens.push_back(r.tripotent);
    }
    for (const Element& a : gens) {
        try {
            InnerIdealAlgebra alg = inner_ideal(a);
            auto cert = find_2nilpotent(alg, seed);
            if (!cert) continue;
            Element b = (1.0 / cert->norm) * cert->b;
            out.push_back({build_T_operator(a, b).T, "nilpotent-T"});
            if (is_unitary_tripotent(alg.unit, 1e-8)) out.push_back({L_op(b, alg.unit), "L(b,e)"});
            if (out.size() >= 4) break;
        } catch (const SearchFailed&) {
            continue;
        }
    }
}

}  // namespace detail

inline IndexEstimate numerical_index_estimate(const SpaceRef& space, std::uint64_t seed = 0,
                                              int n_random = 20,
                                              OptimizerBudget budget = {12, 120}) {
    const TripleSpace& sp = *space;
    std::vector<detail::IndexCandidate> cands;
    detail::structured_candidates(space, seed, cands);
    Rng rng = Rng::derive(seed, 41);
    for (int t = 0; t < n_random; ++t) {
        Mat A = rng.gaussian_matrix(sp.dim, sp.dim);
        A /= spectral_norm(A);
        cands.push_back({operator_from_matrix(space, A, Mat()), "random"});
    }

    IndexEstimate est;
    est.witness = RealLinearOperator::zero(space);
    bool first = true;
    for (const auto& cand : cands) {
        RadiusEstimate nrm = operator_norm(cand.op, seed, budget);
        if (nrm.value < 1e-9) continue;
        // The norm witness doubles as a radius start: on index-one spaces
        // the radius is attained exactly there. The radius witness in turn
        // gives a free norm improvement, since ||Tx|| >= |phi(Tx)|.
        RadiusEstimate rad = numerical_radius(cand.op, seed, budget, {nrm.witness.x});
        nrm.value = std::max(nrm.value, cand.op.apply(rad.witness).norm());
        double ratio = rad.value / nrm.value;
        est.ratios.push_back(ratio);
        ++est.operators_tested;
        if (first || ratio < est.value) {
            est.value = ratio;
            est.witness = cand.op;
            est.witness_kind = cand.kind;
            first = false;
        }
    }
    return est;
}

}  // namespace jbt

#endif
