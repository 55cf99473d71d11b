#ifndef JBT_PEIRCE_HPP
#define JBT_PEIRCE_HPP

#include <array>
#include <vector>

#include "jbt/operators.hpp"

namespace jbt {

/// Orthogonality a _|_ b, decided by L(a,b) = 0 and cross-checked against
/// the equivalent conditions {a,a,b} = 0 and {b,b,a} = 0. A strong
/// disagreement between the three tests indicates an implementation bug and
/// raises InconsistentCharacterization.
inline bool is_orthogonal(const Element& a, const Element& b, double tol) {
    require_same_space(a, b, "is_orthogonal");
    double r_l = L_op(a, b).coord_norm();
    double r_a = triple_product(a, a, b).frob();
    double r_b = triple_product(b, b, a).frob();
    double scale = (1.0 + a.frob()) * (1.0 + b.frob());
    double zero = tol * scale;
    double nonzero = 1e4 * std::max(tol, 1e-12) * scale;
    auto state = [&](double r) { return r <= zero ? 0 : (r >= nonzero ? 1 : -1); };
    int sl = state(r_l), sa = state(r_a), sb = state(r_b);
    if ((sl == 0 && (sa == 1 || sb == 1)) || (sl == 1 && (sa == 0 || sb == 0)) ||
        (sa == 0 && sb == 1) || (sa == 1 && sb == 0))
        throw InconsistentCharacterization("orthogonality tests disagree");
    return r_l <= zero;
}
inline bool is_orthogonal(const Element& a, const Element& b) {
    return is_orthogonal(a, b, a.space->tol);
}

/// Peirce decomposition attached to a tripotent e: projections onto the
/// eigenspaces of L(e,e) at 1, 1/2, 0.
struct PeirceSystem {
    Element tripotent;
    RealLinearOperator P2, P1, P0;
    int rank2 = 0, rank1 = 0, rank0 = 0;

    const RealLinearOperator& projection(int part) const {
        switch (part) {
            case 2: return P2;
            case 1: return P1;
            case 0: return P0;
        }
        throw InvalidInput("Peirce part must be 0, 1 or 2");
    }
    Element project(int part, const Element& x) const { return projection(part).apply(x); }
};

namespace detail {

/// Representative basis indices for sampled identities; exhaustive on small
/// spaces, strided otherwise.
inline std::vector<int> sample_indices(int dim, int cap = 5) {
    std::vector<int> idx;
    if (dim <= cap) {
        for (int i = 0; i < dim; ++i) idx.push_back(i);
        return idx;
    }
    for (int t = 0; t < cap; ++t) {
        int i = static_cast<int>(static_cast<long long>(t) * (dim - 1) / (cap - 1));
        if (idx.empty() || idx.back() != i) idx.push_back(i);
    }
    return idx;
}

inline void check_peirce_arithmetic(const TripleSpace& sp, const PeirceSystem& ps, double eps) {
    std::vector<int> idx = sample_indices(sp.dim);
    std::array<std::vector<Mat>, 3> parts;
    for (int part = 0; part < 3; ++part)
        for (int i : idx) {
            Vec c = ps.projection(part).apply(Vec(Vec::Unit(sp.dim, i)));
            parts[part].push_back(sp.ambient(c));
        }
    auto part_residual = [&](const Mat& m, int part) {
        Vec c = ps.projection(part).apply(sp.coords(m));
        return (m - sp.ambient(c)).norm();
    };
    const int n = static_cast<int>(idx.size());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                int target = i - j + k;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c) {
                            Mat p = triple_product_ambient(parts[i][a], parts[j][b], parts[k][c]);
                            double r = (target >= 0 && target <= 2) ? part_residual(p, target)
                                                                    : p.norm();
                            if (r > eps)
                                throw InconsistentCharacterization(
                                    "Peirce arithmetic violated on basis sample");
                        }
            }
    // {E2, E0, E} = {E0, E2, E} = 0.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int i : idx) {
                Mat z1 = triple_product_ambient(parts[2][a], parts[0][b], sp.basis[i]);
                Mat z2 = triple_product_ambient(parts[0][a], parts[2][b], sp.basis[i]);
                if (z1.norm() > eps || z2.norm() > eps)
                    throw InconsistentCharacterization("E2/E0 annihilation violated");
            }
}

}  // namespace detail

/// Peirce projections of a tripotent, built from the polynomial formulas
/// P2 = L(2L - Id), P1 = 4L(Id - L), P0 = (Id - L)(Id - 2L) with L = L(e,e),
/// and cross-validated against the eigenprojections of the (Hermitian)
/// coordinate matrix of L. Raises NotATripotent when {e,e,e} != e.
inline PeirceSystem peirce(const Element& e, double tol) {
    const TripleSpace& sp = *e.space;
    if (!is_tripotent(e, tol)) throw NotATripotent("peirce: {e,e,e} != e within tolerance");
    const int d = sp.dim;
    Mat L = L_op(e, e).A;
    const Mat id = Mat::Identity(d, d);

    PeirceSystem ps;
    ps.tripotent = e;
    ps.P2 = operator_from_matrix(e.space, L * (2.0 * L - id), Mat());
    ps.P1 = operator_from_matrix(e.space, 4.0 * L * (id - L), Mat());
    ps.P0 = operator_from_matrix(e.space, (id - L) * (id - 2.0 * L), Mat());

    const double eps = std::max(1e-7, 10.0 * tol);
    if ((L - L.adjoint()).norm() > eps)
        throw InconsistentCharacterization("L(e,e) is not Hermitian in coordinates");
    for (int part = 0; part < 3; ++part) {
        const Mat& p = ps.projection(part).A;
        if ((p * p - p).norm() > eps)
            throw InconsistentCharacterization("Peirce projection is not idempotent");
    }
    if ((ps.P2.A + ps.P1.A + ps.P0.A - id).norm() > eps)
        throw InconsistentCharacterization("Peirce projections do not sum to the identity");
    if ((L - ps.P2.A - 0.5 * ps.P1.A).norm() > eps)
        throw InconsistentCharacterization("L(e,e) != P2 + P1/2");

    // Eigensolver cross-check: spectrum clusters to {0, 1/2, 1} and the
    // spectral projections match the polynomial ones.
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(L));
    Mat pi[3] = {Mat::Zero(d, d), Mat::Zero(d, d), Mat::Zero(d, d)};
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < d; ++i) {
        double lam = es.eigenvalues()(i);
        int part;
        if (std::abs(lam) <= eps)
            part = 0;
        else if (std::abs(lam - 0.5) <= eps)
            part = 1;
        else if (std::abs(lam - 1.0) <= eps)
            part = 2;
        else
            throw InconsistentCharacterization("L(e,e) eigenvalue outside {0, 1/2, 1}");
        pi[part] += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        ++counts[part];
    }
    if ((ps.P2.A - pi[2]).norm() > eps || (ps.P1.A - pi[1]).norm() > eps ||
        (ps.P0.A - pi[0]).norm() > eps)
        throw InconsistentCharacterization("polynomial and spectral Peirce projections differ");
    ps.rank2 = counts[2];
    ps.rank1 = counts[1];
    ps.rank0 = counts[0];

    detail::check_peirce_arithmetic(sp, ps, eps * 10.0);
    return ps;
}
inline PeirceSystem peirce(const Element& e) { return peirce(e, e.space->tol); }

inline bool is_complete_tripotent(const PeirceSystem& ps) { return ps.rank0 == 0; }
inline bool is_minimal_tripotent(const PeirceSystem& ps) { return ps.rank2 == 1; }

/// Largest commutator norm ||[L(bi,bj), L(bk,bl)]||_F over basis quadruples.
/// The multiplication operators are sesquilinear in their symbols, so basis
/// quadruples decide commutativity exactly.
inline double commutator_defect(const SpaceRef& space) {
    const TripleSpace& sp = *space;
    const int d = sp.dim;
    std::vector<Mat> l(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Element bi{space, Vec::Unit(d, i)}, bj{space, Vec::Unit(d, j)};
            l[static_cast<size_t>(i) * d + j] = L_op(bi, bj).A;
        }
    double worst = 0.0;
    for (const Mat& x : l)
        for (const Mat& y : l) worst = std::max(worst, (x * y - y * x).norm());
    return worst;
}

/// True when all multiplication operators L(a,b) commute.
inline bool is_commutative(const SpaceRef& space, double tol) {
    return commutator_defect(space) <= tol;
}
inline bool is_commutative(const SpaceRef& space) { return is_commutative(space, space->tol); }

/// Associativity of the JB*-algebra (E, o, #) attached to a unitary
/// tripotent e: all multiplications M_b = L(b,e) must commute. Linearity in
/// b reduces the check to basis pairs.
inline bool is_associative_jb_algebra(const SpaceRef& space, const Element& e, double tol) {
    if (e.space != space) throw SpaceMismatch("is_associative_jb_algebra");
    if (!is_unitary_tripotent(e, 10.0 * tol))
        throw NotUnitary("is_associative_jb_algebra: e is not a unitary tripotent");
    const int d = space->dim;
    std::vector<Mat> m(d);
    for (int i = 0; i < d; ++i) m[i] = L_op(Element{space, Vec::Unit(d, i)}, e).A;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if ((m[i] * m[j] - m[j] * m[i]).norm() > tol) return false;
    return true;
}
inline bool is_associative_jb_algebra(const SpaceRef& space, const Element& e) {
    return is_associative_jb_algebra(space, e, space->tol);
}

/// Residual of the Jordan triple identity
/// [L(a,b), L(x,y)] = L({a,b,x}, y) - L(x, {b,a,y}).
inline double jordan_identity_defect(const Element& a, const Element& b, const Element& x,
                                     const Element& y) {
    RealLinearOperator lhs = L_op(a, b).commutator(L_op(x, y));
    RealLinearOperator rhs = L_op(triple_product(a, b, x), y) - L_op(x, triple_product(b, a, y));
    return (lhs - rhs).A.norm();
}

}  // namespace jbt

#endif
