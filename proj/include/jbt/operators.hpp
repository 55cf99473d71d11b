#ifndef JBT_OPERATORS_HPP
#define JBT_OPERATORS_HPP

#include <string>
#include <utility>

#include "jbt/space.hpp"
#include "jbt/types.hpp"

namespace jbt {

/// Real-linear map on a TripleSpace in basis coordinates:
/// x |-> A x + B conj(x). Complex-linear maps have B = 0.
struct RealLinearOperator {
    SpaceRef space;
    Mat A;
    Mat B;

    static RealLinearOperator zero(SpaceRef s) {
        int d = s->dim;
        return {std::move(s), Mat::Zero(d, d), Mat::Zero(d, d)};
    }
    static RealLinearOperator identity(SpaceRef s) {
        int d = s->dim;
        return {std::move(s), Mat::Identity(d, d), Mat::Zero(d, d)};
    }

    Vec apply(const Vec& x) const { return A * x + B * x.conjugate(); }

    Element apply(const Element& e) const {
        if (e.space != space) throw SpaceMismatch("operator applied to element of another space");
        return Element{space, apply(e.x)};
    }

    bool is_complex_linear(double tol = 1e-12) const { return B.norm() <= tol * std::max(1.0, A.norm()); }

    /// Operator norm w.r.t. the coordinate 2-norm (= ambient Frobenius norm).
    double coord_norm() const {
        if (B.isZero(0.0)) return spectral_norm(A);
        if (A.isZero(0.0)) return spectral_norm(B);
        const int d = static_cast<int>(A.rows());
        RMat r(2 * d, 2 * d);
        r.topLeftCorner(d, d) = A.real() + B.real();
        r.topRightCorner(d, d) = -A.imag() + B.imag();
        r.bottomLeftCorner(d, d) = A.imag() + B.imag();
        r.bottomRightCorner(d, d) = A.real() - B.real();
        return r.jacobiSvd().singularValues()(0);
    }

    RealLinearOperator operator+(const RealLinearOperator& o) const {
        check(o);
        return {space, A + o.A, B + o.B};
    }
    RealLinearOperator operator-(const RealLinearOperator& o) const {
        check(o);
        return {space, A - o.A, B - o.B};
    }
    RealLinearOperator scaled(Complex s) const { return {space, s * A, s * B}; }

    /// this after o; antilinear parts compose with conjugation.
    RealLinearOperator compose(const RealLinearOperator& o) const {
        check(o);
        return {space, A * o.A + B * o.B.conjugate(), A * o.B + B * o.A.conjugate()};
    }

    RealLinearOperator commutator(const RealLinearOperator& o) const {
        return compose(o) - o.compose(*this);
    }

  private:
    void check(const RealLinearOperator& o) const {
        if (o.space != space) throw SpaceMismatch("operators act on different spaces");
    }
};

/// L(a,b): x |-> {a,b,x}; complex-linear.
inline RealLinearOperator L_op(const Element& a, const Element& b) {
    require_same_space(a, b, "L_op");
    const TripleSpace& sp = *a.space;
    Mat A(sp.dim, sp.dim);
    Mat am = a.ambient(), bm = b.ambient();
    for (int k = 0; k < sp.dim; ++k)
        A.col(k) = sp.coords(triple_product_ambient(am, bm, sp.basis[k]));
    return {a.space, std::move(A), Mat::Zero(sp.dim, sp.dim)};
}

/// Q(a,b): x |-> {a,x,b}; conjugate-linear. Q(a) = Q(a,a).
inline RealLinearOperator Q_op(const Element& a, const Element& b) {
    require_same_space(a, b, "Q_op");
    const TripleSpace& sp = *a.space;
    Mat B(sp.dim, sp.dim);
    Mat am = a.ambient(), bm = b.ambient();
    for (int k = 0; k < sp.dim; ++k)
        B.col(k) = sp.coords(triple_product_ambient(am, sp.basis[k], bm));
    return {a.space, Mat::Zero(sp.dim, sp.dim), std::move(B)};
}

inline RealLinearOperator Q_op(const Element& a) { return Q_op(a, a); }

namespace detail {

enum class MultSide { Left, Right };

inline RealLinearOperator mult_op(const Element& b, MultSide side, const char* what) {
    const TripleSpace& sp = *b.space;
    if (sp.rows != sp.cols)
        throw InvalidInput(std::string(what) + " needs a square ambient space");
    Mat A(sp.dim, sp.dim);
    Mat bm = b.ambient();
    for (int k = 0; k < sp.dim; ++k) {
        Mat prod = (side == MultSide::Left) ? Mat(bm * sp.basis[k]) : Mat(sp.basis[k] * bm);
        if (sp.span_residual(prod) > std::max(sp.tol, 1e-10) * std::max(1.0, prod.norm()))
            throw InvalidInput(std::string(what) + " leaves the space");
        A.col(k) = sp.coords(prod);
    }
    return {b.space, std::move(A), Mat::Zero(sp.dim, sp.dim)};
}

}  // namespace detail

/// x |-> b x (ambient product); defined when the space is closed under it.
inline RealLinearOperator left_mult_op(const Element& b) {
    return detail::mult_op(b, detail::MultSide::Left, "left multiplication");
}

/// x |-> x b.
inline RealLinearOperator right_mult_op(const Element& b) {
    return detail::mult_op(b, detail::MultSide::Right, "right multiplication");
}

/// True when {e,e,e} = e within tol (in spectral norm).
inline bool is_tripotent(const Element& e, double tol) {
    Element cube = triple_product(e, e, e);
    return spectral_norm(cube.ambient() - e.ambient()) <= tol;
}
inline bool is_tripotent(const Element& e) { return is_tripotent(e, e.space->tol); }

/// True when e is a unitary tripotent: L(e,e) = Id, i.e. the whole space is
/// its middle Peirce-2 part.
inline bool is_unitary_tripotent(const Element& e, double tol) {
    if (!is_tripotent(e, tol)) return false;
    RealLinearOperator l = L_op(e, e);
    return spectral_norm(l.A - Mat::Identity(e.space->dim, e.space->dim)) <= tol;
}
inline bool is_unitary_tripotent(const Element& e) { return is_unitary_tripotent(e, e.space->tol); }

/// Jordan multiplication x |-> b o x = {b,e,x} in the algebra with unitary
/// element e. Throws NotUnitary when e is not a unitary tripotent.
inline RealLinearOperator jordan_mult_op(const Element& b, const Element& e) {
    require_same_space(b, e, "jordan_mult_op");
    if (!is_unitary_tripotent(e, 10 * e.space->tol))
        throw NotUnitary("jordan_mult_op: e is not a unitary tripotent");
    return L_op(b, e);
}

/// Wrap explicit coordinate matrices as an operator on s.
inline RealLinearOperator operator_from_matrix(SpaceRef s, Mat A, Mat B) {
    if (!s) throw InvalidInput("operator_from_matrix: null space");
    if (A.size() == 0) A = Mat::Zero(s->dim, s->dim);
    if (B.size() == 0) B = Mat::Zero(s->dim, s->dim);
    if (A.rows() != s->dim || A.cols() != s->dim || B.rows() != s->dim || B.cols() != s->dim)
        throw SpaceMismatch("operator matrix shape does not match space dimension");
    return {std::move(s), std::move(A), std::move(B)};
}

}  // namespace jbt

#endif
