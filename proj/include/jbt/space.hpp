#ifndef JBT_SPACE_HPP
#define JBT_SPACE_HPP

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jbt/types.hpp"

namespace jbt {

/// Declarative description of a space of complex matrices closed under the
/// triple product {x,y,z} = (x y^* z + z y^* x)/2.
struct FactorSpec {
    enum class Kind {
        Rectangular,    ///< all p x q matrices
        Symmetric,      ///< symmetric n x n (transpose-fixed)
        Antisymmetric,  ///< antisymmetric n x n
        Diagonal,       ///< diagonal n x n; sup-norm sequence space
        Q3,             ///< span{I/sqrt(2), E12, E21} inside 2 x 2
        Subspace,       ///< span of given elements of a parent space
        DirectSum       ///< block-diagonal sum of factors
    };

    Kind kind = Kind::Rectangular;
    int p = 0;  ///< rows (or n for the square kinds)
    int q = 0;  ///< cols
    std::vector<FactorSpec> summands;          ///< DirectSum only
    std::shared_ptr<FactorSpec> parent;        ///< Subspace only
    std::vector<Vec> span;                     ///< Subspace only: coords in parent

    static FactorSpec rectangular(int p, int q) {
        FactorSpec s;
        s.kind = Kind::Rectangular;
        s.p = p;
        s.q = q;
        return s;
    }
    static FactorSpec symmetric(int n) {
        FactorSpec s;
        s.kind = Kind::Symmetric;
        s.p = s.q = n;
        return s;
    }
    static FactorSpec antisymmetric(int n) {
        FactorSpec s;
        s.kind = Kind::Antisymmetric;
        s.p = s.q = n;
        return s;
    }
    static FactorSpec diagonal(int n) {
        FactorSpec s;
        s.kind = Kind::Diagonal;
        s.p = s.q = n;
        return s;
    }
    static FactorSpec q3() {
        FactorSpec s;
        s.kind = Kind::Q3;
        s.p = s.q = 2;
        return s;
    }
    static FactorSpec subspace(FactorSpec parent_spec, std::vector<Vec> coords) {
        FactorSpec s;
        s.kind = Kind::Subspace;
        s.parent = std::make_shared<FactorSpec>(std::move(parent_spec));
        s.span = std::move(coords);
        return s;
    }
    static FactorSpec direct_sum(std::vector<FactorSpec> parts) {
        FactorSpec s;
        s.kind = Kind::DirectSum;
        s.summands = std::move(parts);
        return s;
    }
};

/// A finite-dimensional triple system realized as a space of complex
/// matrices with the spectral norm. The basis is orthonormal for the trace
/// pairing <A,B> = tr(B^* A), so coordinates are read off by pairing and the
/// coordinate 2-norm equals the ambient Frobenius norm.
struct TripleSpace {
    FactorSpec spec;
    int dim = 0;
    int rows = 0;
    int cols = 0;
    std::vector<Mat> basis;
    double tol = 1e-8;
    /// sqrt(sum of min(p_i,q_i) over blocks): ||x||_F <= frob_to_op * ||x||.
    double frob_to_op = 1.0;

    Mat ambient(const Vec& c) const {
        Mat m = Mat::Zero(rows, cols);
        for (int k = 0; k < dim; ++k) m += c(k) * basis[k];
        return m;
    }

    /// Coordinates of the orthogonal projection of m onto the span.
    Vec coords(const Mat& m) const {
        Vec c(dim);
        for (int k = 0; k < dim; ++k) c(k) = trace_dot(m, basis[k]);
        return c;
    }

    /// Frobenius distance from m to the span.
    double span_residual(const Mat& m) const {
        return (m - ambient(coords(m))).norm();
    }
};

using SpaceRef = std::shared_ptr<const TripleSpace>;

/// A point of a TripleSpace, stored in basis coordinates. Elements carry
/// their space; mixing spaces raises SpaceMismatch.
struct Element {
    SpaceRef space;
    Vec x;

    Mat ambient() const { return space->ambient(x); }
    /// Spectral norm of the ambient matrix.
    double norm() const { return spectral_norm(ambient()); }
    double frob() const { return x.norm(); }

    Element& operator+=(const Element& o) {
        x += o.x;
        return *this;
    }
    Element& operator-=(const Element& o) {
        x -= o.x;
        return *this;
    }
};

inline Element make_element(SpaceRef s, Vec c) {
    if (!s) throw InvalidInput("make_element: null space");
    if (c.size() != s->dim) throw SpaceMismatch("coordinate length does not match space dimension");
    return Element{std::move(s), std::move(c)};
}

inline void require_same_space(const Element& a, const Element& b, const char* where) {
    if (a.space != b.space)
        throw SpaceMismatch(std::string(where) + ": elements live in different spaces");
}

inline Element operator+(Element a, const Element& b) {
    require_same_space(a, b, "operator+");
    a.x += b.x;
    return a;
}
inline Element operator-(Element a, const Element& b) {
    require_same_space(a, b, "operator-");
    a.x -= b.x;
    return a;
}
inline Element operator*(Complex s, Element a) {
    a.x *= s;
    return a;
}
inline Element operator*(double s, Element a) {
    a.x *= s;
    return a;
}

/// {x,y,z} = (x y^* z + z y^* x)/2 on ambient matrices.
inline Mat triple_product_ambient(const Mat& x, const Mat& y, const Mat& z) {
    Mat yx = y.adjoint() * x;
    Mat yz = y.adjoint() * z;
    return 0.5 * (x * yz + z * yx);
}

/// Triple product of elements of one space. The result stays in the space
/// because closure is validated when the space is built.
inline Element triple_product(const Element& a, const Element& b, const Element& c) {
    require_same_space(a, b, "triple_product");
    require_same_space(a, c, "triple_product");
    Mat m = triple_product_ambient(a.ambient(), b.ambient(), c.ambient());
    return Element{a.space, a.space->coords(m)};
}

namespace detail {

inline void append_rectangular_basis(std::vector<Mat>& basis, int p, int q) {
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            Mat e = Mat::Zero(p, q);
            e(i, j) = 1.0;
            basis.push_back(std::move(e));
        }
}

inline void append_symmetric_basis(std::vector<Mat>& basis, int n) {
    for (int i = 0; i < n; ++i) {
        Mat e = Mat::Zero(n, n);
        e(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat e = Mat::Zero(n, n);
            e(i, j) = e(j, i) = s;
            basis.push_back(std::move(e));
        }
}

inline void append_antisymmetric_basis(std::vector<Mat>& basis, int n) {
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat e = Mat::Zero(n, n);
            e(i, j) = s;
            e(j, i) = -s;
            basis.push_back(std::move(e));
        }
}

inline void append_diagonal_basis(std::vector<Mat>& basis, int n) {
    for (int i = 0; i < n; ++i) {
        Mat e = Mat::Zero(n, n);
        e(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
}

inline void append_q3_basis(std::vector<Mat>& basis) {
    Mat u = Mat::Identity(2, 2) / std::sqrt(2.0);
    Mat e12 = Mat::Zero(2, 2);
    e12(0, 1) = 1.0;
    Mat e21 = Mat::Zero(2, 2);
    e21(1, 0) = 1.0;
    basis.push_back(std::move(u));
    basis.push_back(std::move(e12));
    basis.push_back(std::move(e21));
}

/// min(p,q) summed over blocks; controls the Frobenius/spectral gap.
inline double rank_budget(const FactorSpec& spec) {
    switch (spec.kind) {
        case FactorSpec::Kind::Rectangular:
        case FactorSpec::Kind::Symmetric:
        case FactorSpec::Kind::Antisymmetric:
        case FactorSpec::Kind::Q3:
            return std::min(spec.p, spec.q);
        case FactorSpec::Kind::Diagonal:
            return spec.p;
        case FactorSpec::Kind::Subspace:
            return rank_budget(*spec.parent);
        case FactorSpec::Kind::DirectSum: {
            double r = 0;
            for (const auto& s : spec.summands) r += rank_budget(s);
            return r;
        }
    }
    return 1;
}

}  // namespace detail

inline SpaceRef build_space(const FactorSpec& spec, double tol);

namespace detail {

inline void validate_space(const TripleSpace& sp) {
    // Orthonormality of the basis under the trace pairing.
    for (int i = 0; i < sp.dim; ++i)
        for (int j = i; j < sp.dim; ++j) {
            Complex g = trace_dot(sp.basis[i], sp.basis[j]);
            double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10) throw DegenerateBasis("basis is not trace-orthonormal");
        }
    // Closure of basis triple products, checked exhaustively.
    for (int i = 0; i < sp.dim; ++i)
        for (int j = 0; j < sp.dim; ++j)
            for (int k = 0; k < sp.dim; ++k) {
                Mat p = triple_product_ambient(sp.basis[i], sp.basis[j], sp.basis[k]);
                if (sp.span_residual(p) > std::max(sp.tol, 1e-10)) {
                    std::ostringstream os;
                    os << "triple product of basis elements (" << i << "," << j << "," << k
                       << ") leaves the span";
                    throw SubspaceNotClosed(os.str());
                }
            }
    // Cube identity ||{a,a,a}|| = ||a||^3 on a fixed sample of elements.
    Rng rng = Rng::derive(0x5eedu, 17);
    for (int t = 0; t < 8; ++t) {
        Vec c = rng.gaussian_vector(sp.dim);
        Mat a = sp.ambient(c);
        double na = spectral_norm(a);
        if (na < 1e-9) continue;
        double cube = spectral_norm(triple_product_ambient(a, a, a));
        if (std::abs(cube - na * na * na) > 1e-8 * std::max(1.0, na * na * na))
            throw SubspaceNotClosed("cube identity fails; the span is not a triple system");
    }
}

inline void build_basis(const FactorSpec& spec, double tol, std::vector<Mat>& basis, int& rows,
                        int& cols) {
    using K = FactorSpec::Kind;
    switch (spec.kind) {
        case K::Rectangular:
            if (spec.p < 1 || spec.q < 1) throw InvalidInput("rectangular factor needs p,q >= 1");
            rows = spec.p;
            cols = spec.q;
            append_rectangular_basis(basis, spec.p, spec.q);
            return;
        case K::Symmetric:
            if (spec.p < 1) throw InvalidInput("symmetric factor needs n >= 1");
            rows = cols = spec.p;
            append_symmetric_basis(basis, spec.p);
            return;
        case K::Antisymmetric:
            if (spec.p < 2) throw InvalidInput("antisymmetric factor needs n >= 2");
            rows = cols = spec.p;
            append_antisymmetric_basis(basis, spec.p);
            return;
        case K::Diagonal:
            if (spec.p < 1) throw InvalidInput("diagonal factor needs n >= 1");
            rows = cols = spec.p;
            append_diagonal_basis(basis, spec.p);
            return;
        case K::Q3:
            rows = cols = 2;
            append_q3_basis(basis);
            return;
        case K::Subspace: {
            if (!spec.parent) throw InvalidInput("subspace factor needs a parent");
            if (spec.span.empty()) throw DegenerateBasis("subspace factor needs a nonempty span");
            SpaceRef parent = build_space(*spec.parent, tol);
            rows = parent->rows;
            cols = parent->cols;
            // Gram-Schmidt in ambient coordinates, order-preserving.
            for (const Vec& c : spec.span) {
                if (c.size() != parent->dim)
                    throw SpaceMismatch("subspace coordinate length does not match parent");
                Mat v = parent->ambient(c);
                double orig = v.norm();
                for (int pass = 0; pass < 2; ++pass)
                    for (const Mat& b : basis) v -= trace_dot(v, b) * b;
                if (v.norm() <= 1e-10 * std::max(orig, 1.0))
                    throw DegenerateBasis("subspace span is linearly dependent");
                basis.push_back(v / v.norm());
            }
            return;
        }
        case K::DirectSum: {
            if (spec.summands.empty()) throw InvalidInput("direct sum needs at least one summand");
            std::vector<SpaceRef> parts;
            rows = cols = 0;
            for (const auto& s : spec.summands) {
                parts.push_back(build_space(s, tol));
                rows += parts.back()->rows;
                cols += parts.back()->cols;
            }
            int ro = 0, co = 0;
            for (const auto& part : parts) {
                for (const Mat& b : part->basis) {
                    Mat e = Mat::Zero(rows, cols);
                    e.block(ro, co, part->rows, part->cols) = b;
                    basis.push_back(std::move(e));
                }
                ro += part->rows;
                co += part->cols;
            }
            return;
        }
    }
    throw InvalidInput("unknown factor kind");
}

}  // namespace detail

/// Materialize a space from its description: canonical trace-orthonormal
/// basis, ambient shape, and validated closure under the triple product.
inline SpaceRef build_space(const FactorSpec& spec, double tol = 1e-8) {
    auto sp = std::make_shared<TripleSpace>();
    sp->spec = spec;
    sp->tol = tol;
    detail::build_basis(spec, tol, sp->basis, sp->rows, sp->cols);
    sp->dim = static_cast<int>(sp->basis.size());
    sp->frob_to_op = std::sqrt(detail::rank_budget(spec));
    detail::validate_space(*sp);
    return sp;
}

}  // namespace jbt

#endif
