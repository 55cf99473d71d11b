#ifndef JBT_TYPES_HPP
#define JBT_TYPES_HPP

#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jbt {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SpaceMismatch : Error { using Error::Error; };
struct SubspaceNotClosed : Error { using Error::Error; };
struct DegenerateBasis : Error { using Error::Error; };
struct NotATripotent : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct ZeroGenerator : Error { using Error::Error; };
struct ResultLeftSpace : Error { using Error::Error; };
struct SearchFailed : Error { using Error::Error; };
struct NotNilpotent : Error { using Error::Error; };
struct InconsistentCharacterization : Error { using Error::Error; };
struct OracleMismatch : Error { using Error::Error; };
struct NotUnitVector : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };

/// Trace pairing <A,B> = tr(B^* A); the inner product all bases are
/// orthonormalized against.
inline Complex trace_dot(const Mat& a, const Mat& b) {
    return (b.adjoint() * a).trace();
}

inline double frobenius(const Mat& a) { return a.norm(); }

/// Largest singular value.
inline double spectral_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return a.jacobiSvd().singularValues()(0);
}

inline Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

/// Largest eigenvalue of the Hermitian part of a square matrix.
inline double max_herm_eigenvalue(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

/// Seeded random source. Streams derived from (seed, stream) are
/// independent enough for restart schedules and stay reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 step decorrelates (seed, stream) pairs.
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    double normal() { return normal_(gen_); }
    double uniform() { return uniform_(gen_); }
    std::uint64_t integer() { return gen_(); }

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex cnormal() {
        static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        return Complex(normal() * inv_sqrt2, normal() * inv_sqrt2);
    }

    Vec gaussian_vector(Eigen::Index n) {
        Vec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
        return v;
    }

    Mat gaussian_matrix(Eigen::Index r, Eigen::Index c) {
        Mat m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cnormal();
        return m;
    }

  private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace jbt

#endif
