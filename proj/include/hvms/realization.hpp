// Finite-dimensional Hankel vector moment sequences (alpha_n, Y, A) and the
// type-I Nevanlinna function they carry,
//
//     h(z) = < (A - z_Y)^{-1} alpha, alpha >,   z_Y = z1 Y + z2 (1 - Y).
//
// realize() builds such a sequence from a verified Hankel pair by Gram
// factorization; gram_of() goes back. Scalar moments r_k, residues rho_n and
// the homogeneity diagnostic are computed here as well.
//
// Inner products are linear in the first slot: <x, y> = y^* x.

#ifndef HVMS_REALIZATION_HPP
#define HVMS_REALIZATION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <hvms/coefficient_table.hpp>
#include <hvms/errors.hpp>
#include <hvms/hankel_pair.hpp>
#include <hvms/index_set.hpp>
#include <hvms/linalg.hpp>
#include <hvms/tolerances.hpp>

namespace hvms
{

template <typename Real = double>
struct BasicPoint
{
    std::complex<Real> z1;
    std::complex<Real> z2;
};

using Point    = BasicPoint<double>;
using ExtPoint = BasicPoint<ExtReal>;

template <typename Real>
bool in_bi_upper_half_plane(const BasicPoint<Real>& z) noexcept
{
    return z.z1.imag() > 0 && z.z2.imag() > 0;
}

/// Worst-case violations of the defining relations, measured in the max norm.
struct InvariantReport
{
    double y_hermitian    = 0.0;
    double a_hermitian    = 0.0;
    double y_contraction  = 0.0; ///< distance of spec(Y) outside [0, 1]
    double corners        = 0.0; ///< Y alpha_(0,l) and (1-Y) alpha_(l,0)
    double shift_relation = 0.0; ///< A alpha_n - Y alpha_{n+e1} - (1-Y) alpha_{n+e2}
    double alpha_sum      = 0.0; ///< alpha - alpha_(1,0) - alpha_(0,1)

    double max() const noexcept
    {
        return std::max({y_hermitian, a_hermitian, y_contraction, corners, shift_relation,
                         alpha_sum});
    }
};

struct Realization
{
    int N = 1;
    Matrix Y;
    Matrix A;
    Vector alpha;
    /// Column j holds alpha_n for the j-th index of I_N in canonical order.
    Matrix moments;

    Eigen::Index dim() const noexcept { return Y.rows(); }

    /// The zero realization of size N on a zero-dimensional space.
    static Realization zero(int size)
    {
        Realization r;
        r.N       = size;
        r.Y       = Matrix::Zero(0, 0);
        r.A       = Matrix::Zero(0, 0);
        r.alpha   = Vector::Zero(0);
        r.moments = Matrix::Zero(0, static_cast<Eigen::Index>(graded_cardinality(size)));
        return r;
    }

    auto moment(MultiIndex n) const
    {
        return moments.col(static_cast<Eigen::Index>(IndexSet(N).position(n)));
    }

    void validate() const
    {
        if (N < 1)
            throw std::invalid_argument("realization size N must be positive");
        const auto d = Y.rows();
        if (Y.cols() != d || A.rows() != d || A.cols() != d || alpha.size() != d)
            throw std::invalid_argument("realization Y, A, alpha have inconsistent dimensions");
        if (moments.rows() != d ||
            moments.cols() != static_cast<Eigen::Index>(graded_cardinality(N)))
            throw std::invalid_argument("realization moments must be dim x |I_N|");
        if (!Y.allFinite() || !A.allFinite() || !alpha.allFinite() || !moments.allFinite())
            throw std::invalid_argument("realization contains non-finite entries");
    }

    InvariantReport invariants() const
    {
        validate();
        InvariantReport rep;
        const auto d = dim();
        if (d == 0)
            return rep;
        const Matrix I  = Matrix::Identity(d, d);
        rep.y_hermitian = detail::hermitian_defect(Y);
        rep.a_hermitian = detail::hermitian_defect(A);
        const auto ev   = detail::hermitian_eig(Y).eigenvalues();
        rep.y_contraction = std::max({0.0, -ev.minCoeff(), ev.maxCoeff() - 1.0});
        for (int l = 1; l <= N; ++l)
        {
            rep.corners = std::max(rep.corners, (Y * moment({0, l})).cwiseAbs().maxCoeff());
            rep.corners =
                std::max(rep.corners, ((I - Y) * moment({l, 0})).cwiseAbs().maxCoeff());
        }
        if (N >= 2)
            for (auto n : IndexSet(N - 1))
            {
                const Vector lhs = A * moment(n);
                const Vector rhs = Y * moment(n + e1) + (I - Y) * moment(n + e2);
                rep.shift_relation = std::max(rep.shift_relation, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        rep.alpha_sum = (alpha - moment(e1) - moment(e2)).cwiseAbs().maxCoeff();
        return rep;
    }
};

/// a1[m,n] = <Y alpha_n, alpha_m>, a2[m,n] = <(1-Y) alpha_n, alpha_m>.
inline HankelPair gram_of(const Realization& r, Tolerances tol = {})
{
    r.validate();
    const auto d = r.dim();
    const auto n = static_cast<Eigen::Index>(graded_cardinality(r.N));
    if (d == 0)
        return HankelPair::zero(r.N, tol);
    const Matrix& V = r.moments;
    Matrix a1       = V.adjoint() * r.Y * V;
    Matrix a2       = V.adjoint() * (Matrix::Identity(d, d) - r.Y) * V;
    (void)n;
    return {r.N, detail::hermitian_part(a1), detail::hermitian_part(a2), tol};
}

/// Gram factorization of a verified Hankel pair. The moment vectors are the
/// columns of Lambda^{1/2} V^* over the kept eigenpairs of G = a1 + a2,
/// Y = Lambda^{-1/2} V^* a1 V Lambda^{-1/2} (spectrum clipped into [0, 1]),
/// and A is the minimal Hermitian extension of alpha_n -> Y alpha_{n+e1} +
/// (1-Y) alpha_{n+e2}, vanishing off the reached subspace.
inline Realization realize(const HankelPair& p)
{
    const auto verdict = verify_hankel_pair(p);
    if (!verdict.passed)
    {
        const auto failed = *verdict.first_failure();
        throw verification_error("not a finite Hankel pair: condition " + failed + " fails",
                                 failed);
    }
    const auto& tol = p.tol;
    const int N     = p.N;
    const IndexSet idx(N);

    const Matrix G = detail::hermitian_part(p.a1 + p.a2);
    auto es        = detail::hermitian_eig(G);
    const auto& ev = es.eigenvalues();
    const double lmax = ev.size() ? ev.maxCoeff() : 0.0;
    const double cut  = tol.rank * std::max(1.0, lmax);

    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = ev.size() - 1; k >= 0; --k)
        if (ev(k) > cut)
            kept.push_back(k);
    const auto d = static_cast<Eigen::Index>(kept.size());
    if (d == 0)
        return Realization::zero(N);

    Matrix Vk(G.rows(), d);
    RealVector lam(d);
    for (Eigen::Index j = 0; j < d; ++j)
    {
        Vk.col(j) = es.eigenvectors().col(kept[static_cast<std::size_t>(j)]);
        lam(j)    = ev(kept[static_cast<std::size_t>(j)]);
    }
    const RealVector sq     = lam.cwiseSqrt();
    const RealVector inv_sq = sq.cwiseInverse();

    Realization r;
    r.N       = N;
    r.moments = sq.asDiagonal() * Vk.adjoint();

    Matrix Y = inv_sq.asDiagonal() * (Vk.adjoint() * p.a1 * Vk) * inv_sq.asDiagonal();
    {
        auto ye        = detail::hermitian_eig(Y);
        RealVector yev = ye.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
        Y = ye.eigenvectors() * yev.asDiagonal() * ye.eigenvectors().adjoint();
    }
    r.Y = detail::hermitian_part(Y);
    const Matrix I = Matrix::Identity(d, d);

    if (N == 1)
    {
        r.A = Matrix::Zero(d, d);
    }
    else
    {
        const auto inner = static_cast<Eigen::Index>(graded_cardinality(N - 1));
        const Matrix W   = r.moments.leftCols(inner);
        Matrix T(d, inner);
        for (Eigen::Index j = 0; j < inner; ++j)
        {
            const auto n = idx[static_cast<std::size_t>(j)];
            T.col(j)     = r.Y * r.moments.col(static_cast<Eigen::Index>(idx.position(n + e1))) +
                       (I - r.Y) * r.moments.col(static_cast<Eigen::Index>(idx.position(n + e2)));
        }
        const Matrix Wp = detail::pseudo_inverse(W, std::sqrt(cut));
        const Matrix H  = detail::hermitian_part(W.adjoint() * T);
        const Matrix X  = T * Wp;
        r.A             = detail::hermitian_part(X + X.adjoint() - Wp.adjoint() * H * Wp);

        const double residual = (r.A * W - T).cwiseAbs().maxCoeff();
        const double allowed  = std::sqrt(tol.kernel) * (1.0 + lmax);
        if (residual > allowed)
            throw numerical_error("Hankel shift is not well defined on the moment span (residual " +
                                  std::to_string(residual) +
                                  "); kernel condition fails at the rank tolerance");
    }
    r.alpha = r.moments.col(0) + r.moments.col(1);
    return r;
}

/// Diagnostics attached to a resolvent evaluation.
template <typename Real>
struct Evaluation
{
    std::complex<Real> value{};
    double condition = 1.0; ///< 1-norm condition estimate of A - z_Y
    bool ill_conditioned = false;
};

inline constexpr double ill_conditioned_threshold = 1e12;

/// Evaluates h(z) = <(A - z_Y)^{-1} alpha, alpha> in precision Real. The
/// matrices are converted once; calls are const and reentrant.
template <typename Real = double>
class ResolventEvaluator
{
public:
    using ComplexT = std::complex<Real>;
    using MatrixT  = detail::ComplexMatrixT<Real>;
    using VectorT  = detail::ComplexVectorT<Real>;

    explicit ResolventEvaluator(const Realization& r)
        : A_(detail::cast_to<Real>(r.A)),
          Y_(detail::cast_to<Real>(r.Y)),
          alpha_(detail::cast_to<Real>(r.alpha))
    {
        r.validate();
    }

    Evaluation<Real> detailed(const BasicPoint<Real>& z) const
    {
        if (!in_bi_upper_half_plane(z))
            throw std::invalid_argument("evaluation point must satisfy Im z1 > 0 and Im z2 > 0");
        Evaluation<Real> out;
        const auto d = A_.rows();
        if (d == 0)
            return out;
        const MatrixT M = A_ - z.z2 * MatrixT::Identity(d, d) - (z.z1 - z.z2) * Y_;
        Eigen::PartialPivLU<MatrixT> lu(M);
        const Real rc = lu.rcond();
        if (!(rc > Real(0)))
            throw numerical_error("resolvent solve failed: A - z_Y is numerically singular");
        const VectorT x = lu.solve(alpha_);
        out.value       = alpha_.dot(x); // alpha^* x
        if (!std::isfinite(static_cast<double>(std::abs(out.value))))
            throw numerical_error("resolvent solve produced a non-finite value");
        out.condition       = static_cast<double>(Real(1) / rc);
        out.ill_conditioned = out.condition > ill_conditioned_threshold;
        return out;
    }

    ComplexT operator()(const BasicPoint<Real>& z) const { return detailed(z).value; }

private:
    MatrixT A_;
    MatrixT Y_;
    VectorT alpha_;
};

inline Complex evaluate(const Realization& r, const Point& z)
{
    return ResolventEvaluator<double>(r)(z);
}

/// z2 != 0 and z1/z2 not in (-inf, 0], so z_Y is invertible for every
/// positive contraction Y.
inline bool moment_admissible(Complex z1, Complex z2) noexcept
{
    if (z2 == Complex(0.0))
        return false;
    const Complex q = z1 / z2;
    return !(q.imag() == 0.0 && q.real() <= 0.0);
}

/// R_l(z) alpha = z_Y^{-1} (A z_Y^{-1})^{l-1} alpha by repeated solves.
inline Vector vector_moment_sum(const Realization& r, int l, const Point& z)
{
    r.validate();
    if (l < 1 || l > r.N)
        throw std::invalid_argument("vector moment level must lie in 1..N");
    if (!moment_admissible(z.z1, z.z2))
        throw std::invalid_argument("z2 = 0 or z1/z2 on the closed negative axis");
    const auto d = r.dim();
    if (d == 0)
        return Vector::Zero(0);
    const Matrix zY = z.z2 * Matrix::Identity(d, d) + (z.z1 - z.z2) * r.Y;
    Eigen::PartialPivLU<Matrix> lu(zY);
    Vector x = lu.solve(r.alpha);
    for (int i = 2; i <= l; ++i)
        x = lu.solve(r.A * x);
    return x;
}

/// sum_{|n|=l} z^{-n} alpha_n from the stored vector moments.
inline Vector moment_polynomial(const Realization& r, int l, const Point& z)
{
    r.validate();
    if (l < 1 || l > r.N)
        throw std::invalid_argument("vector moment level must lie in 1..N");
    Vector acc = Vector::Zero(r.dim());
    const Complex w1 = 1.0 / z.z1;
    const Complex w2 = 1.0 / z.z2;
    for (auto n : grade(l))
        acc += monomial(w1, w2, n) * r.moment(n);
    return acc;
}

/// Homogeneous coefficients of r_1 .. r_{2N-1}, computed from the Gram pair.
struct ScalarMoments
{
    CoefficientTable coefficients;
    /// Largest imaginary part discarded when reading the coefficients as real.
    double max_imag = 0.0;

    int max_order() const noexcept { return coefficients.max_order(); }
};

/// Scalar moments from Gram data alone:
///   r_1:         <alpha_n, alpha> on |n| = 1
///   r_{2l-1}:    <alpha_n, A alpha_m>, |m| = l-1, |n| = l
///   r_{2l}:      <alpha_n, A alpha_m>, |m| = |n| = l
/// with <alpha_n, A alpha_m> = a1[m+e1, n] + a2[m+e2, n].
inline ScalarMoments scalar_moments(const Realization& r)
{
    const auto p = gram_of(r);
    const int N  = r.N;
    const IndexSet idx(N);
    const auto P = [&](MultiIndex x) { return static_cast<Eigen::Index>(idx.position(x)); };

    std::vector<Complex> acc(graded_cardinality(2 * N - 1), Complex(0.0));
    auto add = [&](MultiIndex k, Complex v) { acc[canonical_position(k)] += v; };
    auto shifted = [&](MultiIndex m, MultiIndex n) {
        return p.a1(P(m + e1), P(n)) + p.a2(P(m + e2), P(n));
    };
    const Matrix G = p.a1 + p.a2;

    for (auto n : grade(1))
        add(n, G(P(e1), P(n)) + G(P(e2), P(n)));
    for (int k = 2; k <= 2 * N - 1; ++k)
    {
        const int lm = k / 2;     // |m|
        const int ln = k - lm;    // |n|
        for (auto m : grade(lm))
            for (auto n : grade(ln))
                add(m + n, shifted(m, n));
    }

    ScalarMoments out{CoefficientTable(2 * N - 1)};
    for (std::size_t i = 0; i < acc.size(); ++i)
    {
        out.coefficients(index_at(i)) = acc[i].real();
        out.max_imag                  = std::max(out.max_imag, std::abs(acc[i].imag()));
    }
    return out;
}

/// r_k(b) for b in R^2_+, computed through the operators:
///   r_1 = <b_Y^{-1} alpha, alpha>, r_{2l-1} = <R_l alpha, A R_{l-1} alpha>,
///   r_{2l} = <R_l alpha, A R_l alpha>, R_l(b) = b_Y^{-1} (A b_Y^{-1})^{l-1}.
inline Complex sample_scalar_moment(const Realization& r, int k, double b1, double b2)
{
    if (k < 1)
        throw std::invalid_argument("scalar moment order must be positive");
    if (!(b1 > 0.0 && b2 > 0.0))
        throw std::invalid_argument("scalar moments are sampled at b with positive entries");
    const auto d = r.dim();
    if (d == 0)
        return 0.0;
    const Matrix bY = b2 * Matrix::Identity(d, d) + (b1 - b2) * r.Y;
    Eigen::PartialPivLU<Matrix> lu(bY);
    const int lmax = (k + 1) / 2;
    std::vector<Vector> R;
    R.push_back(lu.solve(r.alpha));
    for (int l = 2; l <= lmax; ++l)
        R.push_back(lu.solve(r.A * R.back()));
    if (k == 1)
        return r.alpha.dot(R[0]);
    const int l = lmax;
    if (k % 2 == 1)
        return (r.A * R[static_cast<std::size_t>(l - 2)]).dot(R[static_cast<std::size_t>(l - 1)]);
    return (r.A * R[static_cast<std::size_t>(l - 1)]).dot(R[static_cast<std::size_t>(l - 1)]);
}

namespace detail
{

/// Direction b = (1/(sigma cos th), 1/(sigma sin th)) so that
/// 1/b^n = sigma^{|n|} cos^{n1} th sin^{n2} th.
struct HomogeneousSample
{
    double theta;
    double sigma;
    double b1() const { return 1.0 / (sigma * std::cos(theta)); }
    double b2() const { return 1.0 / (sigma * std::sin(theta)); }
};

inline std::vector<double> chebyshev_angles(int count)
{
    std::vector<double> th;
    for (int j = 0; j < count; ++j)
        th.push_back((j + 0.5) * (std::numbers::pi / 2.0) / count);
    return th;
}

inline RealMatrix homogeneous_design(int k, const std::vector<HomogeneousSample>& s)
{
    RealMatrix V(static_cast<Eigen::Index>(s.size()), k + 1);
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        const double c = std::cos(s[i].theta), sn = std::sin(s[i].theta);
        const double scale = std::pow(s[i].sigma, k);
        for (int j = 0; j <= k; ++j)
            V(static_cast<Eigen::Index>(i), j) = scale * std::pow(c, k - j) * std::pow(sn, j);
    }
    return V;
}

inline double condition_number(const RealMatrix& V)
{
    Eigen::JacobiSVD<RealMatrix> svd(V);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                 : std::numeric_limits<double>::infinity();
}

} // namespace detail

struct ResidueReport
{
    /// rho_n = -(coefficient of 1/b^n in r_{|n|}), from operator samples.
    CoefficientTable rho;
    /// rho_k = -sum { <alpha_n, A alpha_m> : m + n = k, |m| = floor(|k|/2) }.
    CoefficientTable rho_inner_product;
    double discrepancy = 0.0;
    double max_imag    = 0.0;
};

/// Residues of h at infinity through order 2N-1 by two routes that must agree:
/// exact Vandermonde recovery of the homogeneous r_k from operator samples on
/// k+1 rays, and the direct inner-product formula.
inline ResidueReport residues(const Realization& r, double rel_tol = 1e-9)
{
    r.validate();
    const int N = r.N;
    const int K = 2 * N - 1;
    ResidueReport rep{CoefficientTable(K), CoefficientTable(K)};
    if (r.dim() == 0)
        return rep;

    for (int k = 1; k <= K; ++k)
    {
        std::vector<detail::HomogeneousSample> samples;
        for (double th : detail::chebyshev_angles(k + 1))
            samples.push_back({th, 1.0});
        const RealMatrix V = detail::homogeneous_design(k, samples);
        if (detail::condition_number(V) > 1e10)
            throw numerical_error("residue design matrix is ill-conditioned");
        Eigen::VectorXcd rhs(k + 1);
        for (int i = 0; i <= k; ++i)
            rhs(i) = sample_scalar_moment(r, k, samples[static_cast<std::size_t>(i)].b1(),
                                          samples[static_cast<std::size_t>(i)].b2());
        const Eigen::VectorXcd c = V.cast<Complex>().partialPivLu().solve(rhs);
        const auto g             = grade(k);
        for (int j = 0; j <= k; ++j)
        {
            rep.rho(g[static_cast<std::size_t>(j)]) = -c(j).real();
            rep.max_imag = std::max(rep.max_imag, std::abs(c(j).imag()));
        }
    }

    for (int k = 1; k <= K; ++k)
        for (auto kk : grade(k))
        {
            Complex acc = 0.0;
            if (k == 1)
            {
                acc = r.alpha.dot(r.moment(kk));
            }
            else
            {
                for (auto m : grade(k / 2))
                {
                    const MultiIndex n = kk - m;
                    if (!n.nonnegative())
                        continue;
                    acc += (r.A * r.moment(m)).dot(r.moment(n));
                }
            }
            rep.rho_inner_product(kk) = -acc.real();
            rep.max_imag = std::max(rep.max_imag, std::abs(acc.imag()));
        }

    rep.discrepancy = rep.rho.max_abs_difference(rep.rho_inner_product);
    const double scale = 1.0 + std::max(rep.rho.max_abs(), rep.rho_inner_product.max_abs());
    if (rep.discrepancy > rel_tol * scale)
        throw numerical_error("residue routes disagree by " + std::to_string(rep.discrepancy) +
                              "; realization is inconsistent");
    return rep;
}

struct HomogeneityReport
{
    bool passed = true;
    double max_residual = 0.0;
    /// Relative least-squares residual per level k = 1..2N-1.
    std::vector<double> residuals;
    /// Real parts of the fitted coefficients of r_k.
    CoefficientTable fitted;
    double max_imag = 0.0;
};

/// Samples r_k(b) through the operators on `samples` directions at three
/// radial scales and fits homogeneous monomials {1/b^n : |n| = k}.
inline HomogeneityReport homogeneity_check(const Realization& r, int samples,
                                           double fit_tol = Tolerances{}.fit)
{
    r.validate();
    const int K = 2 * r.N - 1;
    if (samples < K + 1)
        throw std::invalid_argument("homogeneity grid needs at least 2N = " +
                                    std::to_string(K + 1) + " directions");
    HomogeneityReport rep{true, 0.0, {}, CoefficientTable(K)};
    std::vector<detail::HomogeneousSample> grid;
    for (double th : detail::chebyshev_angles(samples))
        for (double sigma : {0.5, 1.0, 2.0})
            grid.push_back({th, sigma});

    for (int k = 1; k <= K; ++k)
    {
        const RealMatrix V = detail::homogeneous_design(k, grid);
        Eigen::VectorXcd y(static_cast<Eigen::Index>(grid.size()));
        for (std::size_t i = 0; i < grid.size(); ++i)
            y(static_cast<Eigen::Index>(i)) = sample_scalar_moment(r, k, grid[i].b1(), grid[i].b2());
        const Matrix Vc          = V.cast<Complex>();
        const Eigen::VectorXcd c = Vc.colPivHouseholderQr().solve(y);
        const double ynorm       = y.norm();
        const double res         = ynorm > 1e-300 ? (Vc * c - y).norm() / ynorm : 0.0;
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
        const auto g     = grade(k);
        for (int j = 0; j <= k; ++j)
        {
            rep.fitted(g[static_cast<std::size_t>(j)]) = c(j).real();
            rep.max_imag = std::max(rep.max_imag, std::abs(c(j).imag()));
        }
    }
    rep.passed = rep.max_residual < fit_tol;
    return rep;
}

/// Minimal realization with the same Gram pair: dimension = rank(a1 + a2).
inline Realization compress(const Realization& r, Tolerances tol = {})
{
    return realize(gram_of(r, tol));
}

} // namespace hvms

#endif // HVMS_REALIZATION_HPP
