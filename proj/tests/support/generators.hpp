// Random test data: valid finite HVMS's, pairs with a single broken
// condition, inflated realizations and discrete measures.

#ifndef HVMS_TESTS_GENERATORS_HPP
#define HVMS_TESTS_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <hvms/hvms.hpp>

namespace hvms::testing
{

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a = 0.0, double b = 1.0)
    {
        return std::uniform_real_distribution<double>(a, b)(eng_);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    Complex cnormal() { return {normal(), normal()}; }

    Matrix gaussian(Eigen::Index r, Eigen::Index c)
    {
        Matrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i)
                m(i, j) = cnormal();
        return m;
    }
    Vector gaussian(Eigen::Index n) { return gaussian(n, 1).col(0); }

    Matrix unitary(Eigen::Index n)
    {
        Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
        return qr.householderQ() * Matrix::Identity(n, n);
    }

    /// Hermitian with spectral norm 1.
    Matrix hermitian(Eigen::Index n)
    {
        Matrix g = gaussian(n, n);
        Matrix h = (g + g.adjoint()) / 2.0;
        const double nrm = detail::hermitian_eig(h).eigenvalues().cwiseAbs().maxCoeff();
        return h / nrm;
    }

    Point point_in_bi_upper_half_plane()
    {
        return {{uniform(-3, 3), uniform(0.05, 3)}, {uniform(-3, 3), uniform(0.05, 3)}};
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// HVMS with Y an orthogonal projection P:
///   alpha_(1,0) in ran P, alpha_(0,1) in ran(1-P),
///   alpha_(l-j,j) = P A alpha_(l-1-j,j) + (1-P) A alpha_(l-j,j-1).
inline Realization projection_hvms(Rng& rng, int N, Eigen::Index d, Eigen::Index rank_p)
{
    const Matrix U = rng.unitary(d);
    Matrix P       = U.leftCols(rank_p) * U.leftCols(rank_p).adjoint();
    P              = detail::hermitian_part(P);
    const Matrix Q = Matrix::Identity(d, d) - P;
    const Matrix A = rng.hermitian(d);

    Realization r;
    r.N       = N;
    r.Y       = P;
    r.A       = A;
    r.moments = Matrix::Zero(d, static_cast<Eigen::Index>(graded_cardinality(N)));
    auto col  = [&](MultiIndex n) { return r.moments.col(static_cast<Eigen::Index>(canonical_position(n))); };
    col(e1)   = P * rng.gaussian(d);
    col(e2)   = Q * rng.gaussian(d);
    for (int l = 2; l <= N; ++l)
        for (int j = 0; j <= l; ++j)
        {
            Vector v = Vector::Zero(d);
            if (j <= l - 1)
                v += P * (A * col({l - 1 - j, j}));
            if (j >= 1)
                v += Q * (A * col({l - j, j - 1}));
            col({l - j, j}) = v;
        }
    r.alpha = col(e1) + col(e2);
    return r;
}

/// True when some eigenvalue of a1 + a2 sits in the ambiguous band between
/// the rank cut and clear separation.
inline bool gram_in_gray_zone(const HankelPair& p)
{
    const auto ev   = detail::hermitian_eig(p.a1 + p.a2).eigenvalues();
    const double mx = std::max(1.0, ev.maxCoeff());
    for (Eigen::Index k = 0; k < ev.size(); ++k)
    {
        const double rel = std::abs(ev(k)) / mx;
        if (rel > 1e-12 && rel < 1e-6)
            return true;
    }
    return false;
}

struct ValidCase
{
    Realization source;
    HankelPair pair;
};

/// Valid pair from a random projection HVMS, N in 1..4, dim in 2..12.
inline ValidCase random_valid_case(Rng& rng, int max_N = 4, int min_dim = 2, int max_dim = 12)
{
    for (;;)
    {
        const int N          = rng.integer(1, max_N);
        const Eigen::Index d = rng.integer(min_dim, max_dim);
        const Eigen::Index k = rng.integer(1, static_cast<int>(d) - 1);
        auto r               = projection_hvms(rng, N, d, k);
        auto p               = gram_of(r);
        if (!gram_in_gray_zone(p))
            return {std::move(r), std::move(p)};
    }
}

struct CorruptedCase
{
    HankelPair pair;
    std::string broken; ///< the condition name expected to fail
    std::string label;
};

inline Eigen::Index pos(MultiIndex n) { return static_cast<Eigen::Index>(canonical_position(n)); }

inline double entry_scale(const HankelPair& p)
{
    return 1.0 + std::max(detail::max_abs(p.a1), detail::max_abs(p.a2));
}

/// C1 only: a1 couples (0,1) and (0,N) although both rows must vanish.
inline CorruptedCase break_psd(Rng& rng)
{
    auto base = random_valid_case(rng, 4).pair;
    while (base.N < 2)
        base = random_valid_case(rng, 4).pair;
    const double delta = 0.1 * entry_scale(base);
    base.a1(pos(e2), pos({0, base.N})) += delta;
    base.a1(pos({0, base.N}), pos(e2)) += delta;
    return {base, condition::psd, "psd"};
}

/// C2 only: a1 += eps v v^* with v = e_(2,0) + i e_(1,0).
inline CorruptedCase break_shift(Rng& rng)
{
    // N = 2 keeps the tested kernel on I_1 trivial, so C4 stays vacuous.
    auto base = random_valid_case(rng, 2).pair;
    while (base.N != 2)
        base = random_valid_case(rng, 2).pair;
    const double eps = 0.05 * entry_scale(base);
    Vector v         = Vector::Zero(base.a1.rows());
    v(pos({2, 0}))   = 1.0;
    v(pos(e1))       = Complex(0.0, 1.0);
    base.a1 += eps * v * v.adjoint();
    return {base, condition::shift, "shift"};
}

/// C3 only: a1[(0,1),(0,1)] += eps.
inline CorruptedCase break_corner(Rng& rng)
{
    auto base = random_valid_case(rng, 4).pair;
    base.a1(pos(e2), pos(e2)) += 0.05 * entry_scale(base);
    return {base, condition::corners, "corner"};
}

/// C4 only: a small valid HVMS plus a rogue pair carried by level-N vectors
/// beta_(N,0) (Y = 1) and beta_(0,N) (Y = 0) on a fresh orthogonal space.
inline CorruptedCase break_kernel(Rng& rng)
{
    const int N          = rng.integer(3, 4);
    const Eigen::Index d = rng.integer(2, 3);
    Realization small;
    for (;;)
    {
        small = projection_hvms(rng, N, d, rng.integer(1, static_cast<int>(d) - 1));
        if (!gram_in_gray_zone(gram_of(small)))
            break;
    }
    Realization big;
    big.N        = N;
    const auto D = d + 2;
    big.Y        = Matrix::Zero(D, D);
    big.A        = Matrix::Zero(D, D);
    big.Y.topLeftCorner(d, d) = small.Y;
    big.A.topLeftCorner(d, d) = small.A;
    big.Y(d, d)               = 1.0;
    big.moments               = Matrix::Zero(D, small.moments.cols());
    big.moments.topRows(d)    = small.moments;
    big.moments(d, pos({N, 0}))     = rng.uniform(0.5, 1.5);
    big.moments(d + 1, pos({0, N})) = rng.uniform(0.5, 1.5);
    big.alpha = big.moments.col(0) + big.moments.col(1);
    return {gram_of(big), condition::kernel, "kernel"};
}

/// Five cases per condition, in condition order.
inline std::vector<CorruptedCase> corrupted_suite(Rng& rng)
{
    std::vector<CorruptedCase> out;
    for (int k = 0; k < 5; ++k)
        out.push_back(break_psd(rng));
    for (int k = 0; k < 5; ++k)
        out.push_back(break_shift(rng));
    for (int k = 0; k < 5; ++k)
        out.push_back(break_corner(rng));
    for (int k = 0; k < 5; ++k)
        out.push_back(break_kernel(rng));
    return out;
}

/// Isometric embedding into dimension D with dead directions carrying their
/// own random Y and A; h and the Gram pair are unchanged.
inline Realization inflate(Rng& rng, const Realization& r, Eigen::Index D)
{
    const auto d   = r.dim();
    const Matrix U = rng.unitary(D);
    const Matrix V = U.leftCols(d);
    const Matrix W = U.rightCols(D - d);
    const Matrix Ud = rng.unitary(D - d);
    RealVector y(D - d);
    for (Eigen::Index k = 0; k < y.size(); ++k)
        y(k) = rng.uniform();
    Realization out;
    out.N       = r.N;
    out.Y       = detail::hermitian_part(V * r.Y * V.adjoint() +
                                   W * (Ud * y.asDiagonal() * Ud.adjoint()) * W.adjoint());
    out.A       = detail::hermitian_part(V * r.A * V.adjoint() +
                                   W * (3.0 * rng.hermitian(D - d)) * W.adjoint());
    out.moments = V * r.moments;
    out.alpha   = V * r.alpha;
    return out;
}

struct DiscreteMeasure
{
    std::vector<double> atoms;
    std::vector<double> weights;

    /// rho_k = -sum mu_i t_i^{k-1}, k = 1..2N-1.
    Moments1D residues(int N) const
    {
        Moments1D m;
        for (int k = 1; k <= 2 * N - 1; ++k)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < atoms.size(); ++i)
                s += weights[i] * std::pow(atoms[i], k - 1);
            m.rho.push_back(-s);
        }
        return m;
    }

    template <typename C>
    C cauchy_transform(C z) const
    {
        C acc(0);
        for (std::size_t i = 0; i < atoms.size(); ++i)
            acc += static_cast<typename C::value_type>(weights[i]) /
                   (static_cast<typename C::value_type>(atoms[i]) - z);
        return acc;
    }
};

/// 1..4 atoms in [-1, 1], positive weights with total mass at most 1.
inline DiscreteMeasure random_measure(Rng& rng)
{
    DiscreteMeasure m;
    const int k = rng.integer(1, 4);
    double total = 0.0;
    for (int i = 0; i < k; ++i)
    {
        m.atoms.push_back(rng.uniform(-1.0, 1.0));
        m.weights.push_back(rng.uniform(0.05, 1.0));
        total += m.weights.back();
    }
    const double mass = rng.uniform(0.2, 1.0);
    for (auto& w : m.weights)
        w *= mass / total;
    return m;
}

} // namespace hvms::testing

#endif // HVMS_TESTS_GENERATORS_HPP
