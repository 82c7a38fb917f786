// Candidate Hankel pairs (a1, a2) on I_N and the matrix tests that decide
// whether they are Gram data of a finite Hankel vector moment sequence:
//
//   C1  a1 and a2 are positive semi-definite;
//   C2  a1[m+e1,n] + a2[m+e2,n] = a1[m,n+e1] + a2[m,n+e2]   (m, n in I_{N-1});
//   C3  a1[(0,l),(0,l)] = a2[(l,0),(l,0)] = 0                (l = 1..N);
//   C4  supp f in I_{N-1}, (a1 + a2) f = 0  =>  (a1 S1 + a2 S2) f = 0.
//
// The one-variable Hamburger test and the truncated Kronecker rank live here
// as well.

#ifndef HVMS_HANKEL_PAIR_HPP
#define HVMS_HANKEL_PAIR_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <hvms/errors.hpp>
#include <hvms/index_set.hpp>
#include <hvms/linalg.hpp>
#include <hvms/tolerances.hpp>

namespace hvms
{

struct HankelPair
{
    int N = 1;
    Matrix a1;
    Matrix a2;
    Tolerances tol{};

    HankelPair() = default;
    HankelPair(int size, Matrix first, Matrix second, Tolerances t = {})
        : N(size), a1(std::move(first)), a2(std::move(second)), tol(t)
    {
    }

    static HankelPair zero(int size, Tolerances t = {})
    {
        const auto n = static_cast<Eigen::Index>(graded_cardinality(size));
        return {size, Matrix::Zero(n, n), Matrix::Zero(n, n), t};
    }

    Eigen::Index dimension() const noexcept { return a1.rows(); }

    /// Shape and Hermitian checks; throws std::invalid_argument.
    void validate() const
    {
        if (N < 1)
            throw std::invalid_argument("Hankel pair size N must be positive");
        tol.validate();
        const auto n = static_cast<Eigen::Index>(graded_cardinality(N));
        for (const Matrix* m : {&a1, &a2})
        {
            if (m->rows() != n || m->cols() != n)
                throw std::invalid_argument(
                    "Hankel pair matrices must be " + std::to_string(n) + "x" +
                    std::to_string(n) + " for N = " + std::to_string(N));
            if (!m->allFinite())
                throw std::invalid_argument("Hankel pair contains non-finite entries");
        }
        const double scale = 1.0 + std::max(detail::max_abs(a1), detail::max_abs(a2));
        if (detail::hermitian_defect(a1) > tol.hermitian * scale)
            throw std::invalid_argument("a1 is not Hermitian");
        if (detail::hermitian_defect(a2) > tol.hermitian * scale)
            throw std::invalid_argument("a2 is not Hermitian");
    }
};

/// Negative eigenvalue (or smallest eigenvalue when the check passes).
struct EigenvalueWitness
{
    std::string matrix;
    double eigenvalue = 0.0;
    Vector eigenvector;
};

/// Offending matrix entry: for C2 the pair (m, n) with both sides of the
/// identity, for C3 the corner index with its value in lhs.
struct EntryWitness
{
    std::string matrix;
    MultiIndex row;
    MultiIndex col;
    Complex lhs{};
    Complex rhs{};
};

/// Near-kernel vector f and its image under the shifted operator.
struct KernelWitness
{
    Vector kernel_vector;
    Vector image;
    double kernel_eigenvalue = 0.0;
};

using Witness = std::variant<std::monostate, EigenvalueWitness, EntryWitness, KernelWitness>;

struct ConditionResult
{
    std::string name;
    bool passed = true;
    bool vacuous = false;
    /// The measured worst-case quantity.
    double margin = 0.0;
    /// Pass threshold the margin was compared with.
    double threshold = 0.0;
    Witness witness;
};

struct VerdictReport
{
    bool passed = true;
    std::vector<ConditionResult> conditions;

    const ConditionResult* find(const std::string& name) const
    {
        for (const auto& c : conditions)
            if (c.name == name)
                return &c;
        return nullptr;
    }

    /// Name of the first failing condition in evaluation order, if any.
    std::optional<std::string> first_failure() const
    {
        for (const auto& c : conditions)
            if (!c.passed)
                return c.name;
        return std::nullopt;
    }

    std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        for (const auto& c : conditions)
            if (!c.passed)
                out.push_back(c.name);
        return out;
    }
};

namespace condition
{
inline constexpr const char* psd          = "C1_positive_semidefinite";
inline constexpr const char* shift        = "C2_shift_consistency";
inline constexpr const char* corners      = "C3_corner_vanishing";
inline constexpr const char* kernel       = "C4_kernel_shift_invariance";
inline constexpr const char* hankel_psd   = "positive_semidefinite";
inline constexpr const char* hankel_shift = "kernel_shift";
} // namespace condition

namespace detail
{

inline ConditionResult check_psd(const std::vector<std::pair<std::string, const Matrix*>>& mats,
                                 double rel_tol, const char* name)
{
    ConditionResult res{name};
    res.margin = std::numeric_limits<double>::infinity();
    double worst_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& [label, m] : mats)
    {
        if (m->size() == 0)
            continue;
        auto es = hermitian_eig(*m);
        const double lmin = es.eigenvalues()(0);
        const double thr = -rel_tol * (1.0 + spectral_norm_hermitian(es.eigenvalues()));
        // rank candidates by how far below their own threshold they sit
        const double ratio = (thr - lmin) / (1.0 + std::abs(thr));
        if (ratio > worst_ratio)
        {
            worst_ratio = ratio;
            res.margin = lmin;
            res.threshold = thr;
            res.witness = EigenvalueWitness{label, lmin, es.eigenvectors().col(0)};
        }
        if (lmin < thr)
            res.passed = false;
    }
    if (std::isinf(res.margin))
    {
        res.margin = 0.0;
        res.vacuous = true;
    }
    return res;
}

inline ConditionResult check_near_kernel_shift(const Matrix& gram_restricted,
                                               const Matrix& shifted, double kernel_tol,
                                               double image_threshold, const char* name)
{
    ConditionResult res{name};
    res.threshold = image_threshold;
    if (gram_restricted.size() == 0)
    {
        res.vacuous = true;
        return res;
    }
    auto es = hermitian_eig(gram_restricted);
    const double cut = kernel_tol * (1.0 + spectral_norm_hermitian(es.eigenvalues()));
    bool any = false;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    {
        const double lam = es.eigenvalues()(k);
        if (std::abs(lam) > cut)
            continue;
        const Vector f = es.eigenvectors().col(k);
        const Vector img = shifted * f;
        const double nrm = img.norm();
        if (!any || nrm > res.margin)
        {
            res.margin = nrm;
            res.witness = KernelWitness{f, img, lam};
        }
        any = true;
    }
    res.vacuous = !any;
    res.passed = res.margin <= image_threshold;
    return res;
}

} // namespace detail

/// Runs C1..C4 in order without short-circuiting. For N = 1 only C1 and C3
/// are evaluated. Throws std::invalid_argument on non-Hermitian input.
inline VerdictReport verify_hankel_pair(const HankelPair& p)
{
    p.validate();
    const auto& tol = p.tol;
    const int N = p.N;
    const IndexSet idx(N);
    const double entry_scale = 1.0 + std::max(detail::max_abs(p.a1), detail::max_abs(p.a2));
    const double eq_thr = tol.equality * entry_scale;

    VerdictReport rep;

    rep.conditions.push_back(
        detail::check_psd({{"a1", &p.a1}, {"a2", &p.a2}}, tol.psd, condition::psd));

    if (N >= 2)
    {
        ConditionResult c2{condition::shift};
        c2.threshold = eq_thr;
        const IndexSet inner(N - 1);
        for (auto m : inner)
            for (auto n : inner)
            {
                const auto P = [&](MultiIndex x) {
                    return static_cast<Eigen::Index>(idx.position(x));
                };
                const Complex lhs = p.a1(P(m + e1), P(n)) + p.a2(P(m + e2), P(n));
                const Complex rhs = p.a1(P(m), P(n + e1)) + p.a2(P(m), P(n + e2));
                const double d = std::abs(lhs - rhs);
                if (d > c2.margin || std::holds_alternative<std::monostate>(c2.witness))
                {
                    c2.margin = d;
                    c2.witness = EntryWitness{"a1+a2", m, n, lhs, rhs};
                }
            }
        c2.passed = c2.margin <= eq_thr;
        rep.conditions.push_back(std::move(c2));
    }

    {
        ConditionResult c3{condition::corners};
        c3.threshold = eq_thr;
        for (int l = 1; l <= N; ++l)
        {
            const MultiIndex top{0, l};
            const MultiIndex right{l, 0};
            const auto pt = static_cast<Eigen::Index>(idx.position(top));
            const auto pr = static_cast<Eigen::Index>(idx.position(right));
            const Complex v1 = p.a1(pt, pt);
            const Complex v2 = p.a2(pr, pr);
            if (std::abs(v1) > c3.margin || std::holds_alternative<std::monostate>(c3.witness))
            {
                c3.margin = std::abs(v1);
                c3.witness = EntryWitness{"a1", top, top, v1, 0.0};
            }
            if (std::abs(v2) > c3.margin)
            {
                c3.margin = std::abs(v2);
                c3.witness = EntryWitness{"a2", right, right, v2, 0.0};
            }
        }
        c3.passed = c3.margin <= eq_thr;
        rep.conditions.push_back(std::move(c3));
    }

    if (N >= 2)
    {
        const auto inner = static_cast<Eigen::Index>(graded_cardinality(N - 1));
        const Matrix G = p.a1 + p.a2;
        const Matrix shifted = p.a1 * shift_matrix(N, Direction::first).cast<Complex>() +
                               p.a2 * shift_matrix(N, Direction::second).cast<Complex>();
        const double gnorm = detail::hermitian_eig(G).eigenvalues().cwiseAbs().maxCoeff();
        const double image_thr = std::sqrt(tol.kernel) * (1.0 + gnorm);
        rep.conditions.push_back(detail::check_near_kernel_shift(
            G.topLeftCorner(inner, inner), shifted, tol.kernel, image_thr, condition::kernel));
    }

    rep.passed = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                             [](const auto& c) { return c.passed; });
    return rep;
}

/// Odd-length list rho_1 .. rho_{2N-1} of one-variable residues.
struct Moments1D
{
    std::vector<double> rho;

    int size() const
    {
        if (rho.empty() || rho.size() % 2 == 0)
            throw std::invalid_argument("one-variable moment list must have odd length 2N-1, got " +
                                        std::to_string(rho.size()));
        return static_cast<int>((rho.size() + 1) / 2);
    }
};

/// H = -[rho_{i+j+1}]_{0 <= i,j <= N-1}.
inline RealMatrix hankel_matrix(const Moments1D& m)
{
    const int N = m.size();
    RealMatrix H(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            H(i, j) = -m.rho[static_cast<std::size_t>(i + j)];
    return H;
}

/// One-variable Hamburger test: H positive semi-definite and, whenever
/// (c_1, ..., c_{N-1}, 0) is in ker H, so is (0, c_1, ..., c_{N-1}).
inline VerdictReport hamburger_1d(const Moments1D& m, const Tolerances& tol = {})
{
    const int N = m.size();
    const Matrix H = hankel_matrix(m).cast<Complex>();
    VerdictReport rep;
    rep.conditions.push_back(detail::check_psd({{"H", &H}}, tol.psd, condition::hankel_psd));
    if (N >= 2)
    {
        Matrix S = Matrix::Zero(N, N - 1);
        for (int i = 0; i + 1 < N; ++i)
            S(i + 1, i) = 1.0;
        const double hnorm = detail::hermitian_eig(H).eigenvalues().cwiseAbs().maxCoeff();
        rep.conditions.push_back(detail::check_near_kernel_shift(
            H.topLeftCorner(N - 1, N - 1), H * S, tol.kernel,
            std::sqrt(tol.kernel) * (1.0 + hnorm), condition::hankel_shift));
    }
    rep.passed = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                             [](const auto& c) { return c.passed; });
    return rep;
}

/// Diagonal embedding of a one-variable sequence: Y = 1, alpha_(l,0) = t^{l-1},
/// all other vector moments zero. a1 carries the Hankel matrix on the (l,0)
/// axis; a2 vanishes.
inline HankelPair embed_one_variable(const Moments1D& m, Tolerances tol = {})
{
    const int N = m.size();
    auto p = HankelPair::zero(N, tol);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
        {
            const auto r = static_cast<Eigen::Index>(canonical_position({i, 0}));
            const auto c = static_cast<Eigen::Index>(canonical_position({j, 0}));
            p.a1(r, c) = -m.rho[static_cast<std::size_t>(i + j - 2)];
        }
    return p;
}

/// Numerical rank of a1 + a2 (eigenvalues above tol.rank * max(1, lambda_max)).
inline int kronecker_rank(const HankelPair& p)
{
    p.validate();
    const Matrix G = p.a1 + p.a2;
    if (G.size() == 0)
        return 0;
    const auto ev = detail::hermitian_eig(G).eigenvalues();
    const double cut = p.tol.rank * std::max(1.0, ev.maxCoeff());
    return static_cast<int>((ev.array() > cut).count());
}

} // namespace hvms

#endif // HVMS_HANKEL_PAIR_HPP
