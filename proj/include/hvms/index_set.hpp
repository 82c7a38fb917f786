// Two-variable multi-indices, the graded index sets I_N = {n : 1 <= |n| <= N}
// and the shift operators S_1, S_2 : l2(I_{N-1}) -> l2(I_N).

#ifndef HVMS_INDEX_SET_HPP
#define HVMS_INDEX_SET_HPP

#include <complex>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hvms
{

using Complex       = std::complex<double>;
using Matrix        = Eigen::MatrixXcd;
using Vector        = Eigen::VectorXcd;
using RealMatrix    = Eigen::MatrixXd;
using RealVector    = Eigen::VectorXd;
using ExtReal       = long double;
using ExtComplex    = std::complex<long double>;

struct MultiIndex
{
    int n1 = 0;
    int n2 = 0;

    constexpr int order() const noexcept { return n1 + n2; }

    constexpr MultiIndex operator+(MultiIndex o) const noexcept
    {
        return {n1 + o.n1, n2 + o.n2};
    }
    constexpr MultiIndex operator-(MultiIndex o) const noexcept
    {
        return {n1 - o.n1, n2 - o.n2};
    }
    constexpr bool nonnegative() const noexcept { return n1 >= 0 && n2 >= 0; }

    friend constexpr bool operator==(MultiIndex, MultiIndex) = default;

    // Canonical (graded) order: ascending |n|, then descending n1.
    friend constexpr std::strong_ordering operator<=>(MultiIndex a, MultiIndex b)
    {
        if (auto c = a.order() <=> b.order(); c != 0)
            return c;
        return b.n1 <=> a.n1;
    }

    std::string to_string() const
    {
        return "[" + std::to_string(n1) + "," + std::to_string(n2) + "]";
    }
};

inline constexpr MultiIndex e1{1, 0};
inline constexpr MultiIndex e2{0, 1};

enum class Direction
{
    first  = 1,
    second = 2
};

constexpr MultiIndex unit(Direction d) noexcept
{
    return d == Direction::first ? e1 : e2;
}

/// Number of multi-indices with 1 <= |n| <= N.
constexpr std::size_t graded_cardinality(int N) noexcept
{
    return N <= 0 ? 0 : static_cast<std::size_t>(N) * (N + 3) / 2;
}

/// Position of n (|n| >= 1) in the canonical graded ordering. The position does
/// not depend on N, so I_M is a prefix of I_N for M <= N.
constexpr std::size_t canonical_position(MultiIndex n) noexcept
{
    const int g = n.order();
    return graded_cardinality(g - 1) + static_cast<std::size_t>(g - n.n1);
}

/// Multi-indices of a single grade |n| = g in canonical order.
inline std::vector<MultiIndex> grade(int g)
{
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(g) + 1);
    for (int j = 0; j <= g; ++j)
        out.push_back({g - j, j});
    return out;
}

/// The ordered index set I_N.
class IndexSet
{
public:
    IndexSet() = default;

    explicit IndexSet(int N) : N_(N)
    {
        if (N < 1)
            throw std::invalid_argument("index set size must be positive, got " +
                                        std::to_string(N));
        order_.reserve(graded_cardinality(N));
        for (int g = 1; g <= N; ++g)
            for (auto n : grade(g))
                order_.push_back(n);
    }

    int max_order() const noexcept { return N_; }
    std::size_t size() const noexcept { return order_.size(); }
    bool empty() const noexcept { return order_.empty(); }

    const MultiIndex& operator[](std::size_t i) const { return order_[i]; }
    auto begin() const noexcept { return order_.begin(); }
    auto end() const noexcept { return order_.end(); }
    const std::vector<MultiIndex>& indices() const noexcept { return order_; }

    bool contains(MultiIndex n) const noexcept
    {
        return n.nonnegative() && n.order() >= 1 && n.order() <= N_;
    }

    std::optional<std::size_t> find(MultiIndex n) const noexcept
    {
        if (!contains(n))
            return std::nullopt;
        return canonical_position(n);
    }

    std::size_t position(MultiIndex n) const
    {
        if (!contains(n))
            throw std::out_of_range("multi-index " + n.to_string() + " not in I_" +
                                    std::to_string(N_));
        return canonical_position(n);
    }

private:
    int N_ = 0;
    std::vector<MultiIndex> order_;
};

inline IndexSet build_index_set(int N) { return IndexSet(N); }

/// Matrix of S_d : l2(I_{N-1}) -> l2(I_N), (S_d f)(n) = f(n - e_d).
inline RealMatrix shift_matrix(int N, Direction d)
{
    if (N < 2)
        throw std::invalid_argument("shift requires N >= 2");
    const IndexSet target(N);
    const IndexSet source(N - 1);
    RealMatrix S = RealMatrix::Zero(static_cast<Eigen::Index>(target.size()),
                                    static_cast<Eigen::Index>(source.size()));
    for (std::size_t j = 0; j < source.size(); ++j)
    {
        const auto row = target.position(source[j] + unit(d));
        S(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = 1.0;
    }
    return S;
}

/// Applies S_d to a coefficient vector on I_{N-1}; the result lives on I_N.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
shift(const Eigen::MatrixBase<Derived>& f, int N, Direction d)
{
    if (N < 2)
        throw std::invalid_argument("shift requires N >= 2");
    if (static_cast<std::size_t>(f.size()) != graded_cardinality(N - 1))
        throw std::invalid_argument("coefficient vector has length " +
                                    std::to_string(f.size()) + ", expected |I_" +
                                    std::to_string(N - 1) + "| = " +
                                    std::to_string(graded_cardinality(N - 1)));
    using Scalar = typename Derived::Scalar;
    const IndexSet source(N - 1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(
            static_cast<Eigen::Index>(graded_cardinality(N)));
    for (std::size_t j = 0; j < source.size(); ++j)
        out(static_cast<Eigen::Index>(canonical_position(source[j] + unit(d)))) =
            f(static_cast<Eigen::Index>(j));
    return out;
}

/// Inverse of canonical_position.
constexpr MultiIndex index_at(std::size_t position) noexcept
{
    int g = 1;
    while (graded_cardinality(g) <= position)
        ++g;
    const int j = static_cast<int>(position - graded_cardinality(g - 1));
    return {g - j, j};
}

/// supp f, with entries of modulus <= tol treated as zero.
template <typename Derived>
std::vector<MultiIndex> support(const Eigen::MatrixBase<Derived>& f, double tol = 0.0)
{
    std::vector<MultiIndex> out;
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (std::abs(f(i)) > tol)
            out.push_back(index_at(static_cast<std::size_t>(i)));
    return out;
}

template <typename C>
C monomial(C z1, C z2, MultiIndex n)
{
    C out(1);
    for (int i = 0; i < n.n1; ++i)
        out *= z1;
    for (int i = 0; i < n.n2; ++i)
        out *= z2;
    return out;
}

} // namespace hvms

#endif // HVMS_INDEX_SET_HPP
