// Dense table of real coefficients c_n for 1 <= |n| <= K in the canonical
// graded order. Used for residues rho_n and for the coefficients of the
// homogeneous scalar moments r_k(b) = sum_{|n|=k} c_n / b^n.
//
// Certification multiplies residue errors by ||z||^{K-|n|}, so tables fed to
// it are usually held in long double.

#ifndef HVMS_COEFFICIENT_TABLE_HPP
#define HVMS_COEFFICIENT_TABLE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <hvms/index_set.hpp>

namespace hvms
{

template <typename T>
class BasicCoefficientTable
{
public:
    using value_type = T;

    BasicCoefficientTable() = default;
    explicit BasicCoefficientTable(int max_order)
        : order_(max_order), values_(graded_cardinality(max_order), T(0))
    {
        if (max_order < 0)
            throw std::invalid_argument("coefficient table order must be nonnegative");
    }

    int max_order() const noexcept { return order_; }
    std::size_t size() const noexcept { return values_.size(); }

    bool covers(MultiIndex n) const noexcept
    {
        return n.nonnegative() && n.order() >= 1 && n.order() <= order_;
    }

    T operator()(MultiIndex n) const
    {
        check(n);
        return values_[canonical_position(n)];
    }
    T& operator()(MultiIndex n)
    {
        check(n);
        return values_[canonical_position(n)];
    }

    /// Zero for indices beyond the table.
    T get_or_zero(MultiIndex n) const noexcept
    {
        return covers(n) ? values_[canonical_position(n)] : T(0);
    }

    /// Coefficients of a single grade, descending n1.
    std::vector<T> level(int g) const
    {
        std::vector<T> out;
        for (auto n : grade(g))
            out.push_back((*this)(n));
        return out;
    }

    const std::vector<T>& values() const noexcept { return values_; }

    /// sum_{|n| = g} c_n x^n for a generic scalar x-pair (x_i = 1/z_i, 1/b_i, ...).
    template <typename S>
    S evaluate_level(int g, S x1, S x2) const
    {
        S acc(0);
        for (auto n : grade(g))
            acc += static_cast<S>(get_or_zero(n)) * monomial(x1, x2, n);
        return acc;
    }

    BasicCoefficientTable operator-() const
    {
        BasicCoefficientTable out = *this;
        for (auto& v : out.values_)
            v = -v;
        return out;
    }

    template <typename U>
    double max_abs_difference(const BasicCoefficientTable<U>& o) const
    {
        const int K = std::max(order_, o.max_order());
        long double d = 0.0L;
        for (std::size_t i = 0; i < graded_cardinality(K); ++i)
        {
            const auto n = index_at(i);
            d = std::max(d, std::abs(static_cast<long double>(get_or_zero(n)) -
                                     static_cast<long double>(o.get_or_zero(n))));
        }
        return static_cast<double>(d);
    }

    double max_abs() const noexcept
    {
        double m = 0.0;
        for (const T& v : values_)
            m = std::max(m, static_cast<double>(std::abs(v)));
        return m;
    }

    /// Restriction to grades <= K.
    BasicCoefficientTable truncated(int K) const
    {
        BasicCoefficientTable out(K);
        for (std::size_t i = 0; i < out.size(); ++i)
            out.values_[i] = get_or_zero(index_at(i));
        return out;
    }

    template <typename U>
    BasicCoefficientTable<U> cast() const
    {
        BasicCoefficientTable<U> out(order_);
        for (std::size_t i = 0; i < values_.size(); ++i)
            out(index_at(i)) = static_cast<U>(values_[i]);
        return out;
    }

private:
    void check(MultiIndex n) const
    {
        if (!covers(n))
            throw std::out_of_range("multi-index " + n.to_string() +
                                    " outside coefficient table of order " +
                                    std::to_string(order_));
    }

    int order_ = 0;
    std::vector<T> values_;
};

using CoefficientTable    = BasicCoefficientTable<double>;
using ExtCoefficientTable = BasicCoefficientTable<ExtReal>;

} // namespace hvms

#endif // HVMS_COEFFICIENT_TABLE_HPP
