// The explicit two-by-two block family: for terms (w, lambda, t) with
// u = sqrt(1 - t^2),
//
//     A_j = diag(lambda, -lambda),   Y_j = [[t^2, t u], [t u, u^2]],
//     alpha_(1,0) = sqrt(w) (t, u),  alpha_(0,1) = sqrt(w) (u, -t),
//
// and its closed forms for h, r_1, r_2 and r_3.

#ifndef HVMS_EXAMPLE_FAMILY_HPP
#define HVMS_EXAMPLE_FAMILY_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <hvms/coefficient_table.hpp>
#include <hvms/realization.hpp>

namespace hvms
{

struct ExampleTerm
{
    double w      = 0.0;
    double lambda = 0.0;
    double t      = 0.0;

    double u() const { return std::sqrt(std::max(0.0, 1.0 - t * t)); }
};

struct ExampleSpec
{
    std::vector<ExampleTerm> terms;

    void validate() const
    {
        for (std::size_t j = 0; j < terms.size(); ++j)
        {
            const auto& term = terms[j];
            const std::string where = "example term " + std::to_string(j) + ": ";
            if (!std::isfinite(term.w) || term.w < 0.0)
                throw std::invalid_argument(where + "weight w must be finite and nonnegative");
            if (!std::isfinite(term.lambda))
                throw std::invalid_argument(where + "lambda must be finite");
            if (!std::isfinite(term.t) || term.t < 0.0 || term.t > 1.0)
                throw std::invalid_argument(where + "t must lie in [0, 1]");
        }
    }

    double total_weight() const
    {
        double s = 0.0;
        for (const auto& term : terms)
            s += term.w;
        return s;
    }

    /// sum w_j lambda_j^p.
    double weighted_power_sum(int p) const
    {
        double s = 0.0;
        for (const auto& term : terms)
            s += term.w * std::pow(term.lambda, p);
        return s;
    }
};

/// Direct-sum realization of size N (1 or 2). For N = 2 the level-two vector
/// moments are the explicit extension of the family.
inline Realization build_example(const ExampleSpec& spec, int N)
{
    spec.validate();
    if (N != 1 && N != 2)
        throw std::invalid_argument("explicit example moments exist only for N = 1 or N = 2, got " +
                                    std::to_string(N));
    const auto J = static_cast<Eigen::Index>(spec.terms.size());
    if (J == 0)
        return Realization::zero(N);

    const auto d = 2 * J;
    Realization r;
    r.N       = N;
    r.Y       = Matrix::Zero(d, d);
    r.A       = Matrix::Zero(d, d);
    r.moments = Matrix::Zero(d, static_cast<Eigen::Index>(graded_cardinality(N)));

    for (Eigen::Index j = 0; j < J; ++j)
    {
        const auto& term = spec.terms[static_cast<std::size_t>(j)];
        const double t = term.t, u = term.u(), sw = std::sqrt(term.w), lam = term.lambda;
        const auto o = 2 * j;
        r.A(o, o)         = lam;
        r.A(o + 1, o + 1) = -lam;
        r.Y(o, o)         = t * t;
        r.Y(o, o + 1)     = t * u;
        r.Y(o + 1, o)     = t * u;
        r.Y(o + 1, o + 1) = u * u;

        r.moments(o, 0)     = sw * t;
        r.moments(o + 1, 0) = sw * u;
        r.moments(o, 1)     = sw * u;
        r.moments(o + 1, 1) = -sw * t;
        if (N == 2)
        {
            const double c = 2.0 * t * t - 1.0;
            r.moments(o, 2)     = sw * lam * c * t;
            r.moments(o + 1, 2) = sw * lam * c * u;
            r.moments(o, 3)     = 2.0 * sw * lam * (t - t * t * t + t * t * u);
            r.moments(o + 1, 3) = 2.0 * sw * lam * (t - t * t * t - t * t * u);
            r.moments(o, 4)     = -sw * lam * c * u;
            r.moments(o + 1, 4) = sw * lam * c * t;
        }
    }
    r.alpha = r.moments.col(0) + r.moments.col(1);
    return r;
}

/// h(z) = sum w (4 t u lambda + z1 + z2) / (lambda^2 - lambda (2t^2 - 1)(z1 - z2) - z1 z2).
template <typename Real = double>
std::complex<Real> closed_form_h(const ExampleSpec& spec, const BasicPoint<Real>& z)
{
    if (!in_bi_upper_half_plane(z))
        throw std::invalid_argument("closed form is evaluated on Im z1 > 0, Im z2 > 0");
    std::complex<Real> acc(0);
    for (const auto& term : spec.terms)
    {
        const Real w   = static_cast<Real>(term.w);
        const Real lam = static_cast<Real>(term.lambda);
        const Real t   = static_cast<Real>(term.t);
        const Real u   = std::sqrt(std::max(Real(0), Real(1) - t * t));
        const auto num = Real(4) * t * u * lam + z.z1 + z.z2;
        const auto den = lam * lam - lam * (Real(2) * t * t - Real(1)) * (z.z1 - z.z2) - z.z1 * z.z2;
        acc += w * num / den;
    }
    return acc;
}

/// Coefficients of r_1, r_2, r_3 as displayed for the family, in precision Real.
template <typename Real = double>
BasicCoefficientTable<Real> closed_form_coefficients(const ExampleSpec& spec)
{
    spec.validate();
    BasicCoefficientTable<Real> c(3);
    for (const auto& term : spec.terms)
    {
        const Real w = term.w, lam = term.lambda, t = term.t;
        const Real u = std::sqrt(std::max(Real(0), Real(1) - t * t));
        const Real q = Real(2) * t * t - Real(1);
        c({1, 0}) += w;
        c({0, 1}) += w;

        c({2, 0}) += w * lam * q;
        c({1, 1}) += w * lam * Real(4) * t * u;
        c({0, 2}) += w * lam * (-q);

        const Real wl2 = w * lam * lam;
        const Real mix = Real(4) * (t * t - t * t * t * t);
        c({3, 0}) += wl2 * q * q;
        c({2, 1}) += wl2 * (mix + Real(4) * t * q * u);
        c({1, 2}) += wl2 * (mix - Real(4) * t * q * u);
        c({0, 3}) += wl2 * q * q;
    }
    return c;
}

inline ScalarMoments closed_form_moments(const ExampleSpec& spec)
{
    return {closed_form_coefficients<double>(spec)};
}

/// rho_n = -(coefficient of 1/z^n in r_{|n|}) through level 3.
template <typename Real = double>
BasicCoefficientTable<Real> closed_form_residues(const ExampleSpec& spec)
{
    return -closed_form_coefficients<Real>(spec);
}

/// Seeded generator: w in (0, 1], lambda in [-5, 5], t in [0.05, 0.95].
class ExampleGenerator
{
public:
    explicit ExampleGenerator(std::uint64_t seed = 0) : rng_(seed) {}

    ExampleTerm term()
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        ExampleTerm out;
        out.w      = 1.0 - unit(rng_);
        out.lambda = -5.0 + 10.0 * unit(rng_);
        out.t      = 0.05 + 0.9 * unit(rng_);
        return out;
    }

    /// Between 1 and max_terms random terms.
    ExampleSpec spec(int max_terms)
    {
        if (max_terms < 1)
            throw std::invalid_argument("max_terms must be positive");
        std::uniform_int_distribution<int> count(1, max_terms);
        ExampleSpec s;
        const int J = count(rng_);
        for (int j = 0; j < J; ++j)
            s.terms.push_back(term());
        return s;
    }

    /// `count` specs; the first four cover the corners t = 0, t = 1,
    /// t = 1/sqrt(2), and an all-1/sqrt(2) spec. Remaining specs are random.
    std::vector<ExampleSpec> suite(int count, int max_terms)
    {
        std::vector<ExampleSpec> out;
        const double corners[] = {0.0, 1.0, 1.0 / std::numbers::sqrt2};
        for (double t : corners)
        {
            if (static_cast<int>(out.size()) >= count)
                break;
            auto s = spec(std::max(1, max_terms - 1));
            auto extra = term();
            extra.t = t;
            s.terms.push_back(extra);
            out.push_back(std::move(s));
        }
        if (static_cast<int>(out.size()) < count)
        {
            auto s = spec(max_terms);
            for (auto& term : s.terms)
                term.t = 1.0 / std::numbers::sqrt2;
            out.push_back(std::move(s));
        }
        while (static_cast<int>(out.size()) < count)
            out.push_back(spec(max_terms));
        return out;
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace hvms

#endif // HVMS_EXAMPLE_FAMILY_HPP
