// Behaviour at infinity along rays z = i s b, b in R^2_+. Residues rho_n are
// fitted level by level from a black-box h and then certified through the
// scaled error ||z||^K |h(z) - sum rho_n / z^n|.
//
// Evaluators are callables ExtPoint -> complex<long double>; at the default
// grid double roundoff times ||z||^K is already above the threshold.

#ifndef HVMS_ASYMPTOTICS_HPP
#define HVMS_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <hvms/coefficient_table.hpp>
#include <hvms/errors.hpp>
#include <hvms/index_set.hpp>
#include <hvms/realization.hpp>
#include <hvms/tolerances.hpp>

namespace hvms
{

template <typename F>
concept Evaluator = requires(const F& f, const ExtPoint& z) {
    { f(z) } -> std::convertible_to<ExtComplex>;
};

/// Geometric grid smin, smin r, smin r^2, ... up to smax (inclusive within
/// relative 1e-9).
inline std::vector<double> geometric_grid(double smin, double smax, double ratio)
{
    if (!(smin >= 1.0) || !(smax >= smin) || !(ratio > 1.0) || !std::isfinite(smax))
        throw std::invalid_argument("s grid needs 1 <= smin <= smax and ratio > 1");
    std::vector<double> out;
    for (int k = 0;; ++k)
    {
        const double s = smin * std::pow(ratio, k);
        if (s > smax * (1.0 + 1e-9))
            break;
        out.push_back(s);
        if (out.size() > 100000)
            throw std::invalid_argument("s grid too fine");
    }
    return out;
}

struct GridSpec
{
    double smin  = 1e2;
    double smax  = 1e6;
    double ratio = 1.7782794100389228; // 10^{1/4}

    std::vector<double> values() const { return geometric_grid(smin, smax, ratio); }

    /// Shorter grid for h built from computed realizations: an invariant
    /// defect delta shows up as delta * s^{2N-2} in the scaled error.
    static GridSpec for_realization() { return {1e2, 1e5}; }
};

struct ApproachRegion
{
    double b1 = 1.0;
    double b2 = 1.0;
    std::vector<double> s_values;

    void validate() const
    {
        if (!(b1 > 0.0) || !(b2 > 0.0) || !std::isfinite(b1) || !std::isfinite(b2))
            throw std::invalid_argument("ray direction must have strictly positive entries");
        if (s_values.empty())
            throw std::invalid_argument("ray needs at least one s value");
        for (std::size_t i = 0; i < s_values.size(); ++i)
        {
            if (!(s_values[i] >= 1.0) || !std::isfinite(s_values[i]))
                throw std::invalid_argument("s values must be finite and >= 1");
            if (i > 0 && !(s_values[i] > s_values[i - 1]))
                throw std::invalid_argument("s values must be strictly increasing");
        }
    }

    double norm_b() const { return std::hypot(b1, b2); }

    /// c = ||b|| / min(b1, b2); every z = i s b has ||z|| = c min(Im z1, Im z2).
    double aperture() const { return norm_b() / std::min(b1, b2); }

    ExtPoint point(double s) const
    {
        return {ExtComplex(0, static_cast<ExtReal>(s) * static_cast<ExtReal>(b1)),
                ExtComplex(0, static_cast<ExtReal>(s) * static_cast<ExtReal>(b2))};
    }
};

/// (1,1), then coprime (p,q), (q,p) for p < q in increasing q.
inline std::vector<std::pair<double, double>> default_directions(int count)
{
    std::vector<std::pair<double, double>> out;
    if (count <= 0)
        return out;
    out.emplace_back(1.0, 1.0);
    for (int q = 2; static_cast<int>(out.size()) < count; ++q)
        for (int p = 1; p < q && static_cast<int>(out.size()) < count; ++p)
        {
            if (std::gcd(p, q) != 1)
                continue;
            out.emplace_back(p, q);
            if (static_cast<int>(out.size()) < count)
                out.emplace_back(q, p);
        }
    return out;
}

inline std::vector<ApproachRegion> make_regions(const std::vector<std::pair<double, double>>& dirs,
                                                const GridSpec& grid = {})
{
    const auto s = grid.values();
    std::vector<ApproachRegion> out;
    for (const auto& [b1, b2] : dirs)
        out.push_back({b1, b2, s});
    return out;
}

inline std::vector<ApproachRegion> default_regions(int count, const GridSpec& grid = {})
{
    return make_regions(default_directions(count), grid);
}

struct DecayRow
{
    double b1 = 0.0;
    double b2 = 0.0;
    double s  = 0.0;
    double scaled_error = 0.0;
};

struct RayVerdict
{
    double b1 = 0.0;
    double b2 = 0.0;
    double aperture = 0.0;
    double final_scaled_error = 0.0;
    bool decreasing = true;
    bool passed = true;
};

/// Extrapolation diagnostics for one level of extract_residues.
struct LevelDiagnostics
{
    int level = 0;
    double condition = 1.0;     ///< condition number of the direction design
    double error_estimate = 0.0; ///< worst tail extrapolation error over rays
    bool converged = true;
};

struct ExpansionReport
{
    int order = 0;
    CoefficientTable residues;
    /// The same residues at evaluation precision, for re-certification.
    ExtCoefficientTable residues_ext;
    std::vector<DecayRow> decay_table;
    std::vector<RayVerdict> rays;
    std::vector<LevelDiagnostics> levels;
    double threshold = 0.0;
    bool certified = false;
};

namespace detail
{

/// Scale used for the decay threshold: max(1, sum of |rho_n| at level 1).
template <typename T>
double level_one_scale(const BasicCoefficientTable<T>& rho)
{
    return std::max(1.0, static_cast<double>(std::abs(rho.get_or_zero(e1)) +
                                             std::abs(rho.get_or_zero(e2))));
}

template <typename T>
ExtComplex truncated_expansion(const BasicCoefficientTable<T>& rho, int order, const ExtPoint& z)
{
    const ExtComplex w1 = ExtReal(1) / z.z1;
    const ExtComplex w2 = ExtReal(1) / z.z2;
    ExtComplex acc(0);
    for (int g = 1; g <= order; ++g)
        acc += rho.template evaluate_level<ExtComplex>(g, w1, w2);
    return acc;
}

/// i^l for integer l >= 0.
inline ExtComplex i_power(int l)
{
    switch (l % 4)
    {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

struct Extrapolated
{
    ExtReal value = 0;
    ExtReal error = std::numeric_limits<ExtReal>::infinity();
};

/// Neville tableau towards x = 0 over every contiguous window of the samples;
/// returns the entry with the smallest error estimate.
inline Extrapolated extrapolate_to_zero(const std::vector<ExtReal>& x,
                                        const std::vector<ExtReal>& q, int max_order = 6)
{
    const auto m = x.size();
    Extrapolated best;
    if (m == 0)
        return best;
    if (m == 1)
        return {q[0], std::abs(q[0])};
    std::vector<std::vector<ExtReal>> T(m);
    for (std::size_t j = 0; j < m; ++j)
    {
        T[j].push_back(q[j]);
        const auto kmax = std::min<std::size_t>(j, static_cast<std::size_t>(max_order));
        for (std::size_t k = 1; k <= kmax; ++k)
        {
            const ExtReal xa = x[j - k], xb = x[j];
            const ExtReal v  = (xa * T[j][k - 1] - xb * T[j - 1][k - 1]) / (xa - xb);
            T[j].push_back(v);
            const ExtReal err =
                std::max(std::abs(v - T[j][k - 1]), std::abs(v - T[j - 1][k - 1]));
            if (err < best.error)
                best = {v, err};
        }
    }
    return best;
}

using ExtRealMatrix = Eigen::Matrix<ExtReal, Eigen::Dynamic, Eigen::Dynamic>;
using ExtRealVector = Eigen::Matrix<ExtReal, Eigen::Dynamic, 1>;

/// Design rows 1/bhat^n over |n| = l with bhat = b / ||b||.
inline ExtRealMatrix direction_design(const std::vector<ApproachRegion>& regions, int l)
{
    ExtRealMatrix V(static_cast<Eigen::Index>(regions.size()), l + 1);
    for (std::size_t i = 0; i < regions.size(); ++i)
    {
        const ExtReal nb = std::hypot(static_cast<ExtReal>(regions[i].b1),
                                      static_cast<ExtReal>(regions[i].b2));
        const ExtReal x1 = nb / regions[i].b1, x2 = nb / regions[i].b2;
        const auto g    = grade(l);
        for (int j = 0; j <= l; ++j)
            V(static_cast<Eigen::Index>(i), j) = monomial(x1, x2, g[static_cast<std::size_t>(j)]);
    }
    return V;
}

inline std::vector<ApproachRegion> distinct_directions(const std::vector<ApproachRegion>& regions)
{
    std::vector<ApproachRegion> out;
    for (const auto& r : regions)
    {
        const double ratio = r.b1 / r.b2;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const ApproachRegion& o) {
            return std::abs(o.b1 / o.b2 - ratio) <= 1e-12 * std::max(1.0, ratio);
        });
        if (!seen)
            out.push_back(r);
    }
    return out;
}

} // namespace detail

/// Scaled errors ||z||^order |h(z) - sum_{|n| <= order} rho_n / z^n| on every
/// sampled point. A ray passes when its last quarter is non-increasing (up to
/// a noise floor of 10% of the threshold) and its final entry is below
/// decay_tol * max(1, |rho_(1,0)| + |rho_(0,1)|).
template <Evaluator F, typename T>
ExpansionReport certify_expansion(const F& h, const BasicCoefficientTable<T>& residues, int order,
                                  const std::vector<ApproachRegion>& regions,
                                  double decay_tol = Tolerances{}.decay)
{
    if (order < 1)
        throw std::invalid_argument("expansion order must be positive");
    if (residues.max_order() < order)
        throw std::invalid_argument("residues must cover all levels up to the expansion order");
    if (regions.empty())
        throw std::invalid_argument("certification needs at least one ray");
    if (!(decay_tol > 0.0))
        throw std::invalid_argument("decay tolerance must be positive");

    ExpansionReport rep;
    rep.order     = order;
    const auto rho = residues.truncated(order);
    rep.residues     = rho.template cast<double>();
    rep.residues_ext = rho.template cast<ExtReal>();
    rep.threshold  = decay_tol * detail::level_one_scale(rho);
    rep.certified = true;
    const double floor = 1e-1 * rep.threshold;

    for (const auto& region : regions)
    {
        region.validate();
        std::vector<double> col;
        for (double s : region.s_values)
        {
            const ExtPoint z   = region.point(s);
            const ExtComplex v = static_cast<ExtComplex>(h(z));
            const ExtReal zn   = static_cast<ExtReal>(s) * static_cast<ExtReal>(region.norm_b());
            const ExtReal err  = std::pow(zn, static_cast<ExtReal>(order)) *
                                std::abs(v - detail::truncated_expansion(rho, order, z));
            col.push_back(static_cast<double>(err));
            rep.decay_table.push_back({region.b1, region.b2, s, col.back()});
        }
        RayVerdict ray{region.b1, region.b2, region.aperture(), col.back()};
        const std::size_t tail = col.size() - std::max<std::size_t>(1, col.size() / 4);
        for (std::size_t i = std::max<std::size_t>(tail, 1); i < col.size(); ++i)
            if (!std::isfinite(col[i]) || col[i] > col[i - 1] * (1.0 + 1e-3) + floor)
                ray.decreasing = false;
        ray.passed = ray.decreasing && std::isfinite(col.back()) && col.back() < rep.threshold;
        rep.certified = rep.certified && ray.passed;
        rep.rays.push_back(ray);
    }
    return rep;
}

/// Black-box residue extraction through order 2N-1. On the ray z = i s b,
///   h(isb) ~ sum_l i^{-l} s^{-l} P_l(b),   P_l(b) = sum_{|n|=l} rho_n / b^n,
/// so P_l = lim Re(i^l s^l [h - lower levels of the same parity]); the limit is
/// taken by Neville extrapolation in 1/s^2 per ray, then {rho_n : |n| = l} is
/// solved from the direction set by least squares. The returned report carries
/// the decay table of the extracted expansion.
template <Evaluator F>
ExpansionReport extract_residues(const F& h, int N, const std::vector<ApproachRegion>& regions,
                                 double decay_tol = Tolerances{}.decay,
                                 double condition_limit = 1e10)
{
    if (N < 1)
        throw std::invalid_argument("order parameter N must be positive");
    const int K = 2 * N - 1;
    const auto dirs = detail::distinct_directions(regions);
    if (static_cast<int>(dirs.size()) < K + 1)
        throw std::invalid_argument("extraction through level " + std::to_string(K) + " needs " +
                                    std::to_string(K + 1) + " distinct directions, got " +
                                    std::to_string(dirs.size()));
    for (const auto& r : dirs)
        r.validate();

    // Samples h(isb) per ray, evaluated once.
    std::vector<std::vector<ExtComplex>> values(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (double s : dirs[i].s_values)
            values[i].push_back(static_cast<ExtComplex>(h(dirs[i].point(s))));

    ExtCoefficientTable rho(K);
    std::vector<LevelDiagnostics> levels;
    // P_l(b) on each ray, kept for the telescoping subtraction.
    std::vector<std::vector<ExtReal>> P(dirs.size(), std::vector<ExtReal>(K + 1, 0));
    bool converged = true;

    for (int l = 1; l <= K; ++l)
    {
        LevelDiagnostics diag{l};
        const detail::ExtRealMatrix V = detail::direction_design(dirs, l);
        diag.condition = detail::condition_number(V.cast<double>());
        if (!(diag.condition <= condition_limit))
            throw numerical_error("direction set is ill-conditioned at level " + std::to_string(l) +
                                  " (condition " + std::to_string(diag.condition) + ")");

        detail::ExtRealVector rhs(static_cast<Eigen::Index>(dirs.size()));
        double worst_rel = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i)
        {
            const auto& ray = dirs[i];
            std::vector<ExtReal> x, q;
            for (std::size_t j = 0; j < ray.s_values.size(); ++j)
            {
                const ExtReal s = static_cast<ExtReal>(ray.s_values[j]);
                ExtComplex res  = values[i][j];
                for (int m = l - 2; m >= 1; m -= 2)
                    res -= detail::i_power(4 - m % 4) * std::pow(s, static_cast<ExtReal>(-m)) *
                           P[i][static_cast<std::size_t>(m)];
                const ExtComplex scaled = detail::i_power(l) * std::pow(s, static_cast<ExtReal>(l)) * res;
                x.push_back(ExtReal(1) / (s * s));
                q.push_back(scaled.real());
            }
            const auto ex = detail::extrapolate_to_zero(x, q);
            P[i][static_cast<std::size_t>(l)] = ex.value;
            const ExtReal nb = std::hypot(static_cast<ExtReal>(ray.b1), static_cast<ExtReal>(ray.b2));
            // P_l(bhat) = ||b||^l P_l(b)
            rhs(static_cast<Eigen::Index>(i)) = ex.value * std::pow(nb, static_cast<ExtReal>(l));
            worst_rel = std::max(worst_rel, static_cast<double>(ex.error / (1 + std::abs(ex.value))));
        }
        diag.error_estimate = worst_rel;
        diag.converged      = worst_rel < 1e-6;
        converged           = converged && diag.converged;

        const detail::ExtRealVector c = V.colPivHouseholderQr().solve(rhs);
        const auto g       = grade(l);
        for (int j = 0; j <= l; ++j)
            rho(g[static_cast<std::size_t>(j)]) = c(j);
        levels.push_back(diag);
    }

    auto rep      = certify_expansion(h, rho, K, regions, decay_tol);
    rep.levels    = std::move(levels);
    rep.certified = rep.certified && converged;
    return rep;
}

/// |z^{-n}| <= c^{|n|} ||z||^{-|n|} on every sampled point, together with
/// ||z|| <= c min(Im z1, Im z2).
inline bool aperture_bound_check(const ApproachRegion& region, MultiIndex n)
{
    region.validate();
    if (!n.nonnegative())
        throw std::invalid_argument("aperture bound is stated for nonnegative multi-indices");
    const ExtReal c = static_cast<ExtReal>(region.aperture());
    for (double s : region.s_values)
    {
        const ExtPoint z = region.point(s);
        const ExtReal zn = std::hypot(std::abs(z.z1), std::abs(z.z2));
        const ExtReal slack = 1 + ExtReal(1e-12);
        if (zn > c * std::min(z.z1.imag(), z.z2.imag()) * slack)
            return false;
        const ExtReal lhs = std::abs(monomial(ExtReal(1) / z.z1, ExtReal(1) / z.z2, n));
        const ExtReal rhs = std::pow(c, static_cast<ExtReal>(n.order())) *
                            std::pow(zn, -static_cast<ExtReal>(n.order()));
        if (lhs > rhs * slack)
            return false;
    }
    return true;
}

struct TypeOneReport
{
    ExtComplex limit{};
    /// Richardson estimates E_j = (s_j g_j - s_{j-1} g_{j-1}) / (s_j - s_{j-1}), g = s h(is, is).
    std::vector<ExtComplex> estimates;
    std::vector<double> s_values;
    double spread = 0.0; ///< max relative change across the last quarter
    bool type_one = false;
};

/// Estimates lim s h(is, is). The limit is accepted when the Richardson
/// estimates over the last quarter of the grid agree to `stability_tol`.
template <Evaluator F>
TypeOneReport type1_limit(const F& h, const GridSpec& grid = {}, double stability_tol = 1e-6)
{
    const auto s = grid.values();
    if (s.size() < 2)
        throw std::invalid_argument("type-I limit needs at least two s values");
    TypeOneReport rep;
    std::vector<ExtComplex> g;
    for (double sv : s)
    {
        const ExtReal se = static_cast<ExtReal>(sv);
        g.push_back(se * static_cast<ExtComplex>(h(ExtPoint{ExtComplex(0, se), ExtComplex(0, se)})));
    }
    for (std::size_t j = 1; j < s.size(); ++j)
    {
        const ExtReal a = static_cast<ExtReal>(s[j - 1]), b = static_cast<ExtReal>(s[j]);
        rep.estimates.push_back((b * g[j] - a * g[j - 1]) / (b - a));
        rep.s_values.push_back(s[j]);
    }
    rep.limit = rep.estimates.back();
    const std::size_t m    = rep.estimates.size();
    const std::size_t tail = m - std::max<std::size_t>(1, m / 4);
    for (std::size_t j = std::max<std::size_t>(tail, 1); j < m; ++j)
    {
        const ExtReal d = std::abs(rep.estimates[j] - rep.estimates[j - 1]);
        rep.spread = std::max(rep.spread,
                              static_cast<double>(d / (1 + std::abs(rep.estimates[j]))));
    }
    rep.type_one = std::isfinite(rep.spread) && rep.spread <= stability_tol;
    return rep;
}

/// b1,b2,s,scaled_error with 17 significant digits.
inline void write_decay_csv(std::ostream& os, const ExpansionReport& rep)
{
    os << "b1,b2,s,scaled_error\n";
    char buf[128];
    for (const auto& row : rep.decay_table)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", row.b1, row.b2, row.s,
                      row.scaled_error);
        os << buf;
    }
}

} // namespace hvms

#endif // HVMS_ASYMPTOTICS_HPP
