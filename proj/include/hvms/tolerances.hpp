// Numerical thresholds shared by the verifier, the realization builder and
// the asymptotic certifier. All are relative to a problem scale noted per
// field.

#ifndef HVMS_TOLERANCES_HPP
#define HVMS_TOLERANCES_HPP

#include <stdexcept>
#include <string>

namespace hvms
{

struct Tolerances
{
    /// max |a - a*| <= hermitian * (1 + max |a|)
    double hermitian = 1e-10;
    /// smallest eigenvalue >= -psd * (1 + spectral norm)
    double psd = 1e-9;
    /// shift consistency and corner entries, relative to 1 + max |a|
    double equality = 1e-9;
    /// near-kernel eigenvalues <= kernel * (1 + spectral norm)
    double kernel = 1e-8;
    /// kept Gram eigenvalues > rank * max(1, largest eigenvalue)
    double rank = 1e-10;
    /// relative least-squares residual in homogeneity fits
    double fit = 1e-8;
    /// final scaled error in expansion certification, relative to level-1 size
    double decay = 1e-4;

    void validate() const
    {
        auto check = [](double v, const char* name) {
            if (!(v > 0.0))
                throw std::invalid_argument(std::string("tolerance '") + name +
                                            "' must be strictly positive");
        };
        check(hermitian, "hermitian");
        check(psd, "psd");
        check(equality, "equality");
        check(kernel, "kernel");
        check(rank, "rank");
        check(fit, "fit");
        check(decay, "decay");
    }
};

} // namespace hvms

#endif // HVMS_TOLERANCES_HPP
