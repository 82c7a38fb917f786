// Small dense helpers on top of Eigen: Hermitian checks, spectral bounds,
// rank-revealing pseudoinverse and a precision-generic LU solve.

#ifndef HVMS_LINALG_HPP
#define HVMS_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include <hvms/errors.hpp>
#include <hvms/index_set.hpp>

namespace hvms
{

namespace detail
{

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& m)
{
    if (m.rows() != m.cols())
        return std::numeric_limits<double>::infinity();
    return m.size() == 0 ? 0.0
                         : static_cast<double>((m - m.adjoint()).cwiseAbs().maxCoeff());
}

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

/// Eigen-decomposition of the Hermitian part of m (ascending eigenvalues).
inline Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eig(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
    if (es.info() != Eigen::Success)
        throw numerical_error("Hermitian eigensolver did not converge");
    return es;
}

inline double spectral_norm_hermitian(const RealVector& eigenvalues)
{
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

/// Moore-Penrose pseudoinverse; singular values <= threshold are dropped.
inline Matrix pseudo_inverse(const Matrix& m, double threshold, Eigen::Index* rank = nullptr)
{
    if (m.size() == 0)
    {
        if (rank)
            *rank = 0;
        return Matrix::Zero(m.cols(), m.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Matrix out = Matrix::Zero(m.cols(), m.rows());
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
    {
        if (sv(i) > threshold)
        {
            out += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
            ++r;
        }
    }
    if (rank)
        *rank = r;
    return out;
}

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
ComplexMatrixT<Real> cast_to(const Matrix& m)
{
    ComplexMatrixT<Real> out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            out(i, j) = std::complex<Real>(static_cast<Real>(m(i, j).real()),
                                           static_cast<Real>(m(i, j).imag()));
    return out;
}

template <typename Real>
ComplexVectorT<Real> cast_to(const Vector& v)
{
    ComplexVectorT<Real> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = std::complex<Real>(static_cast<Real>(v(i).real()),
                                    static_cast<Real>(v(i).imag()));
    return out;
}

} // namespace detail

} // namespace hvms

#endif // HVMS_LINALG_HPP
