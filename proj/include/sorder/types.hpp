#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace sorder {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

inline constexpr int kDefaultDim = 48;
inline constexpr int kMaxDim = 4096;

// Point of phase space, alpha = re + i im = (x + i p) / sqrt(2).
struct PhasePoint {
    double re = 0.0;
    double im = 0.0;

    constexpr PhasePoint() = default;
    constexpr PhasePoint(double r, double i) : re(r), im(i) {}
    constexpr explicit PhasePoint(cplx z) : re(z.real()), im(z.imag()) {}

    static PhasePoint from_xp(double x, double p);

    cplx value() const { return {re, im}; }
    double x() const;
    double p() const;
    double norm2() const { return re * re + im * im; }
    double abs() const;
};

}  // namespace sorder
