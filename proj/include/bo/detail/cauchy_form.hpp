#pragma once

#include <boost/multiprecision/float128.hpp>
#include <complex>
#include <span>

namespace bo::detail {

using lcplx = std::complex<long double>;
using qcplx = std::complex<boost::multiprecision::float128>;

/// sum_{j,k} w_j a_j conj(b_k) * int_R dx / ((x - p_j)(x - conj(q_k))), with w_j = p_j when
/// weight_by_pole is set and 1 otherwise. Poles must be off the real axis.
///
/// For nearly dependent families of simple fractions the terms cancel by many orders of
/// magnitude, so the sum is accumulated in binary128.
lcplx simple_pole_form(std::span<const std::complex<double>> p, std::span<const lcplx> a,
                       std::span<const std::complex<double>> q, std::span<const lcplx> b, bool weight_by_pole = false);
qcplx simple_pole_form(std::span<const std::complex<double>> p, std::span<const qcplx> a,
                       std::span<const std::complex<double>> q, std::span<const qcplx> b, bool weight_by_pole = false);

}  // namespace bo::detail
