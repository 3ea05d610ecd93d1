#include "bo/detail/cauchy_form.hpp"

namespace bo::detail {

namespace {

using quad = __float128;

struct QC {
  quad re = 0, im = 0;
};

QC operator+(QC a, QC b) { return {a.re + b.re, a.im + b.im}; }
QC operator-(QC a, QC b) { return {a.re - b.re, a.im - b.im}; }
QC operator*(QC a, QC b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
QC operator/(QC a, QC b) {
  const quad d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
QC conj(QC a) { return {a.re, -a.im}; }

QC widen(std::complex<double> z) { return {z.real(), z.imag()}; }
QC widen(lcplx z) { return {z.real(), z.imag()}; }
QC widen(qcplx z) { return {z.real().backend().value(), z.imag().backend().value()}; }

// 2 pi as a double-double pair
const quad kTwoPi = static_cast<quad>(6.283185307179586232) + static_cast<quad>(2.4492935982947064e-16);


template <class C>
QC form(std::span<const std::complex<double>> p, std::span<const C> a, std::span<const std::complex<double>> q,
        std::span<const C> b, bool weight_by_pole) {
  QC sum;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const QC pj = widen(p[j]);
    QC aj = widen(a[j]);
    if (weight_by_pole) aj = aj * pj;
    const bool p_upper = p[j].imag() > 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      const bool q_upper = q[k].imag() < 0.0;  // pole of conj(g) is conj(q_k)
      if (p_upper == q_upper) continue;        // both poles on one side: the integral vanishes
      const QC qk = conj(widen(q[k]));
      const QC denom = p_upper ? pj - qk : qk - pj;
      sum = sum + aj * conj(widen(b[k])) * QC{0, kTwoPi} / denom;
    }
  }
  return sum;
}

}  // namespace

lcplx simple_pole_form(std::span<const std::complex<double>> p, std::span<const lcplx> a,
                       std::span<const std::complex<double>> q, std::span<const lcplx> b, bool weight_by_pole) {
  const QC s = form(p, a, q, b, weight_by_pole);
  return {static_cast<long double>(s.re), static_cast<long double>(s.im)};
}

qcplx simple_pole_form(std::span<const std::complex<double>> p, std::span<const qcplx> a,
                       std::span<const std::complex<double>> q, std::span<const qcplx> b, bool weight_by_pole) {
  const QC s = form(p, a, q, b, weight_by_pole);
  using boost::multiprecision::float128;
  return {float128(s.re), float128(s.im)};
}

}  // namespace bo::detail
