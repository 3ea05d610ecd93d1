#include "bo/rational_hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bo/detail/cauchy_form.hpp"
#include "bo/errors.hpp"

namespace bo {

namespace {

bool pole_less(const PoleTerm& a, const PoleTerm& b) {
  if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
  if (a.pole.imag() != b.pole.imag()) return a.pole.imag() < b.pole.imag();
  return a.order < b.order;
}

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double max_pole_modulus(const PoleResidueForm& f, const PoleResidueForm& g) {
  double s = 0.0;
  for (const auto& t : f.terms()) s = std::max(s, std::abs(t.pole));
  for (const auto& t : g.terms()) s = std::max(s, std::abs(t.pole));
  return s;
}

// Partial fractions of c / ((x-p)^m (x-q)^n) for p != q.
void split_product(cplx p, int m, cplx q, int n, cplx c, std::vector<PoleTerm>& out) {
  const cplx d = p - q;
  for (int k = 1; k <= m; ++k) {
    const int j = m - k;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.push_back({p, k, c * sign * binomial(n + j - 1, j) * ipow(d, -(n + j))});
  }
  for (int l = 1; l <= n; ++l) {
    const int j = n - l;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.push_back({q, l, c * sign * binomial(m + j - 1, j) * ipow(-d, -(m + j))});
  }
}

cplx simple_pole_inner_product(const PoleResidueForm& f, const PoleResidueForm& g) {
  std::vector<cplx> p, q;
  std::vector<detail::lcplx> a, b;
  for (const auto& t : f.terms()) {
    p.push_back(t.pole);
    a.emplace_back(t.coeff.real(), t.coeff.imag());
  }
  for (const auto& t : g.terms()) {
    q.push_back(t.pole);
    b.emplace_back(t.coeff.real(), t.coeff.imag());
  }
  const detail::lcplx s = detail::simple_pole_form(p, a, q, b);
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace

PoleResidueForm::PoleResidueForm(std::vector<PoleTerm> terms, cplx constant)
    : terms_(std::move(terms)), constant_(constant) {
  for (const auto& t : terms_) {
    if (t.order < 1) throw Error(ErrorKind::DegreeError, "pole order must be positive");
    if (!(std::abs(t.pole.imag()) > tol::pole_real)) {
      std::ostringstream os;
      os << "pole " << t.pole << " lies on the real axis";
      throw Error(ErrorKind::NotSquareIntegrable, os.str());
    }
  }
  canonicalize();
}

PoleResidueForm PoleResidueForm::term(cplx pole, cplx coeff, int order) {
  return PoleResidueForm({{pole, order, coeff}});
}

PoleResidueForm PoleResidueForm::constant_only(cplx c) { return PoleResidueForm({}, c); }

void PoleResidueForm::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), pole_less);
  std::vector<PoleTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().pole == t.pole && merged.back().order == t.order)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  double scale = std::abs(constant_);
  for (const auto& t : merged) scale = std::max(scale, std::abs(t.coeff));
  const double cutoff = tol::drop * scale;
  std::erase_if(merged, [&](const PoleTerm& t) { return !(std::abs(t.coeff) > cutoff); });
  if (std::abs(constant_) <= cutoff) constant_ = 0.0;
  terms_ = std::move(merged);
}

bool PoleResidueForm::in_hardy() const {
  return in_l2() &&
         std::all_of(terms_.begin(), terms_.end(), [](const PoleTerm& t) { return t.pole.imag() < 0.0; });
}

int PoleResidueForm::max_order() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.order);
  return m;
}

std::vector<cplx> PoleResidueForm::poles() const {
  std::vector<cplx> out;
  for (const auto& t : terms_)
    if (out.empty() || out.back() != t.pole) out.push_back(t.pole);
  return out;
}

cplx PoleResidueForm::coeff(cplx pole, int order) const {
  for (const auto& t : terms_)
    if (t.pole == pole && t.order == order) return t.coeff;
  return 0.0;
}

double PoleResidueForm::magnitude() const {
  double s = std::abs(constant_);
  for (const auto& t : terms_) s = std::max(s, std::abs(t.coeff));
  return s;
}

PoleResidueForm PoleResidueForm::conjugate_reflection() const {
  std::vector<PoleTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({std::conj(t.pole), t.order, std::conj(t.coeff)});
  return PoleResidueForm(std::move(out), std::conj(constant_));
}

PoleResidueForm PoleResidueForm::without_order(int order) const {
  PoleResidueForm r = *this;
  std::erase_if(r.terms_, [order](const PoleTerm& t) { return t.order == order; });
  return r;
}

PoleResidueForm PoleResidueForm::with_constant(cplx c) const {
  PoleResidueForm r = *this;
  r.constant_ = c;
  return r;
}

PoleResidueForm PoleResidueForm::operator-() const {
  PoleResidueForm r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  r.constant_ = -r.constant_;
  return r;
}

PoleResidueForm& PoleResidueForm::operator+=(const PoleResidueForm& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  constant_ += other.constant_;
  canonicalize();
  return *this;
}

PoleResidueForm& PoleResidueForm::operator-=(const PoleResidueForm& other) { return *this += -other; }

PoleResidueForm& PoleResidueForm::operator*=(cplx s) {
  for (auto& t : terms_) t.coeff *= s;
  constant_ *= s;
  canonicalize();
  return *this;
}

PoleResidueForm pf_decompose(std::span<const cplx> numerator_coeffs, std::span<const cplx> den_roots) {
  // strip leading zeros so the degree test sees the true degree
  std::size_t lead = 0;
  while (lead < numerator_coeffs.size() && numerator_coeffs[lead] == 0.0) ++lead;
  const auto num = numerator_coeffs.subspan(lead);
  const std::size_t n = den_roots.size();
  if (num.empty()) return {};
  if (num.size() - 1 > n) throw Error(ErrorKind::DegreeError, "numerator degree exceeds denominator degree");
  if (n > 1 && relative_min_separation(den_roots) <= tol::degeneracy)
    throw Error(ErrorKind::DegenerateParameters, "denominator roots collide");

  std::vector<PoleTerm> terms;
  terms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx p = den_roots[k];
    cplx value = 0.0;
    for (const cplx a : num) value = value * p + a;  // Horner
    cplx dq = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) dq *= p - den_roots[j];
    terms.push_back({p, 1, value / dq});
  }
  const cplx constant = (num.size() - 1 == n) ? num.front() : cplx(0.0);
  return PoleResidueForm(std::move(terms), constant);
}

PoleResidueForm multiply(const PoleResidueForm& f, const PoleResidueForm& g) {
  const double scale = max_pole_modulus(f, g);
  std::vector<PoleTerm> out;
  out.reserve(f.terms().size() * g.terms().size() * 2 + f.terms().size() + g.terms().size());
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      const cplx c = a.coeff * b.coeff;
      if (a.pole == b.pole) {
        out.push_back({a.pole, a.order + b.order, c});
        continue;
      }
      if (std::abs(a.pole - b.pole) <= tol::degeneracy * scale)
        throw Error(ErrorKind::DegenerateParameters, "distinct poles too close to split a product");
      split_product(a.pole, a.order, b.pole, b.order, c, out);
    }
  }
  if (g.constant() != 0.0)
    for (const auto& a : f.terms()) out.push_back({a.pole, a.order, a.coeff * g.constant()});
  if (f.constant() != 0.0)
    for (const auto& b : g.terms()) out.push_back({b.pole, b.order, b.coeff * f.constant()});
  return PoleResidueForm(std::move(out), f.constant() * g.constant());
}

PoleResidueForm derivative(const PoleResidueForm& f) {
  std::vector<PoleTerm> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) out.push_back({t.pole, t.order + 1, -static_cast<double>(t.order) * t.coeff});
  return PoleResidueForm(std::move(out));
}

PoleResidueForm multiply_by_x(const PoleResidueForm& f) {
  if (f.constant() != 0.0) throw Error(ErrorKind::DegreeError, "x times a nonzero constant is not rational-decaying");
  std::vector<PoleTerm> out;
  cplx constant = 0.0;
  // x = (x - p) + p
  for (const auto& t : f.terms()) {
    if (t.order == 1)
      constant += t.coeff;
    else
      out.push_back({t.pole, t.order - 1, t.coeff});
    out.push_back({t.pole, t.order, t.pole * t.coeff});
  }
  return PoleResidueForm(std::move(out), constant);
}

PoleResidueForm szego_project(const PoleResidueForm& f) {
  if (!f.in_l2()) throw Error(ErrorKind::NotSquareIntegrable, "Szego projection needs a zero constant");
  std::vector<PoleTerm> kept;
  for (const auto& t : f.terms())
    if (t.pole.imag() < 0.0) kept.push_back(t);
  return PoleResidueForm(std::move(kept));
}

cplx inner_product(const PoleResidueForm& f, const PoleResidueForm& g) {
  if (!f.in_l2() || !g.in_l2()) throw Error(ErrorKind::NotSquareIntegrable, "inner product needs zero constants");
  if (f.max_order() <= 1 && g.max_order() <= 1) return simple_pole_inner_product(f, g);
  // Term by term: only pairs with one pole on each side contribute, via the residue at the upper one.
  detail::lcplx residues = 0.0L;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      const cplx p = a.pole, r = std::conj(b.pole);
      if ((p.imag() > 0.0) == (r.imag() > 0.0)) continue;
      const bool at_p = p.imag() > 0.0;
      const int k = at_p ? a.order : b.order;
      const int total = a.order + b.order - 1;
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      const detail::lcplx d = at_p ? detail::lcplx(p - r) : detail::lcplx(r - p);
      detail::lcplx dp = 1.0L;
      for (int i = 0; i < total; ++i) dp *= d;
      const detail::lcplx c = detail::lcplx(a.coeff) * std::conj(detail::lcplx(b.coeff));
      residues += c * static_cast<long double>(sign * binomial(total - 1, k - 1)) / dp;
    }
  }
  const cplx s(static_cast<double>(residues.real()), static_cast<double>(residues.imag()));
  return cplx(0.0, 2.0 * std::numbers::pi) * s;
}

cplx evaluate(const PoleResidueForm& f, cplx x) {
  cplx sum = f.constant();
  for (const auto& t : f.terms()) {
    const cplx d = x - t.pole;
    if (std::abs(d) < tol::degeneracy * std::max(1.0, std::abs(t.pole)))
      throw Error(ErrorKind::PoleProximity, "evaluation point coincides with a pole");
    sum += t.coeff / ipow(d, t.order);
  }
  return sum;
}

double relative_min_separation(std::span<const cplx> points) {
  double scale = 0.0;
  for (const cplx p : points) scale = std::max(scale, std::abs(p));
  if (scale == 0.0) scale = 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, std::abs(points[i] - points[j]));
  return best / scale;
}

}  // namespace bo
