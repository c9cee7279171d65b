#include "hse/dual_dga.hpp"

namespace hse {

DualDGA::DualDGA(Ring base, const std::string& t) : base_(std::move(base)), ext_(base_.adjoin(t)) {}

DualForm DualDGA::add(const DualForm& a, const DualForm& b) const { return {ext_.add(a.p, b.p), ext_.add(a.q, b.q)}; }

DualForm DualDGA::mul(const DualForm& a, const DualForm& b) const {
  return {ext_.mul(a.p, b.p), ext_.add(ext_.mul(a.p, b.q), ext_.mul(a.q, b.p))};
}

DualForm DualDGA::scale(const DualForm& a, const Rational& c) const { return {ext_.scale(a.p, c), ext_.scale(a.q, c)}; }

DualForm DualDGA::d(const DualForm& a) const { return {Poly{}, ext_.derivative(a.p, t_index())}; }

Poly DualDGA::eval(const DualForm& a, const Rational& c) const { return ext_.eliminate(a.p, t_index(), c, base_); }

}  // namespace hse
