#pragma once

#include <string>

#include "hse/ring.hpp"

namespace hse {

/// Element p(t) + q(t) dt with p, q in A[t].
struct DualForm {
  Poly p, q;
  bool operator==(const DualForm&) const = default;
};

/// Polynomial forms A[t, dt] on the affine line over a coefficient ring A.
class DualDGA {
 public:
  explicit DualDGA(Ring base, const std::string& t = "t");

  const Ring& base() const { return base_; }
  /// A[t]; t is the last variable.
  const Ring& ring() const { return ext_; }
  int t_index() const { return ext_.nvars() - 1; }
  Poly t() const { return ext_.var(t_index()); }

  DualForm add(const DualForm& a, const DualForm& b) const;
  DualForm mul(const DualForm& a, const DualForm& b) const;
  DualForm scale(const DualForm& a, const Rational& c) const;
  /// d(p + q dt) = p'(t) dt.
  DualForm d(const DualForm& a) const;
  /// Sends t to c and dt to 0.
  Poly eval(const DualForm& a, const Rational& c) const;
  /// p as a form without dt part.
  DualForm lift(const Poly& p) const { return {p, Poly{}}; }
  Poly extend(const Poly& a) const { return base_.map_to(a, ext_); }

 private:
  Ring base_, ext_;
};

}  // namespace hse
