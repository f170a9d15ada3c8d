#include "nucembed/exponent.hpp"

#include <limits>

namespace nucembed {

double Exponent::to_double() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    return value_.to_double();
}

Exponent conjugate(const Exponent& r) {
    if (!r.is_banach()) throw std::domain_error("conjugate: exponent must lie in [1, inf]");
    return Exponent::from_recip(Rat(1) - r.recip());
}

Exponent star_exponent(const Exponent& r1, const Exponent& r2) {
    return Exponent::from_recip(Rat::max(r2.recip() - r1.recip(), Rat(0)));
}

Exponent tong_exponent(const Exponent& r1, const Exponent& r2) {
    if (!r1.is_banach() || !r2.is_banach())
        throw std::domain_error("tong_exponent: exponents must lie in [1, inf]");
    Rat drop = Rat::max(r1.recip() - r2.recip(), Rat(0));
    return Exponent::from_recip(Rat(1) - drop);
}

}  // namespace nucembed
