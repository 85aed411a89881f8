#pragma once

#include <ostream>

#include "lpt/errors.hpp"

namespace lpt {

/// Nonnegative value that may be exactly +infinity.
///
/// Table-driven Green quantities at q=0 are infinite in Cases 1 and 2.
/// Downstream code has to branch on infiniteness explicitly; calling
/// value() on an infinite ExtReal throws instead of leaking a sentinel.
class ExtReal {
public:
    ExtReal() : value_(0), infinite_(false) {}
    explicit ExtReal(double v) : value_(v), infinite_(false) {}

    static ExtReal infinity() {
        ExtReal e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }

    double value() const {
        if (infinite_) throw RangeError("ExtReal: value() on +infinity");
        return value_;
    }

    /// 1/x, with 1/inf = 0. Used by the harmonic-sum identities.
    double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& e) {
        if (e.infinite_) return os << "inf";
        return os << e.value_;
    }

private:
    double value_;
    bool infinite_;
};

} // namespace lpt
