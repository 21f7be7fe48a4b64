#pragma once

namespace bosemi {

/// Kahan compensated accumulator. Used wherever the spec demands 1e-12-level
/// identities on sums with ~1e4..1e6 terms.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace bosemi
