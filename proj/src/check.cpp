#include "alg/check.hpp"

#include <algorithm>
#include <sstream>

namespace alg {

bool CheckBuilder::expect_zero(const Scalar& r, const std::string& where) {
    if (r.is_zero()) return true;
    if (!check_.passed) return false;
    check_.passed = false;
    std::string w = where + ": residual " + r.str();
    try {
        ZeroTest t = zero_test(r, opt_);
        if (t.all_samples_zero) {
            check_.warning = true;
            w += " (vanishes at every sample point; not structurally zero)";
        } else if (t.witness) {
            check_.probably_nonzero = true;
            w += " (nonzero at " + point_str(*t.witness) + ")";
        }
    } catch (const PoleError&) {
        w += " (every sample point is a pole)";
    }
    check_.witness = w;
    return false;
}

void CheckBuilder::fail(const std::string& witness) {
    if (!check_.passed) return;
    check_.passed = false;
    check_.witness = witness;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string point_str(const Point& p) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : p) {
        if (!first) out += ", ";
        first = false;
        out += k + "=" + v.str();
    }
    return out + "}";
}

std::string num_str(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace alg
