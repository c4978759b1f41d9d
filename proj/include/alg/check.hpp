#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "alg/scalar.hpp"

namespace alg {

/// Outcome of one named identity check.
struct Check {
    std::string name;
    bool passed = true;
    /// First failing location and its residual, empty when passed.
    std::string witness;
    /// A residual that is not structurally zero vanished at every sample point.
    bool warning = false;
    /// Evaluated at sample points with a tolerance instead of structurally.
    bool numeric = false;
    /// Not applicable to the input; passed stays true.
    bool skipped = false;
    /// First residual's zero-test verdict was ProbablyNonzero (a sample point witnessed it).
    bool probably_nonzero = false;
    std::string note;
};

/// Accumulates residuals for one check; the first nonzero residual becomes the witness.
class CheckBuilder {
public:
    explicit CheckBuilder(std::string name, ZeroTestOptions opt = {}) : opt_(opt) { check_.name = std::move(name); }

    /// Returns true when r is structurally zero.
    bool expect_zero(const Scalar& r, const std::string& where);
    bool expect_equal(const Scalar& a, const Scalar& b, const std::string& where) { return expect_zero(a - b, where); }
    void fail(const std::string& witness);
    void note(const std::string& text) { check_.note = text; }
    void numeric() { check_.numeric = true; }
    void skip(const std::string& why) {
        check_.skipped = true;
        check_.note = why;
    }
    const Check& result() const { return check_; }

private:
    ZeroTestOptions opt_;
    Check check_;
};

/// An operation's mathematical precondition does not hold (CLI exit code 3).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool all_passed(const std::vector<Check>& checks);

std::string point_str(const Point& p);
/// Shortest round-trip text for a double, e.g. 1e-09.
std::string num_str(double v);

}  // namespace alg
