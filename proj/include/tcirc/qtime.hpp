// Exact time points of the quadratic field Q[sqrt2], and time intervals with
// optionally unbounded endpoints. All comparisons and arithmetic are exact;
// nothing in the library ever rounds a time value except the explicit
// decimal() export.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcirc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a + b*sqrt2 with arbitrary-precision rational a, b. Immutable value type.
// Equality is componentwise (1 and sqrt2 are linearly independent over Q).
class Time {
  public:
    Time() = default;
    Time(int v) : rat_(v) {}
    Time(long long v) : rat_(v) {}
    Time(Rat rat) : rat_(std::move(rat)) {}
    Time(Rat rat, Rat sqrt2) : rat_(std::move(rat)), sqrt2_(std::move(sqrt2)) {}

    static Time sqrt2(Rat coeff = Rat(1)) { return Time(Rat(0), std::move(coeff)); }

    const Rat& rat_part() const { return rat_; }
    const Rat& sqrt2_part() const { return sqrt2_; }
    bool is_rational() const { return sqrt2_ == 0; }
    bool is_zero() const { return rat_ == 0 && sqrt2_ == 0; }

    // Exact sign of rat_ + sqrt2_*sqrt(2): when the component signs disagree,
    // decided by the sign of rat_^2 - 2*sqrt2_^2 times the sign of rat_.
    int sign() const;

    friend bool operator==(const Time& a, const Time& b) {
        return a.rat_ == b.rat_ && a.sqrt2_ == b.sqrt2_;
    }
    friend std::strong_ordering operator<=>(const Time& a, const Time& b) {
        if (a == b)
            return std::strong_ordering::equal;
        return (a - b).sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    friend Time operator+(const Time& a, const Time& b) {
        return Time(Rat(a.rat_ + b.rat_), Rat(a.sqrt2_ + b.sqrt2_));
    }
    friend Time operator-(const Time& a, const Time& b) {
        return Time(Rat(a.rat_ - b.rat_), Rat(a.sqrt2_ - b.sqrt2_));
    }
    Time operator-() const { return Time(Rat(-rat_), Rat(-sqrt2_)); }
    friend Time operator*(const Time& a, const Time& b) {
        // (p + q*s)(r + u*s) = pr + 2qu + (pu + qr)*s  with s = sqrt2
        return Time(Rat(a.rat_ * b.rat_ + 2 * a.sqrt2_ * b.sqrt2_),
                    Rat(a.rat_ * b.sqrt2_ + a.sqrt2_ * b.rat_));
    }
    friend Time operator/(const Time& a, const Time& b);
    Time scaled(const Rat& k) const { return Time(Rat(rat_ * k), Rat(sqrt2_ * k)); }

    Time& operator+=(const Time& o) { return *this = *this + o; }
    Time& operator-=(const Time& o) { return *this = *this - o; }

    // Largest integer <= value, exact (integer square root based).
    Int floor() const;

    // Canonical exact text, e.g. "0", "3/2", "sqrt2", "1 - 1/3*sqrt2".
    std::string str() const;
    // Correctly rounded fixed-point decimal with `digits` fractional digits
    // (half away from zero; ties only arise for rational values).
    std::string decimal(unsigned digits) const;
    // Inexact convenience value for plot output only.
    double approx() const;

    // Accepts "a/b + c/e*sqrt2" with spaces optional and either term omitted;
    // integers, fractions, and the keyword sqrt2 (optionally "*"-prefixed).
    static Time parse(std::string_view text);

  private:
    Rat rat_{0};
    Rat sqrt2_{0};
};

inline int compare(const Time& a, const Time& b) { return (a - b).sign(); }
inline const Time& min(const Time& a, const Time& b) { return b < a ? b : a; }
inline const Time& max(const Time& a, const Time& b) { return a < b ? b : a; }
inline Time abs(const Time& t) { return t.sign() < 0 ? -t : t; }

// floor(t / p) for p > 0, exact.
Int floor_div(const Time& t, const Time& p);
// t - p*floor(t/p), in [0, p).
Time mod(const Time& t, const Time& p);

// A contiguous time interval; endpoints may be -inf/+inf. Invariants:
// lo <= hi, and a degenerate interval (lo == hi) is closed on both sides.
class Interval {
  public:
    enum class EndKind { NegInf, Finite, PosInf };

    static Interval closed(Time lo, Time hi) { return Interval(lo, hi, true, true); }
    static Interval make(Time lo, Time hi, bool lo_closed, bool hi_closed) {
        return Interval(lo, hi, lo_closed, hi_closed);
    }
    static Interval all();
    static Interval at_least(Time lo);   // [lo, +inf)
    static Interval at_most(Time hi);    // (-inf, hi]
    static Interval point(Time t) { return closed(t, t); }

    bool lo_unbounded() const { return lo_kind_ == EndKind::NegInf; }
    bool hi_unbounded() const { return hi_kind_ == EndKind::PosInf; }
    bool bounded() const { return !lo_unbounded() && !hi_unbounded(); }
    const Time& lo() const;  // requires finite lower bound
    const Time& hi() const;  // requires finite upper bound
    bool lo_closed() const { return lo_closed_; }
    bool hi_closed() const { return hi_closed_; }
    bool is_point() const {
        return !lo_unbounded() && !hi_unbounded() && lo_t_ == hi_t_;
    }
    Time length() const;  // requires bounded

    bool contains(const Time& t) const;
    bool contains(const Interval& sub) const;  // sub ⊆ *this
    std::optional<Interval> intersect(const Interval& other) const;

    friend bool operator==(const Interval& a, const Interval& b) = default;

    std::string str() const;
    static Interval parse(std::string_view text);  // "lo..hi" (closed), -inf/inf allowed

    Interval() = default;  // the degenerate point [0, 0]

  private:
    Interval(Time lo, Time hi, bool lo_closed, bool hi_closed);

    EndKind lo_kind_ = EndKind::Finite;
    EndKind hi_kind_ = EndKind::Finite;
    Time lo_t_;
    Time hi_t_;
    bool lo_closed_ = true;
    bool hi_closed_ = true;
};

}  // namespace tcirc
