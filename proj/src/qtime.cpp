#include "tcirc/qtime.hpp"

#include <cctype>
#include <sstream>

namespace tcirc {

namespace {

int rat_sign(const Rat& r) {
    if (r == 0)
        return 0;
    return r < 0 ? -1 : 1;
}

Int floor_rat(const Rat& r) {
    Int n = numerator(r), d = denominator(r);  // d > 0 canonical
    Int q = n / d;
    if (n < 0 && q * d != n)
        --q;
    return q;
}

}  // namespace

int Time::sign() const {
    const int sp = rat_sign(rat_);
    const int sq = rat_sign(sqrt2_);
    if (sq == 0)
        return sp;
    if (sp == 0)
        return sq;
    if (sp == sq)
        return sp;
    const Rat disc = rat_ * rat_ - 2 * sqrt2_ * sqrt2_;
    return sp * rat_sign(disc);
}

Time operator/(const Time& a, const Time& b) {
    if (b.is_zero())
        throw DomainError("division by zero time");
    // 1/(r + u*s) = (r - u*s)/(r^2 - 2u^2); the denominator is nonzero since
    // sqrt2 is irrational.
    const Rat denom = b.rat_ * b.rat_ - 2 * b.sqrt2_ * b.sqrt2_;
    const Time conj(Rat(b.rat_ / denom), Rat(-b.sqrt2_ / denom));
    return a * conj;
}

Int Time::floor() const {
    if (sqrt2_ == 0)
        return floor_rat(rat_);
    // floor((P + Q*sqrt2)/R) with integers P, Q and R > 0: bracket sqrt(2*Q^2)
    // by integer square root, then fix up by exact comparison.
    const Int an = numerator(rat_), ad = denominator(rat_);
    const Int bn = numerator(sqrt2_), bd = denominator(sqrt2_);
    const Int R = ad * bd;
    const Int P = an * bd;
    const Int Q = bn * ad;
    const Int s = boost::multiprecision::sqrt(Int(2 * Q * Q));
    const Int num = (Q > 0) ? Int(P + s) : Int(P - s - 1);
    Int c = num / R;
    while (Time(Rat(c)) > *this)
        --c;
    while (Time(Rat(c + 1)) <= *this)
        ++c;
    return c;
}

Int floor_div(const Time& t, const Time& p) {
    if (p.sign() <= 0)
        throw DomainError("floor_div requires positive divisor");
    return (t / p).floor();
}

Time mod(const Time& t, const Time& p) {
    return t - p.scaled(Rat(floor_div(t, p)));
}

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << "/" << denominator(r);
    return os.str();
}

}  // namespace

std::string Time::str() const {
    if (sqrt2_ == 0)
        return rat_str(rat_);
    std::string root;
    if (sqrt2_ == 1)
        root = "sqrt2";
    else if (sqrt2_ == -1)
        root = "-sqrt2";
    else
        root = rat_str(sqrt2_) + "*sqrt2";
    if (rat_ == 0)
        return root;
    if (sqrt2_ > 0)
        return rat_str(rat_) + " + " + (sqrt2_ == 1 ? "sqrt2" : rat_str(sqrt2_) + "*sqrt2");
    Rat mag = -sqrt2_;
    return rat_str(rat_) + " - " + (mag == 1 ? "sqrt2" : rat_str(mag) + "*sqrt2");
}

std::string Time::decimal(unsigned digits) const {
    const bool neg = sign() < 0;
    const Time mag = neg ? -*this : *this;
    Int pow10(1);
    for (unsigned i = 0; i < digits; ++i)
        pow10 *= 10;
    // round(mag * 10^digits), half away from zero
    const Time scaled = mag.scaled(Rat(pow10)) + Time(Rat(1, 2));
    Int units = scaled.floor();
    // Exact half for rational values rounds away from zero, which floor
    // already delivered; irrational values never hit a tie.
    const Int ip = units / pow10;
    Int frac = units % pow10;
    std::ostringstream os;
    if (neg && (ip != 0 || frac != 0))
        os << "-";
    os << ip;
    if (digits > 0) {
        std::string f = frac.str();
        os << "." << std::string(digits - f.size(), '0') << f;
    }
    return os.str();
}

double Time::approx() const {
    return static_cast<double>(rat_) + static_cast<double>(sqrt2_) * 1.4142135623730951;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (s.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start)
            throw ParseError("expected integer in time literal: '" + std::string(s) + "'");
        return Int(std::string(s.substr(start, i - start)));
    }
};

}  // namespace

Time Time::parse(std::string_view text) {
    Cursor c{text};
    Rat rat(0), root(0);
    bool first = true;
    while (!c.done()) {
        int sgn = 1;
        if (c.eat('-'))
            sgn = -1;
        else if (c.eat('+')) {
            if (first)
                throw ParseError("unexpected leading '+' in time literal: '" + std::string(text) + "'");
        } else if (!first) {
            throw ParseError("expected '+' or '-' between time terms: '" + std::string(text) + "'");
        }
        Rat coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            Int num = c.integer();
            Int den(1);
            if (c.eat('/'))
                den = c.integer();
            if (den == 0)
                throw ParseError("zero denominator in time literal: '" + std::string(text) + "'");
            coeff = Rat(num, den);
            have_coeff = true;
        }
        c.eat('*');
        if (c.eat_word("sqrt2")) {
            root += sgn * coeff;
        } else if (have_coeff) {
            rat += sgn * coeff;
        } else {
            throw ParseError("malformed time literal: '" + std::string(text) + "'");
        }
        first = false;
    }
    if (first)
        throw ParseError("empty time literal");
    return Time(rat, root);
}

Interval::Interval(Time lo, Time hi, bool lo_closed, bool hi_closed)
    : lo_t_(std::move(lo)), hi_t_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed) {
    if (lo_t_ > hi_t_)
        throw DomainError("interval with lo > hi");
    if (lo_t_ == hi_t_ && !(lo_closed_ && hi_closed_))
        throw DomainError("degenerate interval must be closed");
}

Interval Interval::all() {
    Interval iv;
    iv.lo_kind_ = EndKind::NegInf;
    iv.hi_kind_ = EndKind::PosInf;
    iv.lo_closed_ = iv.hi_closed_ = false;
    return iv;
}

Interval Interval::at_least(Time lo) {
    Interval iv;
    iv.lo_t_ = std::move(lo);
    iv.hi_kind_ = EndKind::PosInf;
    iv.hi_closed_ = false;
    return iv;
}

Interval Interval::at_most(Time hi) {
    Interval iv;
    iv.lo_kind_ = EndKind::NegInf;
    iv.lo_closed_ = false;
    iv.hi_t_ = std::move(hi);
    return iv;
}

const Time& Interval::lo() const {
    if (lo_unbounded())
        throw DomainError("interval has no finite lower bound");
    return lo_t_;
}

const Time& Interval::hi() const {
    if (hi_unbounded())
        throw DomainError("interval has no finite upper bound");
    return hi_t_;
}

Time Interval::length() const { return hi() - lo(); }

bool Interval::contains(const Time& t) const {
    if (!lo_unbounded()) {
        if (t < lo_t_ || (t == lo_t_ && !lo_closed_))
            return false;
    }
    if (!hi_unbounded()) {
        if (t > hi_t_ || (t == hi_t_ && !hi_closed_))
            return false;
    }
    return true;
}

bool Interval::contains(const Interval& sub) const {
    if (!lo_unbounded()) {
        if (sub.lo_unbounded())
            return false;
        if (sub.lo_t_ < lo_t_)
            return false;
        if (sub.lo_t_ == lo_t_ && sub.lo_closed_ && !lo_closed_)
            return false;
    }
    if (!hi_unbounded()) {
        if (sub.hi_unbounded())
            return false;
        if (sub.hi_t_ > hi_t_)
            return false;
        if (sub.hi_t_ == hi_t_ && sub.hi_closed_ && !hi_closed_)
            return false;
    }
    return true;
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
    Interval r;
    if (lo_unbounded() && o.lo_unbounded()) {
        r.lo_kind_ = EndKind::NegInf;
        r.lo_closed_ = false;
    } else if (lo_unbounded() || (!o.lo_unbounded() && o.lo_t_ > lo_t_)) {
        r.lo_t_ = o.lo_t_;
        r.lo_closed_ = o.lo_closed_;
    } else if (o.lo_unbounded() || lo_t_ > o.lo_t_) {
        r.lo_t_ = lo_t_;
        r.lo_closed_ = lo_closed_;
    } else {  // equal finite bounds
        r.lo_t_ = lo_t_;
        r.lo_closed_ = lo_closed_ && o.lo_closed_;
    }
    if (hi_unbounded() && o.hi_unbounded()) {
        r.hi_kind_ = EndKind::PosInf;
        r.hi_closed_ = false;
    } else if (hi_unbounded() || (!o.hi_unbounded() && o.hi_t_ < hi_t_)) {
        r.hi_t_ = o.hi_t_;
        r.hi_closed_ = o.hi_closed_;
    } else if (o.hi_unbounded() || hi_t_ < o.hi_t_) {
        r.hi_t_ = hi_t_;
        r.hi_closed_ = hi_closed_;
    } else {
        r.hi_t_ = hi_t_;
        r.hi_closed_ = hi_closed_ && o.hi_closed_;
    }
    if (r.lo_kind_ == EndKind::Finite && r.hi_kind_ == EndKind::Finite) {
        if (r.lo_t_ > r.hi_t_)
            return std::nullopt;
        if (r.lo_t_ == r.hi_t_ && !(r.lo_closed_ && r.hi_closed_))
            return std::nullopt;
    }
    return r;
}

std::string Interval::str() const {
    std::string s;
    s += lo_closed_ ? '[' : '(';
    s += lo_unbounded() ? "-inf" : lo_t_.str();
    s += ", ";
    s += hi_unbounded() ? "inf" : hi_t_.str();
    s += hi_closed_ ? ']' : ')';
    return s;
}

Interval Interval::parse(std::string_view text) {
    const size_t dots = text.find("..");
    if (dots == std::string_view::npos)
        throw ParseError("interval literal must look like 'lo..hi': '" + std::string(text) + "'");
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
            v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
            v.remove_suffix(1);
        return v;
    };
    const std::string_view lo = trim(text.substr(0, dots));
    const std::string_view hi = trim(text.substr(dots + 2));
    if (lo == "-inf" && (hi == "inf" || hi == "+inf"))
        return all();
    if (lo == "-inf")
        return at_most(Time::parse(hi));
    if (hi == "inf" || hi == "+inf")
        return at_least(Time::parse(lo));
    return closed(Time::parse(lo), Time::parse(hi));
}

}  // namespace tcirc
