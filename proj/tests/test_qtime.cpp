#include "doctest.h"

#include "tcirc/qtime.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

using namespace tcirc;
using big_float = boost::multiprecision::cpp_bin_float_100;

namespace {

// Independent high-precision oracle for ordering checks.
big_float to_float(const Time& t) {
    const big_float root2 = sqrt(big_float(2));
    return big_float(t.rat_part()) + big_float(t.sqrt2_part()) * root2;
}

Time rand_time(std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 12);
    return Time(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("comparison basics") {
    CHECK(Time(0) == Time(Rat(0), Rat(0)));
    CHECK(Time(1) < Time::sqrt2());  // 1 < sqrt2 by squaring
    // sign oracle: p^2 - 2q^2 = 9 - 8 > 0
    CHECK(Time(3) > Time::sqrt2(Rat(2)));
    CHECK(Time(Rat(3)).sign() * (Rat(9) - Rat(8) > 0 ? 1 : -1) == 1);
    CHECK(Time(-3) < Time::sqrt2(Rat(-2)));
    CHECK(Time(Rat(-1), Rat(1)).sign() == 1);   // sqrt2 - 1 > 0
    CHECK(Time(Rat(-3), Rat(2)).sign() == -1);  // 2*sqrt2 < 3
}

TEST_CASE("trichotomy against a high-precision oracle") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 100000; ++i) {
        const Time a = rand_time(rng), b = rand_time(rng);
        const int exact = compare(a, b);
        const big_float fa = to_float(a), fb = to_float(b);
        if (fa < fb)
            CHECK(exact == -1);
        else if (fa > fb)
            CHECK(exact == 1);
        else
            CHECK(exact == 0);
        const int options = (exact == -1) + (exact == 0) + (exact == 1);
        CHECK(options == 1);
    }
}

TEST_CASE("exact arithmetic") {
    CHECK(Time(1) + Time::sqrt2() == Time(Rat(1), Rat(1)));
    CHECK(Time(Rat(1), Rat(1)) - Time(Rat(1), Rat(1)) == Time(0));
    CHECK(Time(Rat(1, 2), Rat(1, 3)).scaled(Rat(3)) == Time(Rat(3, 2), Rat(1)));
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        const Time a = rand_time(rng), b = rand_time(rng);
        CHECK((a + b) - b == a);
        if (!b.is_zero())
            CHECK((a * b) / b == a);
    }
    CHECK(Time::sqrt2() * Time::sqrt2() == Time(2));
}

TEST_CASE("floor and mod") {
    CHECK(Time::sqrt2().floor() == 1);
    CHECK((-Time::sqrt2()).floor() == -2);
    CHECK(Time(Rat(7, 2)).floor() == 3);
    CHECK(Time(Rat(-7, 2)).floor() == -4);
    CHECK(Time(5).floor() == 5);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Time t = rand_time(rng);
        const Int f = t.floor();
        CHECK(Time(Rat(f)) <= t);
        CHECK(t < Time(Rat(f + 1)));
    }
    const Time P(Rat(5, 2));
    const Time m = mod(Time(Rat(63, 10)) - Time(Rat(3, 2)), P);  // 4.8 mod 2.5 = 2.3
    CHECK(m == Time(Rat(23, 10)));
    CHECK(mod(Time(Rat(-1, 2)), P) == Time(2));
}

TEST_CASE("decimal export is correctly rounded") {
    CHECK(Time::sqrt2().decimal(5) == "1.41421");
    CHECK(Time(2).decimal(3) == "2.000");
    CHECK(Time(Rat(1), Rat(1)).decimal(3) == "2.414");
    CHECK(Time(Rat(-1), Rat(-1)).decimal(3) == "-2.414");
    CHECK(Time(Rat(1, 2)).decimal(0) == "1");  // half away from zero
    // against the high-precision oracle: round(x*10^6) must match
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Time t = rand_time(rng);
        const std::string dec = t.decimal(6);
        const big_float x = to_float(t);
        const big_float err = abs(big_float(dec.c_str()) - x);
        CHECK(err <= big_float("0.0000005000001"));
    }
}

TEST_CASE("parse and print round-trip") {
    const char* cases[] = {"0",           "1",         "-5/2",        "sqrt2",
                           "-sqrt2",      "2*sqrt2",   "1/2*sqrt2",   "1 + 2*sqrt2",
                           "1/2+1/3*sqrt2", "1 - sqrt2", "3/2 + 2*sqrt2", "-1/2 - 7/3*sqrt2"};
    for (const char* c : cases) {
        const Time t = Time::parse(c);
        CHECK(Time::parse(t.str()) == t);
    }
    CHECK(Time::parse("3/2") == Time(Rat(3, 2)));
    CHECK(Time::parse(" 1+1*sqrt2 ") == Time(Rat(1), Rat(1)));
    CHECK(Time::parse("2 sqrt2") == Time::sqrt2(Rat(2)));  // '*' optional
    CHECK_THROWS_AS(Time::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Time::parse(""), ParseError);
    CHECK_THROWS_AS(Time::parse("1/0"), ParseError);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 2000; ++i) {
        const Time t = rand_time(rng);
        CHECK(Time::parse(t.str()) == t);
    }
}

TEST_CASE("intervals") {
    const Interval I = Interval::closed(Time(0), Time(5));
    CHECK(I.contains(Time(0)));
    CHECK(I.contains(Time(5)));
    CHECK(!I.contains(Time(6)));
    CHECK(I.contains(Interval::closed(Time(1), Time(2))));
    CHECK(!Interval::closed(Time(1), Time(2)).contains(I));
    CHECK(Interval::all().contains(I));
    CHECK(I.length() == Time(5));
    CHECK_THROWS_AS(Interval::closed(Time(2), Time(1)), DomainError);

    const auto J = I.intersect(Interval::closed(Time(3), Time(9)));
    REQUIRE(J.has_value());
    CHECK(J->lo() == Time(3));
    CHECK(J->hi() == Time(5));
    CHECK(!I.intersect(Interval::closed(Time(6), Time(7))).has_value());

    const Interval open = Interval::make(Time(0), Time(1), false, false);
    CHECK(!open.contains(Time(0)));
    CHECK(!open.contains(Time(1)));
    CHECK(I.contains(open));
    CHECK(!open.contains(Interval::closed(Time(0), Time(1))));

    CHECK(Interval::parse("0..10") == Interval::closed(Time(0), Time(10)));
    CHECK(Interval::parse("-inf..inf") == Interval::all());
    CHECK(Interval::parse("3/2..inf") == Interval::at_least(Time(Rat(3, 2))));
}
