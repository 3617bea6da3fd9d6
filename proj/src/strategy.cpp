#include "tcirc/strategy.hpp"

namespace tcirc {

Policy policy_from_string(const std::string& s) {
    if (s == "minimal" || s == "min")
        return Policy::Minimal;
    if (s == "maximal" || s == "max")
        return Policy::Maximal;
    if (s == "uniform")
        return Policy::Uniform;
    throw ParseError("unknown policy '" + s + "' (expected minimal|maximal|uniform)");
}

std::string to_string(Policy p) {
    switch (p) {
    case Policy::Minimal: return "minimal";
    case Policy::Maximal: return "maximal";
    default: return "uniform";
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

Strategy Strategy::fork(std::uint64_t index) const {
    return Strategy(splitmix64(seed_ ^ splitmix64(index * 0x9e3779b97f4a7c15ull + 1)), policy_);
}

std::uint64_t Strategy::bits(const std::string& key) const {
    return splitmix64(seed_ ^ fnv1a(key));
}

Rat Strategy::unit(const std::string& key) const {
    const std::uint64_t k = bits(key) >> 32;  // 32 bits
    return Rat(Int(k), Int(1) << 32);
}

Rat Strategy::unit_pos(const std::string& key) const {
    const std::uint64_t k = (bits(key) >> 32) + 1;  // 1 .. 2^32
    return Rat(Int(k), Int(1) << 32);
}

Time Strategy::draw(const std::string& key, const Time& lo, const Time& hi) const {
    switch (policy_) {
    case Policy::Minimal: return lo;
    case Policy::Maximal: return hi;
    default: return lo + (hi - lo).scaled(unit(key));
    }
}

Time Strategy::draw_above(const std::string& key, const Time& lo, const Time& hi) const {
    if (!(lo < hi))
        throw DomainError("draw_above needs lo < hi");
    switch (policy_) {
    case Policy::Minimal: return lo + (hi - lo).scaled(Rat(1, Int(1) << 20));
    case Policy::Maximal: return hi;
    default: return lo + (hi - lo).scaled(unit_pos(key));
    }
}

std::uint64_t Strategy::uniform_int(const std::string& key, std::uint64_t n) const {
    return n == 0 ? 0 : bits(key) % n;
}

}  // namespace tcirc
