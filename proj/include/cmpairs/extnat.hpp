#pragma once

#include <string>

namespace cmpairs {

/// Value type for depth/cd/pd/e/h: a certified extended natural number.
/// Infinite carries a machine-checked certificate (periodicity or torsion
/// witness); AtLeast(n) records that the true value is >= n but was not
/// resolved within the configured caps. MinusInfinite is the sup over the
/// empty set (zero modules).
struct ExtendedNat {
    enum class Kind { Finite, Infinite, AtLeast, MinusInfinite };

    Kind kind = Kind::Finite;
    int value = 0;
    std::string certificate;

    static ExtendedNat finite(int n, std::string cert = "")
    {
        return ExtendedNat{Kind::Finite, n, std::move(cert)};
    }
    static ExtendedNat infinite(std::string cert)
    {
        return ExtendedNat{Kind::Infinite, 0, std::move(cert)};
    }
    static ExtendedNat at_least(int n, std::string cert = "")
    {
        return ExtendedNat{Kind::AtLeast, n, std::move(cert)};
    }
    static ExtendedNat minus_infinite(std::string cert = "")
    {
        return ExtendedNat{Kind::MinusInfinite, 0, std::move(cert)};
    }

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_infinite() const { return kind == Kind::Infinite; }
    bool is_exact() const
    {
        return kind == Kind::Finite || kind == Kind::Infinite ||
               kind == Kind::MinusInfinite;
    }

    bool same_value(const ExtendedNat& o) const
    {
        if (kind != o.kind)
            return false;
        if (kind == Kind::Finite || kind == Kind::AtLeast)
            return value == o.value;
        return true;
    }

    std::string str() const
    {
        switch (kind) {
        case Kind::Finite:
            return std::to_string(value);
        case Kind::Infinite:
            return "infinite";
        case Kind::AtLeast:
            return ">=" + std::to_string(value);
        case Kind::MinusInfinite:
            return "-infinite";
        }
        return "?";
    }

    const char* kind_str() const
    {
        switch (kind) {
        case Kind::Finite:
            return "finite";
        case Kind::Infinite:
            return "infinite";
        case Kind::AtLeast:
            return "at_least";
        case Kind::MinusInfinite:
            return "minus_infinite";
        }
        return "?";
    }
};

/// a <= b provably, given what each value certifies.
inline bool certainly_leq(const ExtendedNat& a, const ExtendedNat& b)
{
    using K = ExtendedNat::Kind;
    if (a.kind == K::MinusInfinite || b.kind == K::Infinite)
        return true;
    if (a.kind == K::Finite && b.kind == K::Finite)
        return a.value <= b.value;
    if ((a.kind == K::Finite || a.kind == K::AtLeast) && b.kind == K::AtLeast)
        return false; // upper end of b unknown, nothing certain
    if (a.kind == K::AtLeast)
        return false;
    return false;
}

} // namespace cmpairs
