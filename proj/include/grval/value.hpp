#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace grval {

/// Element of the value group Z extended by a maximal element Infinity.
class Value {
public:
    constexpr Value() = default;
    constexpr Value(std::int64_t v) : finite_(true), value_(v) {}

    static constexpr Value infinity() { return Value(Tag{}); }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }
    constexpr std::int64_t get() const { return value_; }

    friend constexpr Value operator+(Value a, Value b)
    {
        if (!a.finite_ || !b.finite_) return infinity();
        return Value(a.value_ + b.value_);
    }

    /// Subtracting a finite value; Infinity absorbs.
    friend constexpr Value operator-(Value a, std::int64_t b)
    {
        if (!a.finite_) return infinity();
        return Value(a.value_ - b);
    }

    friend constexpr Value operator-(Value a) { return a.finite_ ? Value(-a.value_) : a; }

    friend constexpr bool operator==(Value a, Value b)
    {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }

    friend constexpr std::strong_ordering operator<=>(Value a, Value b)
    {
        if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const { return finite_ ? std::to_string(value_) : "Infinity"; }

    friend std::ostream& operator<<(std::ostream& os, Value v) { return os << v.to_string(); }

private:
    struct Tag {};
    constexpr explicit Value(Tag) : finite_(false) {}

    // default-constructed is Infinity
    bool finite_ = false;
    std::int64_t value_ = 0;
};

inline Value min(Value a, Value b) { return a < b ? a : b; }

} // namespace grval
