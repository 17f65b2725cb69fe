#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rcheck {

enum class ValueKind : std::uint8_t { Undef, Bool, Int, Enum, Chan };

// Channel payloads: >= 0 indexes the declared channel list.
inline constexpr std::int32_t kChanEmpty = -1;
inline constexpr std::int32_t kChanStar = -2;

/// A runtime value over the finite domains of the language. Enum payloads
/// index the model-wide constant table, channel payloads the channel list.
struct Value {
    ValueKind kind = ValueKind::Undef;
    std::int32_t v = 0;

    static constexpr Value undef() { return {}; }
    static constexpr Value boolean(bool b) { return {ValueKind::Bool, b ? 1 : 0}; }
    static constexpr Value integer(std::int32_t n) { return {ValueKind::Int, n}; }
    static constexpr Value enumConst(std::int32_t id) { return {ValueKind::Enum, id}; }
    static constexpr Value channel(std::int32_t id) { return {ValueKind::Chan, id}; }
    static constexpr Value star() { return {ValueKind::Chan, kChanStar}; }
    static constexpr Value empty() { return {ValueKind::Chan, kChanEmpty}; }

    bool isUndef() const { return kind == ValueKind::Undef; }
    bool isTrue() const { return kind == ValueKind::Bool && v != 0; }

    friend constexpr bool operator==(const Value&, const Value&) = default;
    friend constexpr auto operator<=>(const Value& a, const Value& b) {
        if (a.kind != b.kind) return a.kind <=> b.kind;
        return a.v <=> b.v;
    }
};

using SystemState = std::vector<Value>;

struct ValueVectorHash {
    std::size_t operator()(const std::vector<Value>& values) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& x : values) {
            h ^= (static_cast<std::uint64_t>(x.kind) << 32) ^ static_cast<std::uint32_t>(x.v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

} // namespace rcheck
