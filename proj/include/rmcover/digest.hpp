#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace rmcover {

/// 64-bit FNV-1a, used for stable content digests (not for security).
class Fnv1a {
public:
    Fnv1a& update(std::string_view bytes) noexcept {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    Fnv1a& update(std::uint64_t value) noexcept {
        for (int i = 0; i < 8; ++i) {
            state_ ^= (value >> (8 * i)) & 0xffU;
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    [[nodiscard]] std::uint64_t value() const noexcept { return state_; }
    [[nodiscard]] std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::string digest_of(std::string_view text) { return Fnv1a{}.update(text).hex(); }

}  // namespace rmcover
