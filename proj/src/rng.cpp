#include "blockrip/rng.hpp"

namespace blockrip {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_key(Seed seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t key = mix64(seed);
    for (std::uint64_t id : path) {
        key = mix64(key ^ mix64(id + 0x632be59bd9b4e019ULL));
    }
    return key;
}

Rng make_stream(Seed seed, std::initializer_list<std::uint64_t> path) {
    const std::uint64_t key = stream_key(seed, path);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return Rng(seq);
}

}  // namespace blockrip
