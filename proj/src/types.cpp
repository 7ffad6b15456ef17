#include "mrsim/types.hpp"

#include "mrsim/errors.hpp"
#include "mrsim/hash.hpp"

namespace mrsim {

std::uint64_t word_size(const Atom& atom) {
    if (const auto* s = std::get_if<std::string>(&atom)) {
        std::uint64_t w = (s->size() + 7) / 8;
        return w == 0 ? 1 : w;
    }
    return 1;
}

std::uint64_t word_size(const Payload& payload) {
    std::uint64_t total = 0;
    for (const auto& a : payload) total += word_size(a);
    return total == 0 ? 1 : total;
}

std::string to_string(const Atom& atom) {
    if (const auto* s = std::get_if<std::string>(&atom)) return "\"" + *s + "\"";
    return std::to_string(std::get<Word>(atom));
}

std::string to_string(const Key& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out += ",";
        out += to_string(key[i]);
    }
    return out + ")";
}

std::uint64_t hash_atoms(std::uint64_t seed, const Payload& atoms) noexcept {
    std::uint64_t h = splitmix64(seed ^ 0x2545f4914f6cdd1dULL);
    for (const auto& a : atoms) {
        if (const auto* s = std::get_if<std::string>(&a)) {
            h = splitmix64(h ^ 0x73);
            for (std::size_t i = 0; i < s->size(); i += 8) {
                std::uint64_t chunk = 0;
                for (std::size_t k = i; k < s->size() && k < i + 8; ++k)
                    chunk = (chunk << 8) | static_cast<unsigned char>((*s)[k]);
                h = splitmix64(h ^ chunk);
            }
            h = splitmix64(h ^ s->size());
        } else {
            h = splitmix64(h ^ 0x77);
            h = splitmix64(h ^ static_cast<std::uint64_t>(std::get<Word>(a)));
        }
    }
    return h;
}

BufferExceeded::BufferExceeded(Key key, std::uint64_t items, std::uint64_t words,
                               std::uint64_t limit, std::size_t round)
    : Error("reducer " + to_string(key) + " in round " + std::to_string(round) + " handled " +
            std::to_string(items) + " items / " + std::to_string(words) + " words (limit " +
            std::to_string(limit) + ")"),
      key_(std::move(key)),
      items_(items),
      words_(words),
      limit_(limit),
      round_(round) {}

}  // namespace mrsim
