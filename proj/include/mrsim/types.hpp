#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace mrsim {

using Word = std::int64_t;

/// One component of a key or payload: a machine word or a short byte string.
using Atom = std::variant<Word, std::string>;

/// Keys and payloads are atom sequences, ordered lexicographically.
using Key = std::vector<Atom>;
using Payload = std::vector<Atom>;

struct KeyedItem {
    Key key;
    Payload payload;

    friend bool operator==(const KeyedItem&, const KeyedItem&) = default;
};

/// Size of an atom in machine words. Strings occupy ceil(len / 8) words, at least one.
std::uint64_t word_size(const Atom& atom);

/// Size of a payload in words; an empty payload still occupies one word.
std::uint64_t word_size(const Payload& payload);

/// Extracts a word atom. Throws std::bad_variant_access for string atoms.
inline Word as_word(const Atom& atom) { return std::get<Word>(atom); }

inline std::uint64_t as_u64(const Atom& atom) {
    return static_cast<std::uint64_t>(std::get<Word>(atom));
}

inline Atom u64_atom(std::uint64_t v) { return Atom{static_cast<Word>(v)}; }

std::string to_string(const Atom& atom);
std::string to_string(const Key& key);

}  // namespace mrsim
