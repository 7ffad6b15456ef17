#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mrsim/types.hpp"

namespace mrsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A reducer's input+output exceeded slack * B in hard enforcement mode.
class BufferExceeded : public Error {
public:
    BufferExceeded(Key key, std::uint64_t items, std::uint64_t words, std::uint64_t limit,
                   std::size_t round);

    const Key& key() const noexcept { return key_; }
    std::uint64_t items() const noexcept { return items_; }
    std::uint64_t words() const noexcept { return words_; }
    std::uint64_t limit() const noexcept { return limit_; }
    std::size_t round() const noexcept { return round_; }

private:
    Key key_;
    std::uint64_t items_;
    std::uint64_t words_;
    std::uint64_t limit_;
    std::size_t round_;
};

class StageDivergence : public Error {
public:
    using Error::Error;
};

class RootHasNoParent : public Error {
public:
    RootHasNoParent() : Error("the root node has no parent") {}
};

class OverflowUnsupported : public Error {
public:
    using Error::Error;
};

/// More than B inputs landed on one leaf; rerun with a fresh seed.
class LeafOverflow : public Error {
public:
    LeafOverflow(std::uint64_t leaf, std::uint64_t count)
        : Error("leaf " + std::to_string(leaf) + " received " + std::to_string(count) + " inputs"),
          leaf_(leaf),
          count_(count) {}

    std::uint64_t leaf() const noexcept { return leaf_; }
    std::uint64_t count() const noexcept { return count_; }

private:
    std::uint64_t leaf_;
    std::uint64_t count_;
};

class FanOutViolation : public Error {
public:
    FanOutViolation(std::uint64_t processor, std::size_t sent, std::size_t limit)
        : Error("processor " + std::to_string(processor) + " sent " + std::to_string(sent) +
                " messages (limit " + std::to_string(limit) + ")"),
          processor_(processor) {}

    std::uint64_t processor() const noexcept { return processor_; }

private:
    std::uint64_t processor_;
};

class LocalMemoryOverflow : public Error {
public:
    LocalMemoryOverflow(std::uint64_t processor, std::size_t cells, std::size_t limit)
        : Error("processor " + std::to_string(processor) + " holds " + std::to_string(cells) +
                " cells (limit " + std::to_string(limit) + ")"),
          processor_(processor) {}

    std::uint64_t processor() const noexcept { return processor_; }

private:
    std::uint64_t processor_;
};

class InvalidAddress : public Error {
public:
    using Error::Error;
};

class NonSemigroupDetected : public Error {
public:
    using Error::Error;
};

class RetryExhausted : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mrsim
