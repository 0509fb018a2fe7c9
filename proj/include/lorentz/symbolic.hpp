#pragma once
/**
 * @file symbolic.hpp
 * @brief Words in the free group F_{n+1} generated by the wall crossings
 * a, b_1, ..., b_n of Q_n.
 *
 * Text form used in every output file: one token per letter separated by
 * single spaces; "a" / "A" for a^{+1} / a^{-1}, "b3" / "B3" for b_3^{+1} /
 * b_3^{-1}. The empty word is the empty string.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lorentz {

struct Letter {
    enum class Kind : std::uint8_t { A, B };

    Kind kind{Kind::A};
    int index{0};  ///< 0 for a, 1..n for b_i
    int sign{1};   ///< +1 or -1

    static Letter a(int sign = 1) { return {Kind::A, 0, sign}; }
    static Letter b(int i, int sign = 1) { return {Kind::B, i, sign}; }

    Letter inverse() const { return {kind, index, -sign}; }
    bool is_inverse_of(const Letter& o) const { return kind == o.kind && index == o.index && sign == -o.sign; }

    friend bool operator==(const Letter&, const Letter&) = default;
};

std::string to_text(const Letter& l);

/// A freely reduced word: no letter is adjacent to its inverse.
class ReducedWord {
public:
    ReducedWord() = default;

    /// Reduces the given letters (stack-based free reduction).
    static ReducedWord from_letters(std::span<const Letter> letters);

    std::span<const Letter> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    /// First min(depth, size) letters.
    ReducedWord prefix(std::size_t depth) const;

    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

private:
    explicit ReducedWord(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
    std::vector<Letter> letters_;
};

ReducedWord reduce(std::span<const Letter> letters);
ReducedWord concat_reduce(const ReducedWord& w1, const ReducedWord& w2);
ReducedWord inverse(const ReducedWord& w);

/// Conjugate-minimal form: strips matching first/last inverse pairs.
ReducedWord cyclic_reduction(const ReducedWord& w);

/// Length of the longest common prefix.
std::size_t common_prefix_length(const ReducedWord& w1, const ReducedWord& w2);

std::string to_text(std::span<const Letter> letters);
inline std::string to_text(const ReducedWord& w) { return to_text(w.letters()); }

/// Parses the text form; throws std::invalid_argument on malformed tokens.
/// When n > 0, b-indices must lie in [1, n].
std::vector<Letter> parse_letters(std::string_view text, int n = 0);
inline ReducedWord parse_word(std::string_view text, int n = 0) { return reduce(parse_letters(text, n)); }

enum class BlockType : std::uint8_t { A, B };

struct Block {
    BlockType type{BlockType::A};
    std::size_t length{0};
    friend bool operator==(const Block&, const Block&) = default;
};

/**
 * Run-length structure of a reduced word in a/b blocks.
 *
 * A leading b-block and a trailing a-block are dropped so that the kept
 * part reads B_1^a B_1^b ... B_s^a B_s^b. Counts k (a-letters), m
 * (b-letters) and s (a-blocks) refer to the kept part;
 * k + m + truncated_letters() == |W|.
 */
struct BlockDecomposition {
    std::vector<Block> blocks;  ///< kept blocks, alternating in type
    std::size_t k{0};
    std::size_t m{0};
    std::size_t s{0};
    std::size_t dropped_leading{0};   ///< letters of a dropped leading b-block
    std::size_t dropped_trailing{0};  ///< letters of a dropped trailing a-block

    std::size_t truncated_letters() const { return dropped_leading + dropped_trailing; }
};

BlockDecomposition block_decomposition(const ReducedWord& w);

/// Number of reduced words of length L over the 2n+2 letters; throws
/// std::overflow_error when the count does not fit in 64 bits.
std::uint64_t reduced_word_count(int n, int length);

}  // namespace lorentz
