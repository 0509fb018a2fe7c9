#include "lorentz/symbolic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lorentz {

std::string to_text(const Letter& l) {
    if (l.kind == Letter::Kind::A) return l.sign > 0 ? "a" : "A";
    return (l.sign > 0 ? "b" : "B") + std::to_string(l.index);
}

ReducedWord ReducedWord::from_letters(std::span<const Letter> letters) {
    std::vector<Letter> stack;
    stack.reserve(letters.size());
    for (const Letter& l : letters) {
        if (!stack.empty() && stack.back().is_inverse_of(l)) {
            stack.pop_back();
        } else {
            stack.push_back(l);
        }
    }
    return ReducedWord(std::move(stack));
}

ReducedWord ReducedWord::prefix(std::size_t depth) const {
    const auto len = std::min(depth, letters_.size());
    return ReducedWord(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(len)));
}

ReducedWord reduce(std::span<const Letter> letters) { return ReducedWord::from_letters(letters); }

ReducedWord concat_reduce(const ReducedWord& w1, const ReducedWord& w2) {
    auto l1 = w1.letters();
    auto l2 = w2.letters();
    std::size_t cancel = 0;
    while (cancel < l1.size() && cancel < l2.size() && l1[l1.size() - 1 - cancel].is_inverse_of(l2[cancel])) {
        ++cancel;
    }
    std::vector<Letter> out(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(cancel));
    out.insert(out.end(), l2.begin() + static_cast<std::ptrdiff_t>(cancel), l2.end());
    // Both halves are reduced and the junction no longer cancels.
    return ReducedWord::from_letters(out);
}

ReducedWord inverse(const ReducedWord& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
    return ReducedWord::from_letters(out);
}

ReducedWord cyclic_reduction(const ReducedWord& w) {
    auto l = w.letters();
    std::size_t lo = 0;
    std::size_t hi = l.size();
    while (hi - lo >= 2 && l[lo].is_inverse_of(l[hi - 1])) {
        ++lo;
        --hi;
    }
    return ReducedWord::from_letters(l.subspan(lo, hi - lo));
}

std::size_t common_prefix_length(const ReducedWord& w1, const ReducedWord& w2) {
    std::size_t i = 0;
    while (i < w1.size() && i < w2.size() && w1[i] == w2[i]) ++i;
    return i;
}

std::string to_text(std::span<const Letter> letters) {
    std::string out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) out += ' ';
        out += to_text(letters[i]);
    }
    return out;
}

std::vector<Letter> parse_letters(std::string_view text, int n) {
    std::vector<Letter> out;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        if (tok == "a") {
            out.push_back(Letter::a(1));
        } else if (tok == "A") {
            out.push_back(Letter::a(-1));
        } else if ((tok[0] == 'b' || tok[0] == 'B') && tok.size() > 1 &&
                   std::all_of(tok.begin() + 1, tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            const int index = std::stoi(tok.substr(1));
            if (index < 1 || (n > 0 && index > n)) {
                throw std::invalid_argument("b-letter index out of range in token '" + tok + "'");
            }
            out.push_back(Letter::b(index, tok[0] == 'b' ? 1 : -1));
        } else {
            throw std::invalid_argument("malformed word token '" + tok + "'");
        }
    }
    return out;
}

BlockDecomposition block_decomposition(const ReducedWord& w) {
    BlockDecomposition out;
    std::vector<Block> runs;
    for (const Letter& l : w.letters()) {
        const BlockType t = l.kind == Letter::Kind::A ? BlockType::A : BlockType::B;
        if (!runs.empty() && runs.back().type == t) {
            ++runs.back().length;
        } else {
            runs.push_back({t, 1});
        }
    }
    std::size_t lo = 0;
    std::size_t hi = runs.size();
    if (lo < hi && runs[lo].type == BlockType::B) {
        out.dropped_leading = runs[lo].length;
        ++lo;
    }
    if (lo < hi && runs[hi - 1].type == BlockType::A) {
        out.dropped_trailing = runs[hi - 1].length;
        --hi;
    }
    for (std::size_t i = lo; i < hi; ++i) {
        out.blocks.push_back(runs[i]);
        if (runs[i].type == BlockType::A) {
            out.k += runs[i].length;
            ++out.s;
        } else {
            out.m += runs[i].length;
        }
    }
    return out;
}

std::uint64_t reduced_word_count(int n, int length) {
    if (n < 1 || length < 0) throw std::invalid_argument("reduced_word_count needs n >= 1 and L >= 0");
    if (length == 0) return 1;
    const auto base = static_cast<std::uint64_t>(2 * n + 1);
    std::uint64_t count = static_cast<std::uint64_t>(2 * n + 2);
    for (int i = 1; i < length; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("reduced word count exceeds 64 bits");
        }
        count *= base;
    }
    return count;
}

}  // namespace lorentz
