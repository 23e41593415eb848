#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace freelat {

/// Thrown for malformed user input (unknown symbols, bad files, bad flags).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index into a GeneratorSet. Positive generators are 0..r-1; the inverse of
/// letter i is (i + r) mod 2r.
using Letter = std::uint16_t;

/// Symmetric free generating set S = {s_1..s_r, s_1^-1..s_r^-1}.
class GeneratorSet {
public:
    /// Default names a, b, c, ... for the positive generators.
    explicit GeneratorSet(std::size_t rank);
    explicit GeneratorSet(std::vector<std::string> positive_names);

    std::size_t rank() const noexcept { return names_.size(); }
    std::size_t size() const noexcept { return 2 * names_.size(); }

    Letter inverse(Letter l) const noexcept {
        return static_cast<Letter>((l + rank()) % size());
    }
    bool is_positive(Letter l) const noexcept { return l < rank(); }

    /// "a" for a positive letter, "a^-1" for its inverse.
    std::string symbol(Letter l) const;
    /// Inverse of symbol(); throws InputError for unknown symbols.
    Letter parse_symbol(std::string_view text) const;

    const std::vector<std::string>& positive_names() const noexcept { return names_; }

    friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

private:
    std::vector<std::string> names_;
};

/// Freely reduced word. Ordered shortlex (length first, then letters), which is
/// the canonical iteration order of a WordSet.
class Word {
public:
    Word() = default;

    /// Free reduction of an arbitrary letter sequence.
    static Word reduce(std::span<const Letter> letters, const GeneratorSet& gens);
    static Word letter(Letter l) { Word w; w.letters_.push_back(l); return w; }

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool is_identity() const noexcept { return letters_.empty(); }

    Word inverse(const GeneratorSet& gens) const;
    /// Product this * other, reduced.
    Word times(const Word& other, const GeneratorSet& gens) const;
    /// Product this * l, reduced.
    Word times(Letter l, const GeneratorSet& gens) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.letters_.size() != b.letters_.size())
            return a.letters_.size() <=> b.letters_.size();
        return a.letters_ <=> b.letters_;
    }

private:
    std::vector<Letter> letters_;
};

using WordSet = std::set<Word>;

/// Whitespace separated symbols; "" is the identity.
Word parse_word(std::string_view text, const GeneratorSet& gens);
std::string format_word(const Word& w, const GeneratorSet& gens);
/// Parses letters without reducing them (used to compare spellings).
std::vector<Letter> parse_letters(std::string_view text, const GeneratorSet& gens);

/// All reduced words of length <= radius.
WordSet ball(const GeneratorSet& gens, std::size_t radius);
/// Number of reduced words of length <= radius, by the closed form.
std::uint64_t ball_size(std::size_t rank, std::size_t radius);

/// Maximal subsets whose induced Cayley subgraph (f ~ fs) is connected.
/// Components are listed in the order of their smallest element.
std::vector<WordSet> s_connected_components(const WordSet& f, const GeneratorSet& gens);
bool is_s_connected(const WordSet& f, const GeneratorSet& gens);

/// Elements outside c adjacent to some element of c.
WordSet outer_boundary(const WordSet& c, const GeneratorSet& gens);

}  // namespace freelat
