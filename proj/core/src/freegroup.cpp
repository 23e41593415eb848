#include "freelat/freegroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace freelat {

GeneratorSet::GeneratorSet(std::size_t rank) {
    if (rank == 0)
        throw InputError("generator set must have positive rank");
    if (rank > 26)
        throw InputError("default generator names only cover rank <= 26");
    for (std::size_t i = 0; i < rank; ++i)
        names_.push_back(std::string(1, static_cast<char>('a' + i)));
}

GeneratorSet::GeneratorSet(std::vector<std::string> positive_names)
    : names_(std::move(positive_names)) {
    if (names_.empty())
        throw InputError("generator set must have positive rank");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty() || n.find_first_of(" \t\n^") != std::string::npos)
            throw InputError("invalid generator name '" + n + "'");
        if (!seen.insert(n).second)
            throw InputError("duplicate generator name '" + n + "'");
    }
}

std::string GeneratorSet::symbol(Letter l) const {
    if (l >= size())
        throw InputError("letter index out of range");
    return is_positive(l) ? names_[l] : names_[l - rank()] + "^-1";
}

Letter GeneratorSet::parse_symbol(std::string_view text) const {
    bool inverse = false;
    if (text.size() > 3 && text.substr(text.size() - 3) == "^-1") {
        inverse = true;
        text.remove_suffix(3);
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == text)
            return static_cast<Letter>(inverse ? i + rank() : i);
    throw InputError("unknown generator symbol '" + std::string(text) + (inverse ? "^-1'" : "'"));
}

Word Word::reduce(std::span<const Letter> letters, const GeneratorSet& gens) {
    Word w;
    for (Letter l : letters) {
        if (l >= gens.size())
            throw InputError("letter index out of range");
        if (!w.letters_.empty() && w.letters_.back() == gens.inverse(l))
            w.letters_.pop_back();
        else
            w.letters_.push_back(l);
    }
    return w;
}

Word Word::inverse(const GeneratorSet& gens) const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        w.letters_.push_back(gens.inverse(*it));
    return w;
}

Word Word::times(const Word& other, const GeneratorSet& gens) const {
    std::size_t cancel = 0;
    const std::size_t n = letters_.size();
    while (cancel < n && cancel < other.letters_.size() &&
           letters_[n - 1 - cancel] == gens.inverse(other.letters_[cancel]))
        ++cancel;
    Word w;
    w.letters_.reserve(n + other.letters_.size() - 2 * cancel);
    w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end() - static_cast<std::ptrdiff_t>(cancel));
    w.letters_.insert(w.letters_.end(), other.letters_.begin() + static_cast<std::ptrdiff_t>(cancel),
                      other.letters_.end());
    return w;
}

Word Word::times(Letter l, const GeneratorSet& gens) const {
    Word w = *this;
    if (!w.letters_.empty() && w.letters_.back() == gens.inverse(l))
        w.letters_.pop_back();
    else
        w.letters_.push_back(l);
    return w;
}

std::vector<Letter> parse_letters(std::string_view text, const GeneratorSet& gens) {
    std::vector<Letter> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok == "id" || tok == "1")
            continue;
        out.push_back(gens.parse_symbol(tok));
    }
    return out;
}

Word parse_word(std::string_view text, const GeneratorSet& gens) {
    auto letters = parse_letters(text, gens);
    return Word::reduce(letters, gens);
}

std::string format_word(const Word& w, const GeneratorSet& gens) {
    std::string out;
    for (Letter l : w.letters()) {
        if (!out.empty())
            out += ' ';
        out += gens.symbol(l);
    }
    return out;
}

WordSet ball(const GeneratorSet& gens, std::size_t radius) {
    WordSet out;
    std::vector<Word> frontier{Word{}};
    out.insert(Word{});
    for (std::size_t len = 1; len <= radius; ++len) {
        std::vector<Word> next;
        next.reserve(frontier.size() * (gens.size() - 1));
        for (const Word& w : frontier) {
            for (Letter l = 0; l < gens.size(); ++l) {
                if (!w.is_identity() && w.letters().back() == gens.inverse(l))
                    continue;
                next.push_back(w.times(l, gens));
            }
        }
        out.insert(next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::uint64_t ball_size(std::size_t rank, std::size_t radius) {
    // 1 + 2r * sum_{k<radius} (2r-1)^k
    std::uint64_t total = 1, sphere = 2 * rank;
    for (std::size_t k = 1; k <= radius; ++k) {
        total += sphere;
        sphere *= (2 * rank - 1);
    }
    return total;
}

std::vector<WordSet> s_connected_components(const WordSet& f, const GeneratorSet& gens) {
    std::vector<WordSet> components;
    std::set<Word> visited;
    for (const Word& start : f) {
        if (visited.contains(start))
            continue;
        WordSet comp;
        std::deque<Word> queue{start};
        visited.insert(start);
        while (!queue.empty()) {
            Word w = std::move(queue.front());
            queue.pop_front();
            for (Letter l = 0; l < gens.size(); ++l) {
                Word n = w.times(l, gens);
                if (f.contains(n) && visited.insert(n).second)
                    queue.push_back(n);
            }
            comp.insert(std::move(w));
        }
        components.push_back(std::move(comp));
    }
    return components;
}

bool is_s_connected(const WordSet& f, const GeneratorSet& gens) {
    return s_connected_components(f, gens).size() <= 1;
}

WordSet outer_boundary(const WordSet& c, const GeneratorSet& gens) {
    WordSet out;
    for (const Word& w : c) {
        // f s = w  <=>  f = w s^-1, so neighbors of w are exactly the candidates.
        for (Letter l = 0; l < gens.size(); ++l) {
            Word n = w.times(l, gens);
            if (!c.contains(n))
                out.insert(std::move(n));
        }
    }
    return out;
}

}  // namespace freelat
