#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cubetop {

// A word is a sequence of oriented edge letters. Letters are encoded as
// +-(id+1) so that negation flips the orientation.
using Letter = int32_t;

inline Letter make_letter(int id, int sign) { return sign > 0 ? Letter(id + 1) : Letter(-(id + 1)); }
inline int letter_id(Letter l) { return (l > 0 ? l : -l) - 1; }
inline int letter_sign(Letter l) { return l > 0 ? 1 : -1; }

struct Word {
    std::deque<Letter> letters;

    Word() = default;
    Word(std::initializer_list<Letter> ls) : letters(ls) {}

    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }

    void push_back(Letter l) { letters.push_back(l); }

    // Reverses the order and flips every orientation.
    Word inverse() const {
        Word w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
        return w;
    }

    void append(const Word& other) {
        for (Letter l : other.letters) letters.push_back(l);
    }

    void rotate_front_to_back() {
        letters.push_back(letters.front());
        letters.pop_front();
    }

    int count_edge(int id) const {
        int n = 0;
        for (Letter l : letters)
            if (letter_id(l) == id) ++n;
        return n;
    }

    // Cancels adjacent mutually inverse letters.
    void free_reduce() {
        std::deque<Letter> out;
        for (Letter l : letters) {
            if (!out.empty() && out.back() == -l)
                out.pop_back();
            else
                out.push_back(l);
        }
        letters.swap(out);
    }

    // Free reduction of the word viewed as a cyclic word.
    void cyclic_reduce() {
        free_reduce();
        while (letters.size() >= 2 && letters.front() == -letters.back()) {
            letters.pop_front();
            letters.pop_back();
        }
    }

    std::map<int, long long> exponents() const {
        std::map<int, long long> e;
        for (Letter l : letters) e[letter_id(l)] += letter_sign(l);
        return e;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

// Replaces every occurrence of edge z in w by zeta and of z^-1 by zeta^-1.
// Pre: z does not occur in zeta.
inline Word substitute(const Word& w, int z, const Word& zeta) {
    if (zeta.count_edge(z) > 0) throw std::invalid_argument("substituted edge occurs in its replacement");
    Word zeta_inv = zeta.inverse();
    Word out;
    for (Letter l : w.letters) {
        if (letter_id(l) != z) {
            out.push_back(l);
        } else if (letter_sign(l) > 0) {
            out.append(zeta);
        } else {
            out.append(zeta_inv);
        }
    }
    return out;
}

inline std::string to_string(const Word& w, const std::string& prefix = "e") {
    std::string s;
    for (Letter l : w.letters) {
        if (!s.empty()) s += ' ';
        s += prefix + std::to_string(letter_id(l));
        if (letter_sign(l) < 0) s += "^-1";
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << to_string(w); }

}  // namespace cubetop
