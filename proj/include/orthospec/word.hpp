#pragma once

// Words over a generating alphabet stored as letter indices.  Letter 2k is
// the k-th generator, letter 2k+1 its inverse (so inverse = index ^ 1).
// The groups we enumerate are free on their construction generators, so
// free-plus-cyclic reduction gives exact conjugacy canonical forms.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace orthospec {

using word = std::vector<int32_t>;

inline int32_t letter_inverse(int32_t x) { return x ^ 1; }

inline word word_inverse(const word& w) {
    word r(w.rbegin(), w.rend());
    for (auto& x : r) x ^= 1;
    return r;
}

inline word free_reduce(const word& w) {
    word r;
    r.reserve(w.size());
    for (int32_t x : w) {
        if (!r.empty() && r.back() == (x ^ 1))
            r.pop_back();
        else
            r.push_back(x);
    }
    return r;
}

inline word concat_reduce(const word& a, const word& b) {
    word r = a;
    for (int32_t x : b) {
        if (!r.empty() && r.back() == (x ^ 1))
            r.pop_back();
        else
            r.push_back(x);
    }
    return r;
}

// Cyclic reduction: strip matching inverse letters from the two ends of a
// freely reduced word.
inline word cyclic_reduce(word w) {
    w = free_reduce(w);
    size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == (w[hi - 1] ^ 1)) {
        ++lo;
        --hi;
    }
    return word(w.begin() + lo, w.begin() + hi);
}

// Lexicographically minimal rotation of w.
inline word min_rotation(const word& w) {
    if (w.empty()) return w;
    const size_t n = w.size();
    word best = w;
    word rot = w;
    for (size_t k = 1; k < n; ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

// Canonical form of the conjugacy class of w, identifying w with its
// inverse (a closed geodesic is unoriented): min over rotations of the
// cyclic reduction and of its inverse.
inline word conjugacy_canonical(const word& w) {
    const word c = cyclic_reduce(w);
    const word a = min_rotation(c);
    const word b = min_rotation(word_inverse(c));
    return std::min(a, b);
}

// A cyclically reduced word is primitive iff it is not a proper power,
// i.e. no rotation by a proper divisor of its length reproduces it.
inline bool is_primitive(const word& cyc) {
    const size_t n = cyc.size();
    if (n == 0) return false;
    for (size_t d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (size_t i = 0; i + d < n && periodic; ++i)
            periodic = cyc[i] == cyc[i + d];
        if (periodic) return false;
    }
    return true;
}

}  // namespace orthospec
