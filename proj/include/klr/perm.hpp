#pragma once

#include <vector>

#include "klr/poly.hpp"

namespace klr {

// Permutation of [0,d) as an image array, w(i) = img[i].
class Perm {
  public:
    explicit Perm(int d) : img_(static_cast<size_t>(d)) {
        for (int i = 0; i < d; ++i) img_[static_cast<size_t>(i)] = i;
    }
    explicit Perm(std::vector<int> img);
    static Perm transposition(int d, int r);  // adjacent: swaps r, r+1

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& image() const { return img_; }

    Perm inverse() const;
    // this∘o : apply o first.
    Perm after(const Perm& o) const;

    int length() const;  // inversion count

    bool is_identity() const;
    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    PosMap as_posmap() const { return PosMap(img_); }

  private:
    std::vector<int> img_;
};

// Lexicographically smallest reduced word (0-based adjacent transposition
// indices), built by greedy smallest-descent selection.  Evaluating the word
// left to right as s_{p_1}∘...∘s_{p_k} reproduces w.
std::vector<int> canonical_reduced_word(const Perm& w);

// Product s_{p_1}∘...∘s_{p_k} of adjacent transpositions in S_d.
Perm perm_from_word(int d, const std::vector<int>& word);

// All permutations of S_d in lexicographic image order.
std::vector<Perm> symmetric_group(int d);

// All reduced words of w (for small d), lexicographically sorted.
std::vector<std::vector<int>> all_reduced_words(const Perm& w);

}  // namespace klr
