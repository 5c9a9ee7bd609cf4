#include "klr/perm.hpp"

#include <algorithm>

namespace klr {

Perm::Perm(std::vector<int> img) : img_(std::move(img)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
        if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<size_t>(v)]) {
            throw value_error("image array is not a permutation");
        }
        seen[static_cast<size_t>(v)] = true;
    }
}

Perm Perm::transposition(int d, int r) {
    if (r < 0 || r + 1 >= d) throw value_error("transposition index out of range");
    Perm w(d);
    std::swap(w.img_[static_cast<size_t>(r)], w.img_[static_cast<size_t>(r) + 1]);
    return w;
}

Perm Perm::inverse() const {
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[static_cast<size_t>(img_[i])] = static_cast<int>(i);
    return Perm(std::move(img));
}

Perm Perm::after(const Perm& o) const {
    if (degree() != o.degree()) throw value_error("permutation degree mismatch");
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[i] = img_[static_cast<size_t>(o.img_[i])];
    return Perm(std::move(img));
}

int Perm::length() const {
    int inv = 0;
    for (size_t i = 0; i < img_.size(); ++i) {
        for (size_t j = i + 1; j < img_.size(); ++j) {
            if (img_[i] > img_[j]) ++inv;
        }
    }
    return inv;
}

bool Perm::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i) {
        if (img_[i] != static_cast<int>(i)) return false;
    }
    return true;
}

std::vector<int> canonical_reduced_word(const Perm& w) {
    // peel left descents: l(s_r w) < l(w) iff w^{-1}(r) > w^{-1}(r+1)
    std::vector<int> word;
    Perm cur = w;
    Perm inv = w.inverse();
    while (!cur.is_identity()) {
        int pick = -1;
        for (int r = 0; r + 1 < cur.degree(); ++r) {
            if (inv(r) > inv(r + 1)) {
                pick = r;
                break;
            }
        }
        if (pick < 0) throw value_error("descent scan failed");
        word.push_back(pick);
        cur = Perm::transposition(cur.degree(), pick).after(cur);
        inv = cur.inverse();
    }
    return word;
}

Perm perm_from_word(int d, const std::vector<int>& word) {
    Perm w(d);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        w = w.after(Perm::transposition(d, *it));
    }
    return w;
}

std::vector<Perm> symmetric_group(int d) {
    std::vector<int> img(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) img[static_cast<size_t>(i)] = i;
    std::vector<Perm> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

namespace {
void reduced_words_rec(const Perm& w, std::vector<int>& stack,
                       std::vector<std::vector<int>>& out) {
    if (w.is_identity()) {
        out.push_back(stack);
        return;
    }
    Perm inv = w.inverse();
    for (int r = 0; r + 1 < w.degree(); ++r) {
        if (inv(r) > inv(r + 1)) {
            stack.push_back(r);
            reduced_words_rec(Perm::transposition(w.degree(), r).after(w), stack, out);
            stack.pop_back();
        }
    }
}
}  // namespace

std::vector<std::vector<int>> all_reduced_words(const Perm& w) {
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    reduced_words_rec(w, stack, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace klr
