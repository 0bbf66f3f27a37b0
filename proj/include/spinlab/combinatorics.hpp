#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

// Index bookkeeping for antisymmetric tensors: increasing tuples from
// {1..m}, their lexicographic ranks, and permutation signs.

namespace spinlab::comb {

inline std::int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All strictly increasing k-tuples from {1..m}, lexicographic.
inline const std::vector<std::vector<int>>& tuples(int m, int k) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (m < 0 || k < 0 || k > m) throw std::invalid_argument("tuples: bad (m,k)");
    std::vector<std::vector<int>> out;
    std::vector<int> t(k);
    for (int i = 0; i < k; ++i) t[i] = i + 1;
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[i] == m - (k - 1 - i)) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
    }
    if (k == 0) out.assign(1, {});
    return cache.emplace(key, std::move(out)).first->second;
}

// Lexicographic rank of an increasing tuple.
inline int rank(int m, int k, const std::vector<int>& t) {
    std::int64_t r = 0;
    int prev = 0;
    for (int j = 0; j < k; ++j) {
        for (int v = prev + 1; v < t[j]; ++v) r += binom(m - v, k - 1 - j);
        prev = t[j];
    }
    return static_cast<int>(r);
}

// Sorts t, returns the sign of the sorting permutation, 0 on a repeat.
inline int sort_sign(std::vector<int>& t) {
    int sign = 1;
    for (size_t i = 1; i < t.size(); ++i) {
        size_t j = i;
        while (j > 0 && t[j - 1] > t[j]) {
            std::swap(t[j - 1], t[j]);
            sign = -sign;
            --j;
        }
        if (j > 0 && t[j - 1] == t[j]) return 0;
    }
    return sign;
}

inline std::vector<int> complement(int m, const std::vector<int>& t) {
    std::vector<int> out;
    out.reserve(m - t.size());
    size_t p = 0;
    for (int v = 1; v <= m; ++v) {
        if (p < t.size() && t[p] == v) { ++p; continue; }
        out.push_back(v);
    }
    return out;
}

// Sign of the concatenation (a, b) as a permutation of its sorted union;
// 0 if a and b intersect. Inputs must each be strictly increasing.
inline int shuffle_sign(const std::vector<int>& a, const std::vector<int>& b,
                        std::vector<int>* merged = nullptr) {
    std::vector<int> cat;
    cat.reserve(a.size() + b.size());
    cat.insert(cat.end(), a.begin(), a.end());
    cat.insert(cat.end(), b.begin(), b.end());
    int s = sort_sign(cat);
    if (merged && s != 0) *merged = cat;
    return s;
}

} // namespace spinlab::comb
