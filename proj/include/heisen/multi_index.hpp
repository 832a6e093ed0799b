#pragma once

#include <map>
#include <stdexcept>
#include <vector>

namespace heis {

/// Multi-index in Z^n_{>=0}. Entries are kept non-negative by construction.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}

    int degree() const {
        int d = 0;
        for (int e : entries) d += e;
        return d;
    }
    int dim() const { return static_cast<int>(entries.size()); }
    int operator[](int i) const { return entries[static_cast<size_t>(i)]; }

    bool operator==(const MultiIndex& o) const { return entries == o.entries; }

    // graded-lexicographic: degree first, then lexicographic on entries
    bool operator<(const MultiIndex& o) const {
        int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return entries < o.entries;
    }
};

/// All multi-indices of dimension n with degree <= maxDegree, graded-lex sorted.
std::vector<MultiIndex> enumerate_indices(int n, int maxDegree);

/// Frozen enumeration of {alpha : |alpha| <= maxDegree} with O(log D) position lookup.
/// dimension() equals binomial(maxDegree + n, n).
class TruncationScheme {
public:
    TruncationScheme(int n, int maxDegree);

    int n() const { return n_; }
    int maxDegree() const { return maxDegree_; }
    int dimension() const { return static_cast<int>(indices_.size()); }

    const MultiIndex& at(int i) const { return indices_[static_cast<size_t>(i)]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    /// Position of alpha in the enumeration; throws std::out_of_range if not contained.
    int position(const MultiIndex& alpha) const;
    bool contains(const MultiIndex& alpha) const;

private:
    int n_;
    int maxDegree_;
    std::vector<MultiIndex> indices_;
    std::map<std::vector<int>, int> pos_;
};

} // namespace heis
