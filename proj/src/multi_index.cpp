#include "heisen/multi_index.hpp"

namespace heis {

namespace {

// compositions of d into n parts, lexicographically increasing
void compositions(int n, int d, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(d);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= d; ++k) {
        cur.push_back(k);
        compositions(n, d - k, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<MultiIndex> enumerate_indices(int n, int maxDegree) {
    if (n < 1) throw std::invalid_argument("enumerate_indices: n must be >= 1");
    if (maxDegree < 0) throw std::invalid_argument("enumerate_indices: maxDegree must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    for (int d = 0; d <= maxDegree; ++d) compositions(n, d, cur, out);
    return out;
}

TruncationScheme::TruncationScheme(int n, int maxDegree)
    : n_(n), maxDegree_(maxDegree), indices_(enumerate_indices(n, maxDegree)) {
    for (int i = 0; i < static_cast<int>(indices_.size()); ++i)
        pos_[indices_[static_cast<size_t>(i)].entries] = i;
}

int TruncationScheme::position(const MultiIndex& alpha) const {
    auto it = pos_.find(alpha.entries);
    if (it == pos_.end()) throw std::out_of_range("TruncationScheme::position: index not in scheme");
    return it->second;
}

bool TruncationScheme::contains(const MultiIndex& alpha) const {
    return pos_.find(alpha.entries) != pos_.end();
}

} // namespace heis
