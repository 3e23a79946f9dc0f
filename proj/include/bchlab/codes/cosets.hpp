#ifndef BCHLAB_CODES_COSETS_HPP
#define BCHLAB_CODES_COSETS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bchlab/error.hpp"

namespace bchlab {

/// Partition of Z_n into cyclotomic cosets K_i = { i * 2^j mod n }.
struct CosetTable {
    int n = 0;
    std::vector<int> leaders;               // sorted, each the minimum of its coset
    std::map<int, std::vector<int>> cosets; // leader -> sorted members
    std::vector<int> leader_of;             // member -> leader

    const std::vector<int>& members(int leader) const {
        auto it = cosets.find(leader);
        if (it == cosets.end()) throw Error(ErrorCode::InvalidLeader, std::to_string(leader) + " is not a coset leader");
        return it->second;
    }
    bool is_leader(int i) const { return cosets.count(i) != 0; }
};

inline bool is_mersenne_length(int n) { return n >= 3 && ((n + 1) & n) == 0; }

inline CosetTable cyclotomic_cosets(int n) {
    if (!is_mersenne_length(n)) throw Error(ErrorCode::BadLength, "n + 1 must be a power of two, got n = " + std::to_string(n));
    CosetTable t;
    t.n = n;
    t.leader_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (t.leader_of[static_cast<std::size_t>(i)] >= 0) continue;
        std::vector<int> members;
        int j = i;
        do {
            members.push_back(j);
            t.leader_of[static_cast<std::size_t>(j)] = i;
            j = static_cast<int>((2LL * j) % n);
        } while (j != i);
        std::sort(members.begin(), members.end());
        t.leaders.push_back(i);
        t.cosets.emplace(i, std::move(members));
    }
    return t;
}

/// Union of the cosets of the given leaders, sorted.
inline std::vector<int> coset_union(const CosetTable& t, const std::vector<int>& leaders) {
    std::set<int> m;
    for (int l : leaders) {
        const auto& mem = t.members(l);
        m.insert(mem.begin(), mem.end());
    }
    return {m.begin(), m.end()};
}

/// 1 + longest run of cyclically consecutive integers (mod n) contained in M.
/// Returns n + 1 when M is all of Z_n.
inline int designed_distance(const std::vector<int>& M, int n) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int j : M) in[static_cast<std::size_t>(((j % n) + n) % n)] = 1;
    if (std::all_of(in.begin(), in.end(), [](char c) { return c != 0; })) return n + 1;
    // start right after a gap so a wrapping run is counted in one piece
    int start = 0;
    while (in[static_cast<std::size_t>(start)]) ++start;
    int best = 0, run = 0;
    for (int t = 1; t <= n; ++t) {
        const int j = (start + t) % n;
        run = in[static_cast<std::size_t>(j)] ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best + 1;
}

/// Z_n minus M, sorted.
inline std::vector<int> complement(const std::vector<int>& M, int n) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int j : M) in[static_cast<std::size_t>(j)] = 1;
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
        if (!in[static_cast<std::size_t>(j)]) out.push_back(j);
    return out;
}

} // namespace bchlab

#endif // BCHLAB_CODES_COSETS_HPP
