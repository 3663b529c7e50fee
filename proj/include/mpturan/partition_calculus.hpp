// partition_calculus.hpp
// Exact evaluation of the extremal functions f and g over index partitions,
// plus the L-balance family split, the tau threshold and the size-gap eta
// selection. Everything is integer arithmetic except eta, which works in
// log space with long doubles.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "core.hpp"

namespace mpturan {

// ------------------------------------------------- partition enumeration

// Visits every partition of [0, r) into exactly `parts` non-empty blocks,
// each once, in canonical form (restricted growth strings enumerate blocks
// ordered by smallest member). Return false from the visitor to stop early.
template <class F>
void for_each_index_partition(int r, int parts, F&& visit) {
    if (parts < 1 || parts > r)
        throw Error(Errc::InvalidArity, "cannot split " + std::to_string(r) + " classes into " +
                                            std::to_string(parts) + " non-empty blocks");
    std::vector<int> rgs(r, 0);  // rgs[i] = block of class i
    std::vector<int> maxp(r, 0); // max label used among rgs[0..i]
    IndexPartition p;
    p.blocks.assign(parts, {});
    auto emit = [&]() -> bool {
        for (auto& b : p.blocks) b.clear();
        for (int i = 0; i < r; ++i) p.blocks[rgs[i]].push_back(i);
        return visit(std::as_const(p));
    };
    // iterative restricted-growth enumeration filtered to exactly `parts` labels
    int i = 1;
    if (r == 1) {
        if (parts == 1) emit();
        return;
    }
    std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == r) {
            if (maxp[r - 1] + 1 == parts) return emit();
            return true;
        }
        int hi = std::min(maxp[pos - 1] + 1, parts - 1);
        // prune: remaining positions must still be able to reach `parts` labels
        for (int b = 0; b <= hi; ++b) {
            int newmax = std::max(maxp[pos - 1], b);
            if (newmax + 1 + (r - pos - 1) < parts) continue;
            rgs[pos] = b;
            maxp[pos] = newmax;
            if (!rec(pos + 1)) return false;
        }
        return true;
    };
    rec(1);
}

inline std::vector<IndexPartition> enumerate_index_partitions(int r, int parts) {
    std::vector<IndexPartition> out;
    for_each_index_partition(r, parts, [&](const IndexPartition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

// ----------------------------------------------------------------- score

struct ScoredPartition {
    IndexPartition partition;
    long long cross_sum = 0;     // sum over unordered block pairs of n_I * n_I'
    long long balance_term = 0;  // n_P = max_I (n_I - m_I)
    long long score = 0;         // (k-1) * n_P + cross_sum
};

// `sizes` may contain zero entries (g-recursion residuals stay in place).
inline ScoredPartition score_partition(const std::vector<int>& sizes, const IndexPartition& p,
                                       int k) {
    check_index_partition(p, int(sizes.size()));
    ScoredPartition sp;
    sp.partition = canonicalized(p);
    std::vector<long long> block_sum;
    long long n_p = 0;
    for (const auto& b : sp.partition.blocks) {
        long long sum = 0;
        long long mn = 0;
        bool first = true;
        for (int i : b) {
            sum += sizes[i];
            mn = first ? sizes[i] : std::min<long long>(mn, sizes[i]);
            first = false;
        }
        block_sum.push_back(sum);
        n_p = std::max(n_p, sum - mn);
    }
    long long cross = 0;
    for (size_t a = 0; a < block_sum.size(); ++a)
        for (size_t b = a + 1; b < block_sum.size(); ++b) cross += block_sum[a] * block_sum[b];
    sp.cross_sum = cross;
    sp.balance_term = n_p;
    sp.score = (long long)(k - 1) * n_p + cross;
    return sp;
}

// ------------------------------------------------------------- compute_f

struct FResult {
    long long value = 0;
    std::vector<IndexPartition> argmax;  // in canonical enumeration order
};

// Maximizes the partition score over all partitions of [0, r) into t-1
// non-empty blocks. When r < t-1 the partition degenerates to min(r, t-1)
// blocks (residual states of the g-recursion). Accepts t >= 2: the t-1 = 1
// case has a single block and score (k-1) * n_P.
inline FResult compute_f(const std::vector<int>& sizes, int k, int t,
                         bool want_argmax = true) {
    if (sizes.empty()) throw Error(Errc::EmptySizes, "no class sizes");
    if (t < 2) throw Error(Errc::InvalidArity, "t must be at least 2");
    if (k < 1) throw Error(Errc::InvalidArity, "k must be at least 1");
    int r = int(sizes.size());
    int parts = std::min(r, t - 1);
    FResult res;
    res.value = -1;
    for_each_index_partition(r, parts, [&](const IndexPartition& p) {
        ScoredPartition sp = score_partition(sizes, p, k);
        if (sp.score > res.value) {
            res.value = sp.score;
            if (want_argmax) {
                res.argmax.clear();
                res.argmax.push_back(sp.partition);
            }
        } else if (sp.score == res.value && want_argmax) {
            res.argmax.push_back(sp.partition);
        }
        return true;
    });
    return res;
}

inline FResult compute_f(const PartSizes& ps, int k, int t, bool want_argmax = true) {
    if (ps.r() < t) throw Error(Errc::TooFewClasses, "need r >= t for f");
    return compute_f(ps.sizes, k, t, want_argmax);
}

// ------------------------------------------------------------- compute_g

enum class GMode { Recursive, Direct };

struct GResult {
    long long value = 0;
    ExtremalWitness witness;
};

namespace detail {

inline long long g_recursive_value(std::vector<int> sizes, int k, int t,
                                   std::map<std::pair<std::vector<int>, int>, long long>& memo) {
    if (k == 1) return compute_f(sizes, 1, t, false).value;
    std::vector<int> key(sizes);
    std::sort(key.begin(), key.end());
    auto it = memo.find({key, k});
    if (it != memo.end()) return it->second;
    long long n = std::accumulate(sizes.begin(), sizes.end(), 0LL);
    long long best = -1;
    for (int i = 0; i < int(sizes.size()); ++i) {
        if (sizes[i] < 1) continue;
        sizes[i] -= 1;
        long long v = (n - (sizes[i] + 1)) + g_recursive_value(sizes, k - 1, t, memo);
        sizes[i] += 1;
        best = std::max(best, v);
    }
    memo[{key, k}] = best;
    return best;
}

template <class F>
void for_each_dominator_multiset(const std::vector<int>& sizes, int budget, int i,
                                 std::vector<int>& cur, F&& f) {
    if (i == int(sizes.size())) {
        if (budget == 0) f(cur);
        return;
    }
    int cap = std::min(budget, sizes[i]);
    for (int m = 0; m <= cap; ++m) {
        cur[i] = m;
        for_each_dominator_multiset(sizes, budget - m, i + 1, cur, f);
    }
    cur[i] = 0;
}

}  // namespace detail

// g(n_1,...,n_r,k,t): recursive mode peels one dominator at a time,
//   g(v, k) = max over classes with n_i >= 1 of (n - n_i) + g(v - e_i, k-1),
// anchored at g(v, 1) = f(v, 1, t); direct mode enumerates dominating-class
// multisets and counts the realized construction's edges. Both agree.
inline GResult compute_g(const PartSizes& ps, int k, int t, GMode mode = GMode::Recursive) {
    if (ps.r() < t) throw Error(Errc::TooFewClasses, "need r >= t for g");
    if (t < 3) throw Error(Errc::InvalidArity, "t must be at least 3");
    if (k < 1) throw Error(Errc::InvalidArity, "k must be at least 1");
    for (int s : ps.sizes)
        if (s < 1) throw Error(Errc::NonPositiveSize, "g needs positive class sizes");
    if (k - 1 > ps.total())
        throw Error(Errc::InfeasibleDominators, "k-1 dominators exceed host size");

    GResult res;
    if (mode == GMode::Recursive) {
        std::map<std::pair<std::vector<int>, int>, long long> memo;
        res.value = detail::g_recursive_value(ps.sizes, k, t, memo);
        // reconstruct one attaining dominator multiset greedily
        std::vector<int> sizes(ps.sizes);
        std::vector<int> dom(ps.r(), 0);
        for (int level = k; level >= 2; --level) {
            long long n = std::accumulate(sizes.begin(), sizes.end(), 0LL);
            long long want = detail::g_recursive_value(sizes, level, t, memo);
            for (int i = 0; i < int(sizes.size()); ++i) {
                if (sizes[i] < 1) continue;
                sizes[i] -= 1;
                long long v = (n - (sizes[i] + 1)) + detail::g_recursive_value(sizes, level - 1, t, memo);
                if (v == want) {
                    dom[i] += 1;
                    break;
                }
                sizes[i] += 1;
            }
        }
        res.witness.dominator_count = dom;
        res.witness.residual = compute_f(sizes, 1, t).argmax.front();
    } else {
        long long n = ps.total();
        long long best = -1;
        std::vector<int> cur(ps.r(), 0), best_dom;
        detail::for_each_dominator_multiset(ps.sizes, k - 1, 0, cur, [&](const std::vector<int>& dom) {
            std::vector<int> residual(ps.sizes);
            long long attach = 0, same_class_pairs = 0;
            for (int i = 0; i < ps.r(); ++i) {
                residual[i] -= dom[i];
                attach += (long long)dom[i] * (n - ps.sizes[i]);
                same_class_pairs += (long long)dom[i] * (dom[i] - 1) / 2;
            }
            long long cross_dominator_pairs = (long long)(k - 1) * (k - 2) / 2 - same_class_pairs;
            long long v = compute_f(residual, 1, t, false).value + attach - cross_dominator_pairs;
            if (v > best) {
                best = v;
                best_dom = dom;
            }
        });
        res.value = best;
        res.witness.dominator_count = best_dom;
        std::vector<int> residual(ps.sizes);
        for (int i = 0; i < ps.r(); ++i) residual[i] -= best_dom[i];
        res.witness.residual = compute_f(residual, 1, t).argmax.front();
    }
    return res;
}

// ------------------------------------------------------------- L-balance

struct BalanceFamilies {
    std::vector<std::vector<int>> families;  // class indices, in sorted-size order
};

// Greedy maximal split of the sorted sizes: a new family starts at every i
// with n_i * L^4 < n_{i-1} (strict).
inline BalanceFamilies l_balance_families(const PartSizes& ps, long long L) {
    if (L < 1) throw Error(Errc::InvalidArity, "L must be at least 1");
    long long L4 = L * L * L * L;
    BalanceFamilies bf;
    for (int i = 0; i < ps.r(); ++i) {
        bool split = i == 0 || (long long)ps.sizes[i] * L4 < ps.sizes[i - 1];
        if (split) bf.families.push_back({});
        bf.families.back().push_back(i);
    }
    return bf;
}

// tau = 0 when |B_1| >= t-1, else the largest x with |B_1| + ... + |B_x| < t-1.
inline int compute_tau(const PartSizes& ps, int t, long long L) {
    if (t < 3) throw Error(Errc::InvalidArity, "t must be at least 3");
    BalanceFamilies bf = l_balance_families(ps, L);
    if (int(bf.families.front().size()) >= t - 1) return 0;
    int acc = 0, tau = 0;
    for (int x = 1; x <= int(bf.families.size()); ++x) {
        acc += int(bf.families[x - 1].size());
        if (acc < t - 1) tau = x;
    }
    return tau;
}

// ------------------------------------------------------------- size gap

struct SizeGapResult {
    long double eta = 0;
    int split_index = 0;
};

// Post-hoc check of the dichotomy the selection promises.
inline bool size_gap_dichotomy_holds(const std::vector<long long>& u, long long N,
                                     long double eta) {
    const long double guard = 1e-12L;
    long double small_thr = eta * (long double)N;
    long double big_thr = std::exp(std::log(eta) / 10.0L) * (long double)N;
    for (long long x : u) {
        bool is_small = (long double)x < small_thr * (1 + guard) || x == 0;
        bool is_big = (long double)x >= big_thr * (1 - guard);
        if (!is_small && !is_big) return false;
    }
    return true;
}

// Finds eta = eps^(1/10^i) separating the u_i into "small" (< eta*N) and
// "large" (>= eta^(1/10)*N). All comparisons run on logarithms with a
// relative guard; ties resolve toward the dichotomy holding.
inline SizeGapResult size_gap_eta(const std::vector<long long>& u, long long N, long double eps) {
    int m = int(u.size());
    if (m < 1) throw Error(Errc::EmptySizes, "u is empty");
    if (m > 8) throw Error(Errc::NumericRange, "m > 8 is numerically meaningless here");
    long long total = 0;
    for (long long x : u) {
        if (x < 0) throw Error(Errc::PreconditionViolated, "u entries must be non-negative");
        total += x;
    }
    if (N > total) throw Error(Errc::PreconditionViolated, "N exceeds the sum of u");
    if (N < 1) throw Error(Errc::PreconditionViolated, "N must be positive");
    if (!(eps > 0)) throw Error(Errc::PreconditionViolated, "eps must be positive");
    const long double log_eps = std::log(eps);
    // eps < (1/m)^(10^m) checked in log space
    long double pow10m = std::pow((long double)10, m);
    if (!(log_eps < -pow10m * std::log((long double)m)))
        throw Error(Errc::PreconditionViolated, "eps too large for m");

    std::vector<long long> sorted(u);
    std::sort(sorted.begin(), sorted.end());
    const long double guard = 1e-12L;
    const long double logN = std::log((long double)N);
    auto log_threshold = [&](int i) { return log_eps / std::pow((long double)10, i) + logN; };
    // ascending with u_(0) = 0: u_(i) <= eps^(1/10^i) N and u_(i+1) >= eps^(1/10^(i+1)) N
    for (int i = 0; i <= m - 1; ++i) {
        bool below = true;  // u_(0) = 0
        if (i > 0 && sorted[i - 1] > 0) {
            long double thr = log_threshold(i);
            below = std::log((long double)sorted[i - 1]) <= thr + guard * std::fabs(thr);
        }
        if (!below) continue;
        long long next = sorted[i];  // u_(i+1)
        long double thr = log_threshold(i + 1);
        bool above = next > 0 && std::log((long double)next) >= thr - guard * std::fabs(thr);
        if (above) {
            SizeGapResult res;
            res.split_index = i;
            res.eta = std::exp(log_eps / std::pow((long double)10, i));
            if (!size_gap_dichotomy_holds(u, N, res.eta))
                throw Error(Errc::PreconditionViolated,
                            "selected eta fails the dichotomy; eps too close to the bound");
            return res;
        }
    }
    // unreachable under the checked precondition
    throw Error(Errc::PreconditionViolated, "no eta separates u; eps too large");
}

}  // namespace mpturan
