// stability.hpp
// The stable-partition calculus: integral/partial classification, the
// four-condition stability predicate and its slack variant, internalization,
// the trim-to-stable routine, exhaustive extremal-partition enumeration with
// the characterization check, and partition recovery from near-extremal
// graphs.
#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "core.hpp"
#include "graph_ops.hpp"
#include "symmetrization.hpp"

namespace mpturan {

// ---------------------------------------------------------------- cells

// Intersection counts of classes with blocks; every stability predicate is
// a function of this matrix, which makes restriction to V \ X trivial.
struct CellMatrix {
    int r = 0, b = 0;
    std::vector<std::vector<long long>> cell;  // [class][block]
    std::vector<long long> class_size;         // row sums
    std::vector<long long> block_size;         // column sums

    void recompute_sums() {
        class_size.assign(r, 0);
        block_size.assign(b, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < b; ++j) {
                class_size[i] += cell[i][j];
                block_size[j] += cell[i][j];
            }
    }
};

namespace detail {

inline std::vector<int> class_starts(const PartSizes& ps) {
    std::vector<int> s(ps.r() + 1, 0);
    for (int i = 0; i < ps.r(); ++i) s[i + 1] = s[i] + ps.sizes[i];
    return s;
}

}  // namespace detail

inline CellMatrix cells_excluding(const VertexPartition& vp, const PartSizes& ps,
                                  const Bits* removed = nullptr) {
    check_vertex_partition(vp, ps);
    CellMatrix m;
    m.r = ps.r();
    m.b = vp.num_blocks;
    m.cell.assign(m.r, std::vector<long long>(m.b, 0));
    auto start = detail::class_starts(ps);
    for (int i = 0; i < m.r; ++i)
        for (int o = 0; o < ps.sizes[i]; ++o) {
            if (removed && removed->test(start[i] + o)) continue;
            m.cell[i][vp.block_of[i][o]] += 1;
        }
    m.recompute_sums();
    return m;
}

inline CellMatrix cells_from(const VertexPartition& vp, const PartSizes& ps) {
    return cells_excluding(vp, ps, nullptr);
}

// ---------------------------------------------------------- classification

enum class CellStatus { Absent, Integral, Partial };

struct ClassificationReport {
    std::vector<std::vector<CellStatus>> status;  // [class][block]
    std::vector<long long> integral_part;         // per block
    std::vector<long long> partial_part;          // per block
    std::vector<int> partial_classes;             // classes split across blocks
    std::vector<char> block_partial;              // per block: partial part non-empty
};

inline ClassificationReport classify(const CellMatrix& m) {
    ClassificationReport rep;
    rep.status.assign(m.r, std::vector<CellStatus>(m.b, CellStatus::Absent));
    rep.integral_part.assign(m.b, 0);
    rep.partial_part.assign(m.b, 0);
    rep.block_partial.assign(m.b, 0);
    for (int i = 0; i < m.r; ++i) {
        if (m.class_size[i] == 0) continue;
        bool split = false;
        for (int j = 0; j < m.b; ++j) {
            if (m.cell[i][j] == 0) continue;
            if (m.cell[i][j] == m.class_size[i]) {
                rep.status[i][j] = CellStatus::Integral;
                rep.integral_part[j] += m.cell[i][j];
            } else {
                rep.status[i][j] = CellStatus::Partial;
                rep.partial_part[j] += m.cell[i][j];
                rep.block_partial[j] = 1;
                split = true;
            }
        }
        if (split) rep.partial_classes.push_back(i);
    }
    return rep;
}

inline ClassificationReport classify(const VertexPartition& vp, const PartSizes& ps) {
    return classify(cells_from(vp, ps));
}

// ------------------------------------------------------------ predicates

enum class StabilityViolation {
    None,
    OnePartial,
    EqualPartialIntegralParts,
    PartialLEIntegralClass,
    IntegralPartGEPartialV,
    RemovalBound,
    XTooLarge,  // (X, eps)-stability only
    NotClose,   // (X, eps)-stability only
};

inline const char* violation_name(StabilityViolation v) {
    switch (v) {
        case StabilityViolation::None: return "None";
        case StabilityViolation::OnePartial: return "OnePartial";
        case StabilityViolation::EqualPartialIntegralParts: return "EqualPartialIntegralParts";
        case StabilityViolation::PartialLEIntegralClass: return "PartialLEIntegralClass";
        case StabilityViolation::IntegralPartGEPartialV: return "IntegralPartGEPartialV";
        case StabilityViolation::RemovalBound: return "RemovalBound";
        case StabilityViolation::XTooLarge: return "XTooLarge";
        case StabilityViolation::NotClose: return "NotClose";
    }
    return "Unknown";
}

struct StabilityVerdict {
    bool holds = true;
    StabilityViolation violated = StabilityViolation::None;
    int class_a = -1;   // offending class, when applicable
    int block_a = -1;   // offending block
    int block_b = -1;   // second block, when applicable
    std::string detail;

    static StabilityVerdict ok() { return {}; }
    static StabilityVerdict fail(StabilityViolation v, int ca, int ba, int bb,
                                 std::string d) {
        return {false, v, ca, ba, bb, std::move(d)};
    }
};

// The four stability conditions with additive slack eps (eps = 0 is the
// exact predicate). Checked in order; the first violation is reported.
inline StabilityVerdict is_eps_stable(const CellMatrix& m, double eps) {
    auto rep = classify(m);
    // (1) each block hosts at most one partial class
    for (int j = 0; j < m.b; ++j) {
        int first_partial = -1;
        for (int i = 0; i < m.r; ++i) {
            if (rep.status[i][j] != CellStatus::Partial) continue;
            if (first_partial >= 0)
                return StabilityVerdict::fail(
                    StabilityViolation::OnePartial, i, j, -1,
                    "block hosts two partial classes (" + std::to_string(first_partial) +
                        " and " + std::to_string(i) + ")");
            first_partial = i;
        }
    }
    // (2) partial blocks: integral parts mutually equal, and no larger than
    // any integral block
    for (int j = 0; j < m.b; ++j) {
        if (!rep.block_partial[j]) continue;
        for (int l = j + 1; l < m.b; ++l) {
            if (!rep.block_partial[l]) continue;
            if (std::llabs(rep.integral_part[j] - rep.integral_part[l]) > eps)
                return StabilityVerdict::fail(
                    StabilityViolation::EqualPartialIntegralParts, -1, j, l,
                    "integral parts " + std::to_string(rep.integral_part[j]) + " vs " +
                        std::to_string(rep.integral_part[l]));
        }
        for (int l = 0; l < m.b; ++l) {
            if (rep.block_partial[l] || l == j) continue;
            if (rep.integral_part[j] > m.block_size[l] + eps)
                return StabilityVerdict::fail(
                    StabilityViolation::PartialLEIntegralClass, -1, j, l,
                    "partial-block integral part " + std::to_string(rep.integral_part[j]) +
                        " exceeds integral block of size " + std::to_string(m.block_size[l]));
        }
    }
    // (3) every block's integral part covers every partial class of V
    for (int j = 0; j < m.b; ++j)
        for (int i : rep.partial_classes)
            if (rep.integral_part[j] + eps < m.class_size[i])
                return StabilityVerdict::fail(
                    StabilityViolation::IntegralPartGEPartialV, i, j, -1,
                    "integral part " + std::to_string(rep.integral_part[j]) +
                        " below partial class of size " + std::to_string(m.class_size[i]));
    // (4) removing any integral class leaves no more than any other block's
    // integral part
    for (int j = 0; j < m.b; ++j)
        for (int i = 0; i < m.r; ++i) {
            if (rep.status[i][j] != CellStatus::Integral) continue;
            for (int l = 0; l < m.b; ++l) {
                if (l == j) continue;
                if (m.block_size[j] - m.class_size[i] > rep.integral_part[l] + eps)
                    return StabilityVerdict::fail(
                        StabilityViolation::RemovalBound, i, j, l,
                        "removing class leaves " +
                            std::to_string(m.block_size[j] - m.class_size[i]) +
                            " against integral part " + std::to_string(rep.integral_part[l]));
            }
        }
    return StabilityVerdict::ok();
}

inline StabilityVerdict is_stable(const CellMatrix& m) { return is_eps_stable(m, 0.0); }

inline StabilityVerdict is_stable(const VertexPartition& vp, const PartSizes& ps) {
    return is_stable(cells_from(vp, ps));
}

inline StabilityVerdict is_eps_stable(const VertexPartition& vp, const PartSizes& ps,
                                      double eps) {
    if (eps < 0) throw Error(Errc::PreconditionViolated, "eps must be non-negative");
    return is_eps_stable(cells_from(vp, ps), eps);
}

inline bool is_one_partial(const VertexPartition& vp, const PartSizes& ps) {
    auto v = is_eps_stable(cells_from(vp, ps), std::numeric_limits<double>::infinity());
    return v.violated != StabilityViolation::OnePartial;
}

// Smallest slack making the partition eps-stable; nullopt when no slack can
// (the 1-partial condition admits none).
inline std::optional<double> least_stability_slack(const CellMatrix& m) {
    auto rep = classify(m);
    for (int j = 0; j < m.b; ++j) {
        int partials = 0;
        for (int i = 0; i < m.r; ++i)
            if (rep.status[i][j] == CellStatus::Partial) ++partials;
        if (partials > 1) return std::nullopt;
    }
    long long need = 0;
    for (int j = 0; j < m.b; ++j) {
        if (!rep.block_partial[j]) continue;
        for (int l = 0; l < m.b; ++l) {
            if (l == j) continue;
            if (rep.block_partial[l])
                need = std::max(need, std::llabs(rep.integral_part[j] - rep.integral_part[l]));
            else
                need = std::max(need, rep.integral_part[j] - m.block_size[l]);
        }
    }
    for (int j = 0; j < m.b; ++j)
        for (int i : rep.partial_classes)
            need = std::max(need, m.class_size[i] - rep.integral_part[j]);
    for (int j = 0; j < m.b; ++j)
        for (int i = 0; i < m.r; ++i) {
            if (rep.status[i][j] != CellStatus::Integral) continue;
            for (int l = 0; l < m.b; ++l)
                if (l != j)
                    need = std::max(need, m.block_size[j] - m.class_size[i] -
                                              rep.integral_part[l]);
        }
    return double(std::max(need, 0LL));
}

// --------------------------------------------------------- internalization

inline long long edges_of_complete_partition(const CellMatrix& m) {
    long long e = 0;
    for (int j = 0; j < m.b; ++j)
        for (int l = j + 1; l < m.b; ++l) {
            long long cross = m.block_size[j] * m.block_size[l];
            for (int i = 0; i < m.r; ++i) cross -= m.cell[i][j] * m.cell[i][l];
            e += cross;
        }
    return e;
}

// Moves every partial class wholly into one of the blocks it meets. The
// canonical choice maximizes e(K[result]) on the complete host, ties to the
// lowest block index; an explicit per-class choice may override.
inline VertexPartition internalize(const VertexPartition& vp, const PartSizes& ps,
                                   const std::map<int, int>& choice = {}) {
    VertexPartition out = vp;
    CellMatrix m = cells_from(vp, ps);
    auto rep = classify(m);
    for (int i : rep.partial_classes) {
        int target = -1;
        auto it = choice.find(i);
        if (it != choice.end()) {
            target = it->second;
            if (target < 0 || target >= m.b || m.cell[i][target] == 0)
                throw Error(Errc::InvalidPartition,
                            "explicit internalization target holds no vertex of the class");
        } else {
            long long best = -1;
            for (int j = 0; j < m.b; ++j) {
                if (m.cell[i][j] == 0) continue;
                CellMatrix trial = m;
                for (int l = 0; l < m.b; ++l) trial.cell[i][l] = 0;
                trial.cell[i][j] = m.class_size[i];
                trial.recompute_sums();
                long long e = edges_of_complete_partition(trial);
                if (e > best) {
                    best = e;
                    target = j;
                }
            }
        }
        for (int l = 0; l < m.b; ++l) m.cell[i][l] = 0;
        m.cell[i][target] = m.class_size[i];
        m.recompute_sums();
        for (int& blk : out.block_of[i]) blk = target;
    }
    return out;
}

// --------------------------------------------------------- (X,eps)-stable

// Holds iff |X| <= eps * n_{t-1}, G - X is (eps * n_{t-1})-close to
// K[vp] - X, and the restriction of vp to V \ X is stable.
inline StabilityVerdict is_x_eps_stable(const MultipartiteGraph& g, const VertexPartition& vp,
                                        const Bits& x, double eps) {
    const PartSizes& ps = g.parts();
    check_vertex_partition(vp, ps);
    int t = vp.num_blocks + 1;
    if (ps.r() < t - 1) throw Error(Errc::InvalidArity, "fewer classes than blocks");
    double cap = eps * ps.nth(t - 1);
    const double guard = 1e-9;
    if (x.count() > cap * (1 + guard) + guard)
        return StabilityVerdict::fail(StabilityViolation::XTooLarge, -1, -1, -1,
                                      "|X| = " + std::to_string(x.count()) + " exceeds eps*n_(t-1)");
    MultipartiteGraph k = complete_by_partition(ps, vp);
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (x.test(v)) continue;
        Bits a = g.row(v), b = k.row(v);
        a.subtract(x);
        b.subtract(x);
        long long diff = a.count() + b.count() - 2 * a.and_count(b);
        if (diff > cap * (1 + guard) + guard)
            return StabilityVerdict::fail(StabilityViolation::NotClose, g.class_of(v), -1, -1,
                                          "vertex differs in " + std::to_string(diff) +
                                              " neighbours against eps*n_(t-1)");
    }
    return is_stable(cells_excluding(vp, ps, &x));
}

// ----------------------------------------------------------- stabilization

struct StabilizeResult {
    Bits removed;              // over the host's global vertex order
    VertexPartition partition; // unchanged assignment; restriction implied by `removed`
};

namespace detail {

struct TrimState {
    const PartSizes* ps;
    const VertexPartition* vp;
    std::vector<int> start;
    Bits removed;
    CellMatrix m;

    TrimState(const VertexPartition& v, const PartSizes& p, const Bits* premask)
        : ps(&p), vp(&v), start(class_starts(p)), removed(int(p.total())) {
        if (premask) removed = *premask;
        m = cells_excluding(v, p, &removed);
    }

    // removes the highest-offset surviving vertex of class i lying in block j
    bool remove_one(int i, int j) {
        for (int o = ps->sizes[i] - 1; o >= 0; --o) {
            int gidx = start[i] + o;
            if (removed.test(gidx) || vp->block_of[i][o] != j) continue;
            removed.set(gidx);
            m.cell[i][j] -= 1;
            m.class_size[i] -= 1;
            m.block_size[j] -= 1;
            return true;
        }
        return false;
    }

    // largest cell in block j among classes with the given status
    int pick_class(int j, CellStatus want) const {
        auto rep = classify(m);
        long long best = 0;
        int who = -1;
        for (int i = 0; i < m.r; ++i)
            if (rep.status[i][j] == want && m.cell[i][j] > best) {
                best = m.cell[i][j];
                who = i;
            }
        return who;
    }
};

}  // namespace detail

// Trims an eps-stable partition to an exactly stable one by removing at most
// 4*t*r*eps vertices: equalize partial-block integral parts to the common
// minimum m, cap partial classes at m, enforce the removal bound on partial
// blocks, then shave oversized integral blocks. A bounded repair loop mops
// up leftover violations; the postcondition is verified on every call.
inline StabilizeResult stabilize_masked(const VertexPartition& vp, const PartSizes& ps,
                                        double eps, const Bits* premask, int t_hint = -1) {
    if (eps < 0) throw Error(Errc::PreconditionViolated, "eps must be non-negative");
    detail::TrimState st(vp, ps, premask);
    int t = t_hint > 0 ? t_hint : vp.num_blocks + 1;
    int r = ps.r();
    long long budget = (long long)std::ceil(4.0 * t * r * eps);

    Bits base = st.removed;
    auto removals = [&]() {
        return st.removed.count() - base.count();
    };

    if (!is_stable(st.m).holds) {
        if (!is_eps_stable(st.m, eps).holds)
            throw Error(Errc::PreconditionViolated, "input partition is not eps-stable");

        auto rep = classify(st.m);
        long long m_target = std::numeric_limits<long long>::max();
        for (int j = 0; j < st.m.b; ++j)
            m_target = std::min(m_target, rep.block_partial[j] ? rep.integral_part[j]
                                                               : st.m.block_size[j]);
        if (m_target <= 0)
            throw Error(Errc::PreconditionViolated,
                        "a block has empty integral part; classes of the refinement too small");

        // partial-block integral parts down to the common minimum
        for (int j = 0; j < st.m.b; ++j) {
            while (true) {
                auto r2 = classify(st.m);
                if (!r2.block_partial[j] || r2.integral_part[j] <= m_target) break;
                int i = st.pick_class(j, CellStatus::Integral);
                if (i < 0 || !st.remove_one(i, j)) break;
            }
        }
        // partial classes of V down to m
        while (true) {
            auto r2 = classify(st.m);
            int cls = -1, blk = -1;
            long long cell = 0;
            for (int i : r2.partial_classes)
                if (st.m.class_size[i] > m_target)
                    for (int j = 0; j < st.m.b; ++j)
                        if (r2.status[i][j] == CellStatus::Partial && st.m.cell[i][j] > cell) {
                            cell = st.m.cell[i][j];
                            cls = i;
                            blk = j;
                        }
            if (cls < 0) break;
            st.remove_one(cls, blk);
        }
        // removal bound inside partial blocks: trim partial parts
        for (int j = 0; j < st.m.b; ++j) {
            while (true) {
                auto r2 = classify(st.m);
                if (!r2.block_partial[j]) break;
                long long qmin = std::numeric_limits<long long>::max();
                for (int i = 0; i < st.m.r; ++i)
                    if (r2.status[i][j] == CellStatus::Integral)
                        qmin = std::min(qmin, st.m.class_size[i]);
                if (qmin == std::numeric_limits<long long>::max()) break;
                if (st.m.block_size[j] - qmin <= m_target) break;
                int i = st.pick_class(j, CellStatus::Partial);
                if (i < 0 || !st.remove_one(i, j)) break;
            }
        }
        // integral blocks: enforce the removal bound directly
        for (int j = 0; j < st.m.b; ++j) {
            while (true) {
                auto r2 = classify(st.m);
                if (r2.block_partial[j]) break;
                long long qmin = std::numeric_limits<long long>::max();
                int nclasses = 0;
                for (int i = 0; i < st.m.r; ++i)
                    if (r2.status[i][j] == CellStatus::Integral) {
                        qmin = std::min(qmin, st.m.class_size[i]);
                        ++nclasses;
                    }
                if (nclasses <= 1) break;
                if (st.m.block_size[j] - qmin <= m_target) break;
                // remove from the largest class that is not the smallest one
                long long best = 0;
                int who = -1;
                for (int i = 0; i < st.m.r; ++i)
                    if (r2.status[i][j] == CellStatus::Integral && st.m.class_size[i] > qmin &&
                        st.m.cell[i][j] > best) {
                        best = st.m.cell[i][j];
                        who = i;
                    }
                if (who < 0 || !st.remove_one(who, j)) break;
            }
        }
        // bounded repair for anything the recipe left behind
        for (long long guard = 0; guard < 4 * (long long)ps.total() + 8; ++guard) {
            auto verdict = is_stable(st.m);
            if (verdict.holds) break;
            auto r2 = classify(st.m);
            bool acted = false;
            switch (verdict.violated) {
                case StabilityViolation::EqualPartialIntegralParts: {
                    int j = r2.integral_part[verdict.block_a] > r2.integral_part[verdict.block_b]
                                ? verdict.block_a
                                : verdict.block_b;
                    int i = st.pick_class(j, CellStatus::Integral);
                    acted = i >= 0 && st.remove_one(i, j);
                    break;
                }
                case StabilityViolation::PartialLEIntegralClass: {
                    int i = st.pick_class(verdict.block_a, CellStatus::Integral);
                    acted = i >= 0 && st.remove_one(i, verdict.block_a);
                    break;
                }
                case StabilityViolation::IntegralPartGEPartialV: {
                    int i = verdict.class_a;
                    long long cell = 0;
                    int blk = -1;
                    for (int j = 0; j < st.m.b; ++j)
                        if (r2.status[i][j] == CellStatus::Partial && st.m.cell[i][j] > cell) {
                            cell = st.m.cell[i][j];
                            blk = j;
                        }
                    acted = blk >= 0 && st.remove_one(i, blk);
                    break;
                }
                case StabilityViolation::RemovalBound: {
                    int j = verdict.block_a;
                    int i = st.pick_class(j, CellStatus::Partial);
                    if (i < 0) {
                        long long best = 0;
                        for (int c = 0; c < st.m.r; ++c)
                            if (c != verdict.class_a &&
                                r2.status[c][j] == CellStatus::Integral && st.m.cell[c][j] > best) {
                                best = st.m.cell[c][j];
                                i = c;
                            }
                    }
                    acted = i >= 0 && st.remove_one(i, j);
                    break;
                }
                default:
                    break;
            }
            if (!acted) break;
        }
    }

    Bits out = st.removed;
    out.subtract(base);
    if (!is_stable(st.m).holds || removals() > budget)
        throw Error(Errc::PreconditionViolated,
                    "cannot reach a stable restriction within the 4*t*r*eps budget; "
                    "refinement classes too small for the given eps");
    StabilizeResult res;
    res.removed = out;
    res.partition = vp;
    return res;
}

inline StabilizeResult stabilize(const VertexPartition& vp, const PartSizes& ps, double eps) {
    return stabilize_masked(vp, ps, eps, nullptr);
}

// ------------------------------------------------- exhaustive enumeration

namespace detail {

// Visits every partition of the host vertices into at most `maxb` blocks,
// one representative per block-permutation orbit (restricted growth).
template <class F>
void for_each_vertex_partition(const PartSizes& ps, int maxb, F&& visit) {
    int n = int(ps.total());
    std::vector<int> label(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == n) {
            visit(std::as_const(label), used);
            return;
        }
        int hi = std::min(used + 1, maxb);
        for (int b2 = 0; b2 < hi; ++b2) {
            label[pos] = b2;
            rec(pos + 1, std::max(used, b2 + 1));
        }
    };
    if (n == 0) return;
    rec(0, 0);
}

inline VertexPartition partition_from_labels(const PartSizes& ps, const std::vector<int>& label,
                                             int num_blocks) {
    VertexPartition vp = make_vertex_partition(ps, num_blocks);
    auto start = class_starts(ps);
    for (int i = 0; i < ps.r(); ++i)
        for (int o = 0; o < ps.sizes[i]; ++o) vp.block_of[i][o] = label[start[i] + o];
    return vp;
}

}  // namespace detail

// All vertex (t-1)-partitions, up to block permutation, whose induced
// complete (t-1)-partite graph attains f(n_1,...,n_r,1,t).
inline std::vector<VertexPartition> enumerate_extremal_vertex_partitions(const PartSizes& ps,
                                                                         int t) {
    if (ps.r() < t) throw Error(Errc::InvalidArity, "need r >= t");
    if (ps.total() > 14)
        throw Error(Errc::SizeLimit, "exhaustive vertex-partition sweep capped at 14 vertices");
    long long f = compute_f(ps, 1, t, false).value;
    std::vector<VertexPartition> out;
    detail::for_each_vertex_partition(ps, t - 1, [&](const std::vector<int>& label, int) {
        VertexPartition vp = detail::partition_from_labels(ps, label, t - 1);
        if (edges_of_complete_partition(cells_from(vp, ps)) == f)
            out.push_back(canonicalized(vp));
    });
    return out;
}

struct CharacterizationReport {
    bool match = true;
    long long partitions_checked = 0;
    long long extremal_count = 0;            // e(K[vp]) = f
    long long characterized_count = 0;       // stable and internalization extremal
    std::vector<VertexPartition> only_extremal;      // in A but not B
    std::vector<VertexPartition> only_characterized; // in B but not A
};

// Exhaustively compares { extremal vertex partitions } against
// { stable partitions whose internalization is extremal }.
inline CharacterizationReport verify_characterization(const PartSizes& ps, int t) {
    if (ps.r() < t) throw Error(Errc::InvalidArity, "need r >= t");
    if (ps.total() > 14)
        throw Error(Errc::SizeLimit, "exhaustive vertex-partition sweep capped at 14 vertices");
    long long f = compute_f(ps, 1, t, false).value;
    CharacterizationReport rep;
    detail::for_each_vertex_partition(ps, t - 1, [&](const std::vector<int>& label, int) {
        VertexPartition vp = detail::partition_from_labels(ps, label, t - 1);
        rep.partitions_checked += 1;
        bool in_a = edges_of_complete_partition(cells_from(vp, ps)) == f;
        bool in_b = false;
        if (is_stable(vp, ps).holds) {
            VertexPartition internal = internalize(vp, ps);
            in_b = edges_of_complete_partition(cells_from(internal, ps)) == f;
        }
        rep.extremal_count += in_a;
        rep.characterized_count += in_b;
        if (in_a != in_b) {
            rep.match = false;
            auto& side = in_a ? rep.only_extremal : rep.only_characterized;
            if (side.size() < 10) side.push_back(canonicalized(vp));
        }
    });
    return rep;
}

// ---------------------------------------------------------------- recovery

struct RecoveryResult {
    VertexPartition partition;
    Bits removed;
    double epsilon = 0;
    std::vector<std::vector<int>> per_vertex_closeness;  // [class][offset]; -1 for removed
    bool certified = false;
    std::string failure;  // empty when certified

    // diagnostics
    std::vector<int> layer_sizes;
    std::vector<int> small_classes;
    double eps_star = 0;
    int stabilize_removed = 0;
    int outliers_folded = 0;
};

// Recovers an (X, eps)-stable (t-1)-partition from a K_t-free graph:
// symmetrize every class, drop classes below xi * n_{t-1} into X, peel
// maximum-degree neighborhoods into at most t-1 layers, pull the blocks back
// to the original graph by fewest-original-neighbour assignment, trim to a
// stable restriction, then fold closeness outliers into X while that lowers
// the certified eps.
inline RecoveryResult recover_partition(const MultipartiteGraph& g, int t, double xi = 0.05) {
    if (t < 3) throw Error(Errc::InvalidArity, "t must be at least 3");
    const PartSizes& ps = g.parts();
    if (ps.r() < t - 1) throw Error(Errc::InvalidArity, "fewer classes than t-1");
    if (contains_clique(g, t))
        throw Error(Errc::NotKtFree, "input graph contains a K_t");

    RecoveryResult res;
    int n = g.num_vertices();
    int blocks = t - 1;
    long long n_t1 = ps.nth(t - 1);

    MultipartiteGraph sym = g;
    for (int i = 0; i < ps.r(); ++i) sym = symmetrize_class(sym, i);

    Bits x(n);
    for (int i = 0; i < ps.r(); ++i)
        if (ps.sizes[i] < xi * n_t1) {
            res.small_classes.push_back(i);
            for (int v = g.class_begin(i); v < g.class_end(i); ++v) x.set(v);
        }

    // peel: next layer = neighbourhood of a maximum-degree vertex
    std::vector<Bits> layers;
    Bits alive = g.full_mask();
    alive.subtract(x);
    while (alive.any()) {
        if (int(layers.size()) == blocks)
            throw Error(Errc::PeelOverflow,
                        "peeling needs more than t-1 layers; input too far from extremal");
        int v = -1, vd = -1;
        alive.for_each([&](int u) {
            int d = sym.row(u).and_count(alive);
            if (d > vd) {
                vd = d;
                v = u;
            }
        });
        Bits next = alive & sym.row(v);
        Bits layer = alive;
        layer.subtract(next);
        layers.push_back(layer);
        alive = next;
    }
    while (int(layers.size()) < blocks) layers.push_back(Bits(n));
    for (const auto& l : layers) res.layer_sizes.push_back(l.count());

    // pull back: each vertex goes where it has the fewest original
    // neighbours; the symmetrized layer wins ties
    VertexPartition vp = make_vertex_partition(ps, blocks);
    for (int v = 0; v < n; ++v) {
        int home = -1;
        for (int j = 0; j < blocks; ++j)
            if (layers[j].test(v)) home = j;
        int best = -1;
        long long bestc = std::numeric_limits<long long>::max();
        for (int j = 0; j < blocks; ++j) {
            long long c = g.row(v).and_count(layers[j]);
            if (c < bestc || (c == bestc && j == home)) {
                bestc = c;
                best = j;
            }
        }
        vp.block_of[g.class_of(v)][g.offset_of(v)] = best;
    }
    res.partition = vp;

    // trim the restriction to exactly stable
    auto slack = least_stability_slack(cells_excluding(vp, ps, &x));
    if (slack) {
        res.eps_star = *slack;
        try {
            auto trimmed = stabilize_masked(vp, ps, *slack, &x, t);
            res.stabilize_removed = trimmed.removed.count();
            x |= trimmed.removed;
        } catch (const Error& e) {
            res.failure = e.what();
        }
    } else {
        res.failure = "restricted partition is not 1-partial";
    }

    // certification: per-vertex closeness against K[vp], folding the worst
    // survivors into X while that lowers the bound
    MultipartiteGraph k = complete_by_partition(ps, vp);
    auto survivor_closeness = [&](const Bits& mask) {
        std::vector<long long> out(n, -1);
        for (int v = 0; v < n; ++v) {
            if (mask.test(v)) continue;
            Bits a = g.row(v), b2 = k.row(v);
            a.subtract(mask);
            b2.subtract(mask);
            out[v] = a.count() + b2.count() - 2 * a.and_count(b2);
        }
        return out;
    };

    Bits best_x = x;
    double best_eps = std::numeric_limits<double>::infinity();
    bool best_stable = false;
    Bits cur = x;
    for (int folded = 0;; ++folded) {
        auto close = survivor_closeness(cur);
        long long worst = 0;
        int worst_v = -1;
        for (int v = 0; v < n; ++v)
            if (close[v] > worst) {
                worst = close[v];
                worst_v = v;
            }
        double eps_here = std::max<double>(cur.count(), worst) / double(n_t1);
        bool stable_here = is_stable(cells_excluding(vp, ps, &cur)).holds;
        if (stable_here && eps_here < best_eps) {
            best_eps = eps_here;
            best_x = cur;
            best_stable = true;
            res.outliers_folded = folded;
        }
        if (!best_stable && folded == 0) best_eps = eps_here;  // degenerate report
        if (worst_v < 0 || cur.count() + 1 >= worst) break;
        cur.set(worst_v);
    }

    res.removed = best_x;
    res.epsilon = best_eps;
    auto close = survivor_closeness(best_x);
    res.per_vertex_closeness.assign(ps.r(), {});
    for (int i = 0; i < ps.r(); ++i)
        res.per_vertex_closeness[i].assign(ps.sizes[i], -1);
    for (int v = 0; v < n; ++v)
        if (close[v] >= 0) res.per_vertex_closeness[g.class_of(v)][g.offset_of(v)] = int(close[v]);

    auto verdict = is_x_eps_stable(g, vp, best_x, best_eps);
    res.certified = verdict.holds && std::isfinite(best_eps);
    if (!res.certified && res.failure.empty())
        res.failure = std::string("certification failed: ") + violation_name(verdict.violated) +
                      (verdict.detail.empty() ? "" : " (" + verdict.detail + ")");
    return res;
}

}  // namespace mpturan
