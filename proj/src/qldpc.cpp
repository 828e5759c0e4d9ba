#include "tppc/qldpc.hpp"
#include "tppc/opcount.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tppc {

QcLdpcCode::QcLdpcCode(std::shared_ptr<const FieldContext> f, int rows_b, int cols_b,
                       int b, std::vector<std::vector<int>> shifts,
                       std::vector<std::vector<std::uint16_t>> labels, int w)
    : f_(std::move(f)), rows_b_(rows_b), cols_b_(cols_b), b_(b), w_(w),
      shifts_(std::move(shifts)), labels_(std::move(labels)) {
    if (rows_b_ < 1 || cols_b_ < 1 || b_ < 1)
        throw std::invalid_argument("ldpc: bad block dimensions");
    if (int(shifts_.size()) != rows_b_ || int(labels_.size()) != rows_b_)
        throw std::invalid_argument("ldpc: table height mismatch");
    row_adj_.resize(std::size_t(m()));
    col_adj_.resize(std::size_t(n()));
    for (int i = 0; i < rows_b_; ++i) {
        if (int(shifts_[i].size()) != cols_b_ || int(labels_[i].size()) != cols_b_)
            throw std::invalid_argument("ldpc: table width mismatch");
        for (int j = 0; j < cols_b_; ++j) {
            int s = shifts_[i][j];
            std::uint16_t l = labels_[i][j];
            if (s < 0) {
                if (l) throw std::invalid_argument("ldpc: label on absent block");
                continue;
            }
            if (s >= b_ || !l || l >= f_->q())
                throw std::invalid_argument("ldpc: bad shift or label");
            for (int u = 0; u < b_; ++u) {
                int r = i * b_ + u, c = j * b_ + (u + s) % b_;
                row_adj_[std::size_t(r)].push_back({c, l});
                col_adj_[std::size_t(c)].push_back({r, l});
            }
        }
    }
}

bool QcLdpcCode::check_word(std::span<const std::uint16_t> word) const {
    if (int(word.size()) != n()) throw std::invalid_argument("ldpc: word length");
    for (const auto& row : row_adj_) {
        std::uint16_t acc = 0;
        for (auto [v, l] : row) acc ^= f_->mul(l, word[std::size_t(v)]);
        if (acc) return false;
    }
    return true;
}

int QcLdpcCode::girth() const {
    const int nv = n(), nc = m(), N = nv + nc;
    auto adj = std::vector<std::vector<int>>(std::size_t(N));
    for (int v = 0; v < nv; ++v)
        for (auto [r, l] : col_adj_[std::size_t(v)]) {
            (void)l;
            adj[std::size_t(v)].push_back(nv + r);
            adj[std::size_t(nv + r)].push_back(v);
        }
    int best = INT_MAX;
    std::vector<int> dist(std::size_t(N), 0), par(std::size_t(N), 0), stamp(std::size_t(N), -1);
    std::queue<int> qq;
    // every cycle passes a variable node, so variable roots find the girth
    for (int root = 0; root < nv; ++root) {
        stamp[std::size_t(root)] = root;
        dist[std::size_t(root)] = 0;
        par[std::size_t(root)] = -1;
        qq.push(root);
        while (!qq.empty()) {
            int u = qq.front();
            qq.pop();
            if (2 * dist[std::size_t(u)] >= best) continue;
            for (int nb : adj[std::size_t(u)]) {
                if (stamp[std::size_t(nb)] != root) {
                    stamp[std::size_t(nb)] = root;
                    dist[std::size_t(nb)] = dist[std::size_t(u)] + 1;
                    par[std::size_t(nb)] = u;
                    qq.push(nb);
                } else if (par[std::size_t(u)] != nb) {
                    best = std::min(best, dist[std::size_t(u)] + dist[std::size_t(nb)] + 1);
                }
            }
        }
    }
    return best;
}

QcLdpcCode peg_qc_construct(std::shared_ptr<const FieldContext> f, int rows_b,
                            int cols_b, int b, int w, std::uint64_t seed) {
    if (w < 1 || w > rows_b) throw std::invalid_argument("peg: infeasible degree sequence");
    if (cols_b <= rows_b) throw std::invalid_argument("peg: no data columns");
    const int q = f->q(), n = cols_b * b, m = rows_b * b, kb = cols_b - rows_b;
    std::mt19937_64 rng(seed);

    std::vector<std::vector<int>> shifts(std::size_t(rows_b), std::vector<int>(std::size_t(cols_b), -1));
    std::vector<std::vector<std::uint16_t>> labels(
        std::size_t(rows_b), std::vector<std::uint16_t>(std::size_t(cols_b), 0));
    auto var_nb = std::vector<std::vector<int>>(std::size_t(n));
    auto chk_nb = std::vector<std::vector<int>>(std::size_t(m));

    std::vector<int> dist(std::size_t(n + m), 0);
    std::vector<int> stamp(std::size_t(n + m), -1);
    int pass = 0;
    auto bfs = [&](int v0) {
        // distances from the column representative in the bipartite graph so far
        ++pass;
        std::queue<int> qq;
        stamp[std::size_t(v0)] = pass;
        dist[std::size_t(v0)] = 0;
        qq.push(v0);
        while (!qq.empty()) {
            int u = qq.front();
            qq.pop();
            auto visit = [&](int nb) {
                if (stamp[std::size_t(nb)] == pass) return;
                stamp[std::size_t(nb)] = pass;
                dist[std::size_t(nb)] = dist[std::size_t(u)] + 1;
                qq.push(nb);
            };
            if (u < n)
                for (int r : var_nb[std::size_t(u)]) visit(n + r);
            else
                for (int v : chk_nb[std::size_t(u - n)]) visit(v);
        }
    };

    // trailing columns form the lower-triangular parity staircase
    auto first_row = [&](int j) { return j < kb ? 0 : j - kb; };
    auto col_weight = [&](int j) { return j < kb ? w : rows_b - (j - kb); };

    // candidate checks for the next circulant of column j, best first:
    // farthest from the column representative, then lightest row, then lowest
    auto candidates = [&](int j, bool skip_short) {
        bfs(j * b);
        std::vector<std::pair<long long, int>> cs;
        for (int i = first_row(j); i < rows_b; ++i) {
            if (shifts[std::size_t(i)][std::size_t(j)] >= 0) continue;
            for (int uc = 0; uc < b; ++uc) {
                int c = i * b + uc;
                long long d = stamp[std::size_t(n + c)] == pass ? dist[std::size_t(n + c)]
                                                                : (1 << 20);
                if (skip_short && d <= 3) continue;   // would close a 4-cycle
                long long key =
                    (d << 32) - (static_cast<long long>(chk_nb[std::size_t(c)].size()) << 16) - c;
                cs.push_back({key, c});
            }
        }
        std::sort(cs.begin(), cs.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
        return cs;
    };

    auto place = [&](int j, int c) {
        int i = c / b, s = (b - c % b) % b;
        shifts[std::size_t(i)][std::size_t(j)] = s;
        for (int u = 0; u < b; ++u) {
            int r = i * b + u, t = j * b + (u + s) % b;
            var_nb[std::size_t(t)].push_back(r);
            chk_nb[std::size_t(r)].push_back(t);
        }
    };
    auto reset = [&]() {
        for (auto& row : shifts) std::fill(row.begin(), row.end(), -1);
        for (auto& l : var_nb) l.clear();
        for (auto& l : chk_nb) l.clear();
    };

    auto greedy = [&](bool skip_short) {
        for (int j = 0; j < cols_b; ++j)
            for (int e = 0; e < col_weight(j); ++e) {
                auto cs = candidates(j, skip_short);
                if (cs.empty()) return false;
                place(j, cs.front().second);
            }
        return true;
    };

    // Girth 6 is exactly "no block-row pair repeats a shift difference", so a
    // dead-ended greedy can be rescued by searching difference assignments
    // directly. Deterministic orders thrash when a pair must sweep every
    // difference exactly once; seeded random orders with rapid restarts find
    // such sweeps almost immediately whenever they exist.
    auto difference_search = [&]() {
        std::vector<char> used(std::size_t(rows_b * rows_b * b), 0);
        auto slot = [&](int i1, int i2, int s1, int s2) {
            return std::size_t((i1 * rows_b + i2) * b + ((s1 - s2) % b + b) % b);
        };
        auto pair_slot = [&](int ia, int sa, int ib, int sb) {
            return ia < ib ? slot(ia, ib, sa, sb) : slot(ib, ia, sb, sa);
        };
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::fill(used.begin(), used.end(), 0);
            for (auto& row : shifts) std::fill(row.begin(), row.end(), -1);
            long long nodes = 4000;
            auto go = [&](auto&& self, int j, int e) -> bool {
                if (j == cols_b) return true;
                if (e == col_weight(j)) return self(self, j + 1, 0);
                // the first circulant of a column is pinned: shifting a whole
                // column uniformly never changes the difference structure
                std::vector<std::pair<int, int>> cand;
                for (int i = first_row(j); i < rows_b; ++i) {
                    if (shifts[std::size_t(i)][std::size_t(j)] >= 0) continue;
                    if (e == 0)
                        cand.push_back({i, 0});
                    else
                        for (int s = 0; s < b; ++s) cand.push_back({i, s});
                }
                std::shuffle(cand.begin(), cand.end(), rng);
                for (auto [i, s] : cand) {
                    bool clash = false;
                    for (int i2 = first_row(j); i2 < rows_b && !clash; ++i2) {
                        int s2 = shifts[std::size_t(i2)][std::size_t(j)];
                        if (i2 != i && s2 >= 0) clash = used[pair_slot(i, s, i2, s2)] != 0;
                    }
                    if (clash) continue;
                    if (--nodes < 0) return false;
                    shifts[std::size_t(i)][std::size_t(j)] = s;
                    for (int i2 = first_row(j); i2 < rows_b; ++i2) {
                        int s2 = shifts[std::size_t(i2)][std::size_t(j)];
                        if (i2 != i && s2 >= 0) used[pair_slot(i, s, i2, s2)] = 1;
                    }
                    if (self(self, j, e + 1)) return true;
                    for (int i2 = first_row(j); i2 < rows_b; ++i2) {
                        int s2 = shifts[std::size_t(i2)][std::size_t(j)];
                        if (i2 != i && s2 >= 0) used[pair_slot(i, s, i2, s2)] = 0;
                    }
                    shifts[std::size_t(i)][std::size_t(j)] = -1;
                    if (nodes < 0) return false;
                }
                return false;
            };
            if (go(go, 0, 0)) return true;
        }
        return false;
    };

    if (!greedy(true)) {
        reset();
        if (!difference_search()) {
            // no 4-cycle-free arrangement found: maximize local cycle length
            reset();
            greedy(false);
        }
    }

    for (int j = 0; j < cols_b; ++j)
        for (int i = 0; i < rows_b; ++i)
            if (shifts[std::size_t(i)][std::size_t(j)] >= 0)
                labels[std::size_t(i)][std::size_t(j)] = std::uint16_t(1 + rng() % (q - 1));

    return QcLdpcCode(std::move(f), rows_b, cols_b, b, std::move(shifts), std::move(labels), w);
}

std::vector<std::uint16_t> qc_encode(const QcLdpcCode& code,
                                     std::span<const std::uint16_t> data) {
    const int b = code.b(), kb = code.cols_b() - code.rows_b();
    if (int(data.size()) != kb * b) throw std::invalid_argument("ldpc encode: data length");
    const auto& f = code.field();
    std::vector<std::uint16_t> word(std::size_t(code.n()), 0);
    std::copy(data.begin(), data.end(), word.begin());

    // each block row's diagonal circulant is the only unknown in its equations
    for (int br = 0; br < code.rows_b(); ++br) {
        const int pj = kb + br;
        const int s = code.shift(br, pj);
        const std::uint16_t h = code.label(br, pj);
        if (s < 0 || !h) throw std::logic_error("ldpc encode: parity diagonal missing");
        const std::uint16_t hinv = f.inv(h);
        for (int u = 0; u < b; ++u) {
            const int r = br * b + u;
            std::uint16_t acc = 0;
            const auto& row = code.row_adj()[std::size_t(r)];
            for (auto [v, l] : row)
                if (v / b != pj) acc ^= f.mul(l, word[std::size_t(v)]);
            word[std::size_t(pj * b + (u + s) % b)] = f.mul(hinv, acc);
            OpCount::add(row.size());
        }
    }
    return word;
}

namespace {

// unnormalized Walsh-Hadamard butterfly; self-inverse up to a factor of q,
// which the slot-0 recentring absorbs
void wht(std::vector<double>& a) {
    const int n = int(a.size());
    for (int len = 1; len < n; len <<= 1)
        for (int i = 0; i < n; i += len << 1)
            for (int j = i; j < i + len; ++j) {
                double x = a[std::size_t(j)], y = a[std::size_t(j + len)];
                a[std::size_t(j)] = x + y;
                a[std::size_t(j + len)] = x - y;
            }
}

// argmax slot; strict only when the maximum is unique
std::uint16_t hard_decision(const MlLlr& g, bool& strict) {
    int best = 0;
    int count = 1;
    for (int i = 1; i < g.q(); ++i) {
        if (g[std::size_t(i)] > g[std::size_t(best)]) {
            best = i;
            count = 1;
        } else if (g[std::size_t(i)] == g[std::size_t(best)]) {
            ++count;
        }
    }
    strict = count == 1;
    return std::uint16_t(best);
}

} // namespace

SpaResult fft_spa_decode(const QcLdpcCode& code, const std::vector<MlLlr>& channel,
                         int max_iter) {
    const int n = code.n(), m = code.m(), q = code.field().q();
    if (int(channel.size()) != n) throw std::invalid_argument("spa: channel length");
    for (const auto& g : channel)
        if (g.q() != q) throw std::invalid_argument("spa: mlLLR arity");
    const auto& f = code.field();

    // flat edge indexing, grouped by variable, with per-check edge lists
    std::vector<int> col_start(std::size_t(n) + 1, 0);
    for (int v = 0; v < n; ++v)
        col_start[std::size_t(v) + 1] =
            col_start[std::size_t(v)] + int(code.col_adj()[std::size_t(v)].size());
    const int ne = col_start[std::size_t(n)];
    std::vector<int> edge_var(std::size_t(ne), 0), edge_row(std::size_t(ne), 0);
    std::vector<std::uint16_t> edge_label(std::size_t(ne), 0);
    auto row_edges = std::vector<std::vector<int>>(std::size_t(m));
    for (int v = 0, e = 0; v < n; ++v)
        for (auto [r, l] : code.col_adj()[std::size_t(v)]) {
            edge_var[std::size_t(e)] = v;
            edge_row[std::size_t(e)] = r;
            edge_label[std::size_t(e)] = l;
            row_edges[std::size_t(r)].push_back(e);
            ++e;
        }

    // sparse priors carry hard-zero slots; inside BP those make contradictory
    // deltas annihilate the whole posterior, so clip every slot to a bounded
    // ratio below the peak before any message is formed
    constexpr double kPmfFloor = 27.631021115928547;   // -log 1e-12
    std::vector<MlLlr> ch = channel;
    for (auto& g0 : ch) {
        double mx = g0[0];
        for (int s = 1; s < q; ++s) mx = std::max(mx, g0[std::size_t(s)]);
        for (int s = 0; s < q; ++s)
            g0.v[std::size_t(s)] = std::max(g0.v[std::size_t(s)], mx - kPmfFloor);
        recenter_on_zero(g0);
    }

    SpaResult res;
    res.posterior = ch;
    res.hard.resize(std::size_t(n));
    bool all_strict = true;
    for (int v = 0; v < n; ++v) {
        bool strict = false;
        res.hard[std::size_t(v)] = hard_decision(ch[std::size_t(v)], strict);
        all_strict = all_strict && strict;
    }
    if (all_strict && code.check_word(res.hard)) {
        res.converged = true;
        res.iterations = 0;
        return res;
    }

    std::vector<MlLlr> msg_cv(std::size_t(ne), MlLlr{q}), msg_vc(std::size_t(ne), MlLlr{q});
    for (auto& g : msg_cv) std::fill(g.v.begin(), g.v.end(), 0.0);   // uniform start

    for (int iter = 1; iter <= max_iter; ++iter) {
        // variable update: channel plus the other incident check messages
        for (int v = 0; v < n; ++v)
            for (int e = col_start[std::size_t(v)]; e < col_start[std::size_t(v) + 1]; ++e) {
                MlLlr& t = msg_vc[std::size_t(e)];
                t.v = ch[std::size_t(v)].v;
                for (int e2 = col_start[std::size_t(v)]; e2 < col_start[std::size_t(v) + 1];
                     ++e2) {
                    if (e2 == e) continue;
                    for (int s = 0; s < q; ++s) t.v[std::size_t(s)] += msg_cv[std::size_t(e2)][std::size_t(s)];
                }
                recenter_on_zero(t);
            }

        // check update in the transform domain of the additive group
        std::vector<std::vector<double>> F;
        std::vector<double> g(std::size_t(q), 0.0);
        for (int r = 0; r < m; ++r) {
            const auto& E = row_edges[std::size_t(r)];
            const int d = int(E.size());
            F.assign(std::size_t(d), {});
            for (int i = 0; i < d; ++i) {
                const MlLlr& mv = msg_vc[std::size_t(E[std::size_t(i)])];
                const std::uint16_t hinv = f.inv(edge_label[std::size_t(E[std::size_t(i)])]);
                double mx = mv[0];
                for (int s = 1; s < q; ++s) mx = std::max(mx, mv[std::size_t(s)]);
                auto& p = F[std::size_t(i)];
                p.assign(std::size_t(q), 0.0);
                for (int beta = 0; beta < q; ++beta) {
                    double val = mv[f.mul(hinv, std::uint16_t(beta))];
                    if (val > kNegInf / 2) p[std::size_t(beta)] = std::exp(val - mx);
                }
                wht(p);
            }
            // leave-one-out products via prefix/suffix sweeps
            std::vector<std::vector<double>> pre(std::size_t(d) + 1), suf(std::size_t(d) + 1);
            pre[0].assign(std::size_t(q), 1.0);
            for (int i = 0; i < d; ++i) {
                pre[std::size_t(i) + 1] = pre[std::size_t(i)];
                for (int s = 0; s < q; ++s) pre[std::size_t(i) + 1][std::size_t(s)] *= F[std::size_t(i)][std::size_t(s)];
            }
            suf[std::size_t(d)].assign(std::size_t(q), 1.0);
            for (int i = d - 1; i >= 0; --i) {
                suf[std::size_t(i)] = suf[std::size_t(i) + 1];
                for (int s = 0; s < q; ++s) suf[std::size_t(i)][std::size_t(s)] *= F[std::size_t(i)][std::size_t(s)];
            }
            for (int i = 0; i < d; ++i) {
                for (int s = 0; s < q; ++s)
                    g[std::size_t(s)] = pre[std::size_t(i)][std::size_t(s)] * suf[std::size_t(i) + 1][std::size_t(s)];
                wht(g);
                const int e = E[std::size_t(i)];
                const std::uint16_t h = edge_label[std::size_t(e)];
                MlLlr& out = msg_cv[std::size_t(e)];
                for (int x = 0; x < q; ++x) {
                    double mass = g[f.mul(h, std::uint16_t(x))];
                    out.v[std::size_t(x)] = mass > 0.0 ? std::log(mass) : kNegInf;
                }
                recenter_on_zero(out);
            }
        }

        // posterior and early stop
        all_strict = true;
        for (int v = 0; v < n; ++v) {
            MlLlr& post = res.posterior[std::size_t(v)];
            post.v = ch[std::size_t(v)].v;
            for (int e = col_start[std::size_t(v)]; e < col_start[std::size_t(v) + 1]; ++e)
                for (int s = 0; s < q; ++s) post.v[std::size_t(s)] += msg_cv[std::size_t(e)][std::size_t(s)];
            recenter_on_zero(post);
            bool strict = false;
            res.hard[std::size_t(v)] = hard_decision(post, strict);
            all_strict = all_strict && strict;
        }
        res.iterations = iter;
        if (all_strict && code.check_word(res.hard)) {
            res.converged = true;
            break;
        }
    }
    return res;
}

std::string export_alist(const QcLdpcCode& code) {
    std::ostringstream os;
    os << code.cols_b() << ' ' << code.rows_b() << ' ' << code.b() << ' '
       << code.field().q() << ' ' << code.w() << '\n';
    for (int j = 0; j < code.cols_b(); ++j) {
        int d = 0;
        for (int i = 0; i < code.rows_b(); ++i)
            if (code.shift(i, j) >= 0) ++d;
        os << d;
        for (int i = 0; i < code.rows_b(); ++i)
            if (code.shift(i, j) >= 0)
                os << "  " << i << ' ' << code.shift(i, j) << ' ' << code.label(i, j);
        os << '\n';
    }
    return os.str();
}

QcLdpcCode import_alist(const std::string& text) {
    std::istringstream is(text);
    int cols_b = 0, rows_b = 0, b = 0, q = 0, w = 0;
    if (!(is >> cols_b >> rows_b >> b >> q >> w))
        throw std::invalid_argument("ldpc import: bad header");
    if (q < 2 || (q & (q - 1)) != 0) throw std::invalid_argument("ldpc import: q not 2^p");
    auto f = FieldContext::shared(std::countr_zero(unsigned(q)));
    std::vector<std::vector<int>> shifts(std::size_t(rows_b), std::vector<int>(std::size_t(cols_b), -1));
    std::vector<std::vector<std::uint16_t>> labels(
        std::size_t(rows_b), std::vector<std::uint16_t>(std::size_t(cols_b), 0));
    for (int j = 0; j < cols_b; ++j) {
        int d = 0;
        if (!(is >> d) || d < 0 || d > rows_b)
            throw std::invalid_argument("ldpc import: bad column degree");
        for (int t = 0; t < d; ++t) {
            int i = 0, s = 0, l = 0;
            if (!(is >> i >> s >> l) || i < 0 || i >= rows_b)
                throw std::invalid_argument("ldpc import: bad entry");
            shifts[std::size_t(i)][std::size_t(j)] = s;
            labels[std::size_t(i)][std::size_t(j)] = std::uint16_t(l);
        }
    }
    return QcLdpcCode(std::move(f), rows_b, cols_b, b, std::move(shifts), std::move(labels), w);
}

std::vector<std::vector<std::uint16_t>> LdpcSignatureCode::parity_rows() const {
    std::vector<std::vector<std::uint16_t>> rows(
        std::size_t(c_->m()), std::vector<std::uint16_t>(std::size_t(c_->n()), 0));
    for (int r = 0; r < c_->m(); ++r)
        for (auto [v, l] : c_->row_adj()[std::size_t(r)]) rows[std::size_t(r)][std::size_t(v)] = l;
    return rows;
}

} // namespace tppc
