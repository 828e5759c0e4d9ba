#include "tppc/epcc.hpp"
#include "tppc/correlator.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace tppc {

std::vector<ErrorPattern> make_run_targets(int l_max) {
    std::vector<ErrorPattern> t;
    for (int i = 1; i <= l_max; ++i)
        t.push_back({i, i, Gf2Poly((std::uint64_t(1) << i) - 1)});
    return t;
}

bool support_alternates(std::uint32_t word, int pos, int len) {
    for (int t = 1; t < len; ++t) {
        bool a = (word >> (pos + t - 1)) & 1, b = (word >> (pos + t)) & 1;
        if (a == b) return false;
    }
    return true;
}

namespace {

// lexicographic comparison of interior coefficient vectors (c_1..c_{p-1})
bool lex_less(Gf2Poly a, Gf2Poly b) {
    int p = a.degree();
    for (int i = 1; i < p; ++i)
        if (a.coeff(i) != b.coeff(i)) return !a.coeff(i);
    return false;
}

bool sets_ok(Gf2Poly g, const std::vector<ErrorPattern>& targets, int l_T) {
    std::map<std::uint64_t, int> owner;   // syndrome -> type
    for (const auto& t : targets) {
        Gf2Poly s = poly_mod(t.poly, g);
        for (int k = 0; k < l_T; ++k) {
            if (s.is_zero()) return false;                    // undetectable target
            auto it = owner.find(s.bits);
            if (it != owner.end() && it->second != t.type) return false;
            owner.emplace(s.bits, t.type);
            s = poly_mod(Gf2Poly(s.bits << 1), g);
        }
    }
    return true;
}

} // namespace

EpccCode EpccCode::search_generator(const std::vector<ErrorPattern>& targets, int p_max, int l_T) {
    if (targets.empty()) throw std::invalid_argument("no targets");
    for (const auto& t : targets)
        if (t.length > l_T) throw std::invalid_argument("target longer than l_T");
    for (int p = 1; p <= p_max; ++p) {
        std::optional<Gf2Poly> best;
        for (std::uint64_t mid = 0; mid < (std::uint64_t(1) << (p - 1)); ++mid) {
            Gf2Poly g(1 | (mid << 1) | (std::uint64_t(1) << p));
            if (poly_order(g) != l_T) continue;   // codeword length is the period of g
            if (!sets_ok(g, targets, l_T)) continue;
            if (!best || lex_less(g, *best)) best = g;
        }
        if (best) return from_generator(*best, targets, l_T);
    }
    throw std::runtime_error("no qualifying generator up to p_max");
}

EpccCode EpccCode::from_generator(Gf2Poly g, const std::vector<ErrorPattern>& targets, int l_T) {
    EpccCode c;
    c.g_ = g;
    c.p_ = g.degree();
    c.l_T_ = l_T;
    c.targets_ = targets;
    c.build_tables();
    return c;
}

void EpccCode::build_tables() {
    if (p_ < 1 || p_ > 16) throw std::invalid_argument("parity count out of range");
    synd_.assign(targets_.size(), {});
    periods_.assign(targets_.size(), 0);
    table_.assign(std::size_t(1) << p_, {});
    std::vector<int> owner(std::size_t(1) << p_, 0);
    for (std::size_t ti = 0; ti < targets_.size(); ++ti) {
        auto& seq = synd_[ti];
        Gf2Poly s = poly_mod(targets_[ti].poly, g_);
        for (int k = 0; k < l_T_; ++k) {
            seq.push_back(std::uint32_t(s.bits));
            s = poly_mod(Gf2Poly(s.bits << 1), g_);
        }
        for (int k = 0; k < l_T_; ++k) {
            std::uint32_t v = seq[k];
            if (v == 0) throw std::runtime_error("target maps to zero syndrome");
            if (owner[v] && owner[v] != targets_[ti].type)
                throw std::runtime_error("syndrome sets not disjoint");
            owner[v] = targets_[ti].type;
            table_[v].push_back({targets_[ti].type, k});
        }
        // smallest P with s_{k+P} = s_k; divides l_T since ord(g) = l_T
        for (int P = 1; P <= l_T_; ++P) {
            bool ok = true;
            for (int k = 0; k < l_T_ && ok; ++k) ok = seq[(k + P) % l_T_] == seq[k];
            if (ok) { periods_[ti] = P; break; }
        }
    }
}

std::uint32_t EpccCode::signature(std::uint32_t block) const {
    if (l_T_ < 32 && (block >> l_T_) != 0)
        throw std::invalid_argument("block wider than codeword length");
    return std::uint32_t(poly_mod(Gf2Poly(block), g_).bits);
}

std::uint32_t EpccCode::solve_parity(std::uint32_t data_bits, std::uint32_t target_sig) const {
    int kk = k();
    assert((data_bits >> kk) == 0);
    std::uint64_t u = signature(data_bits) ^ target_sig;
    // multiply by x^{-k} mod g: g(0)=1 so each backward step is exact
    for (int t = 0; t < kk; ++t) {
        if (u & 1) u ^= g_.bits;
        u >>= 1;
    }
    std::uint32_t block = data_bits | (std::uint32_t(u) << kk);
    assert(signature(block) == target_sig);
    return block;
}

SingleDecodeResult EpccCode::single_error_decode(std::uint32_t syndrome, std::uint32_t support,
                                                 const ReliabilityMatrix* rel) const {
    SingleDecodeResult r;
    if (syndrome == 0) throw std::invalid_argument("zero syndrome has no error");
    const auto& entries = table_[syndrome];
    r.recognized = !entries.empty();
    for (auto [type, pos] : entries) {
        int len = targets_[type - 1].length;
        if (pos + len > l_T_) continue;                       // channel events do not wrap
        if (!support_alternates(support, pos, len)) continue;
        double metric = 0.0;
        if (rel) {
            metric = rel->entry(type, pos);
            if (metric <= kNegInf / 2) continue;
        }
        r.cands.push_back({type, pos, metric});
    }
    std::sort(r.cands.begin(), r.cands.end(), [rel](const auto& a, const auto& b) {
        if (rel && a.metric != b.metric) return a.metric > b.metric;
        if (a.pos != b.pos) return a.pos < b.pos;
        return a.type < b.type;
    });
    return r;
}

std::vector<ListDecodeCandidate> EpccCode::list_decode(std::uint32_t target_sig,
                                                       std::uint32_t ml_block,
                                                       const ReliabilityMatrix* rel,
                                                       int max_tests, int e_free) const {
    if (max_tests < 1) throw std::invalid_argument("max_tests < 1");
    // pool of single patterns the test-word combinations draw from
    struct Single { int type, pos; double metric; };
    std::vector<Single> pool;
    for (int type = 1; type <= l_max(); ++type) {
        int len = targets_[type - 1].length;
        for (int pos = 0; pos + len <= l_T_; ++pos) {
            if (rel) {
                double v = rel->entry(type, pos);
                if (v > kNegInf / 2) pool.push_back({type, pos, v});
            } else if (support_alternates(ml_block, pos, len)) {
                pool.push_back({type, pos, 0.0});
            }
        }
    }
    std::sort(pool.begin(), pool.end(), [rel](const Single& a, const Single& b) {
        if (rel && a.metric != b.metric) return a.metric > b.metric;
        if (a.pos != b.pos) return a.pos < b.pos;
        return a.type < b.type;
    });
    if (pool.size() > 16) pool.resize(16);

    // events independent only when the clean gap between their runs exceeds e_free
    auto gap_ok = [&](int t1, int p1, int t2, int p2) {
        int e1 = p1 + targets_[t1 - 1].length, e2 = p2 + targets_[t2 - 1].length;
        int gap = (p2 >= e1) ? p2 - e1 : (p1 >= e2 ? p1 - e2 : -1);
        return gap > e_free;
    };

    // test words: ml word, then single- and double-pattern combinations
    struct Combo { std::vector<int> ids; double metric; };
    std::vector<Combo> combos{{{}, 0.0}};
    for (int i = 0; i < int(pool.size()) && int(combos.size()) < max_tests; ++i)
        combos.push_back({{i}, pool[i].metric});
    for (int i = 0; i < int(pool.size()) && int(combos.size()) < max_tests; ++i)
        for (int j = i + 1; j < int(pool.size()) && int(combos.size()) < max_tests; ++j) {
            if (!gap_ok(pool[i].type, pool[i].pos, pool[j].type, pool[j].pos)) continue;
            combos.push_back({{i, j}, pool[i].metric + pool[j].metric});
        }

    std::map<std::uint32_t, double> found;
    auto offer = [&](std::uint32_t block, double lik) {
        auto it = found.find(block);
        if (it == found.end()) found.emplace(block, lik);
        else it->second = std::max(it->second, lik);
    };
    for (const auto& cb : combos) {
        std::uint32_t w = ml_block;
        for (int id : cb.ids) w ^= pattern_mask(pool[id].type, pool[id].pos);
        std::uint32_t delta = target_sig ^ signature(w);
        if (delta == 0) {
            offer(w, cb.metric);
            continue;
        }
        auto sd = single_error_decode(delta, w, rel);
        for (const auto& c : sd.cands) {
            bool clear = true;
            for (int id : cb.ids)
                if (!gap_ok(pool[id].type, pool[id].pos, c.type, c.pos)) { clear = false; break; }
            if (!clear) continue;
            offer(w ^ pattern_mask(c.type, c.pos), cb.metric + c.metric);
        }
    }
    std::vector<ListDecodeCandidate> out;
    for (auto [block, lik] : found) {
        assert(signature(block) == target_sig);
        out.push_back({block, lik});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.loglik != b.loglik) return a.loglik > b.loglik;
        return a.block < b.block;
    });
    return out;
}

void EpccCode::export_syndrome_table(std::ostream& os) const {
    char buf[32];
    int digits = (p_ + 3) / 4;
    for (std::uint32_t v = 0; v < table_.size(); ++v)
        for (auto [type, pos] : table_[v]) {
            std::snprintf(buf, sizeof buf, "%0*x %d %d", digits, v, type, pos);
            os << buf << '\n';
        }
}

} // namespace tppc
