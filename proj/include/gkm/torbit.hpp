#pragma once

#include "root_data.hpp"

#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace gkm {

// Letters are 0-based indices applied right-to-left: {i1, i2} acts as r_{i1} r_{i2}.
using TWord = std::vector<std::size_t>;

inline constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

inline Weight apply_word(const WeightContext& ctx, const TWord& word, Weight w) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = reflect(ctx, *it, w);
    return w;
}

inline void require_P_plus(const WeightContext& ctx, const Weight& lambda) {
    if (!is_P_plus(ctx, lambda)) throw std::domain_error("weight is not dominant integral");
}

// Elements of T.lambda within the given depth, ordered by (depth, weight).
inline std::vector<Weight> orbit(const WeightContext& ctx, const Weight& lambda, std::size_t depth) {
    require_P_plus(ctx, lambda);
    std::set<Weight> seen{lambda};
    std::vector<Weight> order{lambda};
    std::deque<Weight> queue{lambda};
    const Rational limit(static_cast<unsigned long>(depth));
    while (!queue.empty()) {
        Weight cur = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            Weight next = reflect(ctx, i, cur);
            if (depth_below(lambda, next) > limit) continue;
            if (seen.insert(next).second) {
                order.push_back(next);
                queue.push_back(std::move(next));
            }
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](const Weight& x, const Weight& y) {
        Rational dx = depth_below(lambda, x), dy = depth_below(lambda, y);
        if (dx != dy) return dx < dy;
        return x < y;
    });
    return order;
}

namespace detail {

// Level-by-level search over words; appends r_j on the left. Stops once mu's level is finished.
inline std::vector<TWord> shortest_words(const WeightContext& ctx, const Weight& lambda, const Weight& mu,
                                         std::size_t max_len, bool all) {
    std::map<Weight, std::vector<TWord>> level{{lambda, {TWord{}}}};
    std::set<Weight> seen{lambda};
    for (std::size_t len = 0;; ++len) {
        auto hit = level.find(mu);
        if (hit != level.end()) {
            auto words = hit->second;
            std::sort(words.begin(), words.end());
            if (!all) words.resize(1);
            return words;
        }
        if (len == max_len || level.empty()) return {};
        std::map<Weight, std::vector<TWord>> next;
        for (auto& [w, words] : level)
            for (std::size_t j = 0; j < ctx.rank(); ++j) {
                Weight x = reflect(ctx, j, w);
                if (seen.count(x)) continue;
                auto& slot = next[x];
                for (auto& word : words) {
                    if (!all && !slot.empty()) break;
                    TWord nw{j};
                    nw.insert(nw.end(), word.begin(), word.end());
                    slot.push_back(std::move(nw));
                }
            }
        for (auto& [w, words] : next) seen.insert(w);
        level = std::move(next);
    }
}

}  // namespace detail

// A shortest word taking lambda to mu (lexicographically least among shortest), or none within max_len.
inline std::optional<TWord> reduced_word_search(const WeightContext& ctx, const Weight& lambda, const Weight& mu,
                                                std::size_t max_len) {
    require_P_plus(ctx, lambda);
    auto words = detail::shortest_words(ctx, lambda, mu, max_len, false);
    if (words.empty()) return std::nullopt;
    return words.front();
}

// Every shortest word taking lambda to mu, sorted.
inline std::vector<TWord> all_reduced_words(const WeightContext& ctx, const Weight& lambda, const Weight& mu,
                                            std::size_t max_len) {
    require_P_plus(ctx, lambda);
    return detail::shortest_words(ctx, lambda, mu, max_len, true);
}

struct OrbitRoot {
    Weight root;                          // root part only
    std::vector<Rational> coroot;         // coefficients over the simple coroots
    std::vector<Rational> coroot_pairings;  // coroot evaluated on each simple root
    TWord origin_word;                    // real letters
    std::size_t origin_index = 0;         // root = origin_word . alpha_{origin_index}
    bool real = false;

    Rational coroot_value(const WeightContext& ctx, const Weight& w) const {
        Rational v;
        for (std::size_t k = 0; k < coroot.size(); ++k)
            if (coroot[k] != 0) v += coroot[k] * ctx.pairing(k, w);
        return v;
    }
    Weight reflect(const WeightContext& ctx, const Weight& w) const {
        return w - coroot_value(ctx, w) * root;
    }
    Rational height() const { return root.height(); }
};

// Positive roots of the form w.alpha_i (w in the Weyl group) up to the given height, ordered by (height, coefficients).
inline std::vector<OrbitRoot> positive_wpi_roots(const WeightContext& ctx, std::size_t height_bound) {
    const std::size_t n = ctx.rank();
    const Rational limit = height_bound == unbounded ? Rational(-1) : Rational(static_cast<unsigned long>(height_bound));
    std::map<std::vector<Rational>, OrbitRoot> found;
    std::deque<std::vector<Rational>> queue;
    auto pairings_of = [&](const std::vector<Rational>& coroot) {
        std::vector<Rational> out(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (coroot[k] != 0) out[j] += coroot[k] * Rational(ctx.a(k, j));
        return out;
    };
    if (height_bound >= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            OrbitRoot r;
            r.root = ctx.simple_root(i);
            r.coroot.assign(n, Rational(0));
            r.coroot[i] = 1;
            r.coroot_pairings = pairings_of(r.coroot);
            r.origin_index = i;
            r.real = ctx.is_real(i);
            found.emplace(r.root.root, r);
            queue.push_back(r.root.root);
        }
    }
    while (!queue.empty()) {
        const OrbitRoot cur = found.at(queue.front());
        queue.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
            if (!ctx.is_real(j)) continue;
            OrbitRoot nx = cur;
            Rational c = ctx.pairing(j, cur.root);
            nx.root.root[j] -= c;
            bool positive = std::all_of(nx.root.root.begin(), nx.root.root.end(), [](const Rational& q) { return q >= 0; });
            if (!positive || nx.root.is_zero()) continue;
            if (limit >= 0 && nx.root.height() > limit) continue;
            nx.coroot[j] -= cur.coroot_pairings[j];
            nx.coroot_pairings = pairings_of(nx.coroot);
            nx.origin_word.insert(nx.origin_word.begin(), j);
            auto it = found.find(nx.root.root);
            if (it != found.end()) {
                if (it->second.coroot != nx.coroot) throw std::logic_error("coroot depends on the chosen origin");
                continue;
            }
            found.emplace(nx.root.root, nx);
            queue.push_back(nx.root.root);
        }
    }
    std::vector<OrbitRoot> out;
    for (auto& [k, r] : found) out.push_back(r);
    std::stable_sort(out.begin(), out.end(), [](const OrbitRoot& x, const OrbitRoot& y) {
        if (x.height() != y.height()) return x.height() < y.height();
        return x.root.root < y.root.root;
    });
    return out;
}

struct AChain {
    Rational a;
    std::vector<Weight> weights;    // weights[0] = mu (lower end), weights.back() = nu
    std::vector<OrbitRoot> roots;   // weights[t-1] = r_{roots[t-1]} weights[t]
};

// Cached searches for dist and a-chains over one context. Not thread-safe; make one per thread.
class OrbitSearch {
public:
    explicit OrbitSearch(const WeightContext& ctx, std::size_t height_cap = unbounded) : ctx_(ctx), cap_(height_cap) {}

    // Longest chain length from nu down to mu; 0 when equal; none when no chain exists.
    std::optional<std::size_t> dist(const Weight& mu, const Weight& nu) {
        if (mu == nu) return 0;
        Weight gap = nu - mu;
        if (!gap.in_Q_plus()) return std::nullopt;
        ensure_roots(gap.height());
        return longest(nu, mu);
    }

    // mu >= nu in the chain order (mu obtained from nu by upward steps).
    bool geq(const Weight& mu, const Weight& nu) { return dist(mu, nu).has_value(); }

    std::optional<AChain> find_a_chain(const Rational& a, const Weight& mu, const Weight& nu) {
        if (a <= 0 || a > 1) throw std::invalid_argument("chain level must lie in (0,1]");
        if (mu == nu) return std::nullopt;
        Weight gap = nu - mu;
        if (!gap.in_Q_plus()) return std::nullopt;
        ensure_roots(gap.height());
        std::set<Weight> dead;
        std::vector<Weight> ws;
        std::vector<OrbitRoot> rs;
        if (!chain_dfs(a, nu, mu, dead, ws, rs)) return std::nullopt;
        AChain c;
        c.a = a;
        c.weights.assign(ws.rbegin(), ws.rend());
        c.weights.push_back(nu);
        c.roots.assign(rs.rbegin(), rs.rend());
        return c;
    }

    const std::vector<OrbitRoot>& roots_up_to(const Rational& h) {
        ensure_roots(h);
        return roots_;
    }

    const WeightContext& context() const { return ctx_; }

private:
    void ensure_roots(const Rational& h) {
        std::size_t need = static_cast<std::size_t>(to_int64(ceil_div(h)));
        if (cap_ != unbounded) need = std::min(need, cap_);
        if (have_ != unbounded && need <= have_) return;
        roots_ = positive_wpi_roots(ctx_, need);
        have_ = need;
    }

    std::optional<std::size_t> longest(const Weight& y, const Weight& mu) {
        if (y == mu) return 0;
        auto key = std::make_pair(y, mu);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Rational room = (y - mu).height();
        std::optional<std::size_t> best;
        for (auto& beta : roots_) {
            if (beta.height() > room) break;
            Rational c = beta.coroot_value(ctx_, y);
            if (c <= 0) continue;
            Weight next = y - c * beta.root;
            if (!(next - mu).in_Q_plus()) continue;
            if (auto sub = longest(next, mu)) best = std::max(best.value_or(0), *sub + 1);
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

    bool chain_dfs(const Rational& a, const Weight& y, const Weight& mu, std::set<Weight>& dead, std::vector<Weight>& ws,
                   std::vector<OrbitRoot>& rs) {
        if (y == mu) return true;
        if (dead.count(y)) return false;
        Rational room = (y - mu).height();
        for (auto& beta : roots_) {
            if (beta.height() > room) break;
            Rational c = beta.coroot_value(ctx_, y);
            if (c <= 0) continue;
            Rational ac = a * c;
            if (beta.real ? !(is_integer(ac) && ac > 0) : ac != 1) continue;
            Weight next = y - c * beta.root;
            if (!(next - mu).in_Q_plus()) continue;
            if (dist(next, y) != std::optional<std::size_t>(1)) continue;
            ws.push_back(next);
            rs.push_back(beta);
            if (chain_dfs(a, next, mu, dead, ws, rs)) return true;
            ws.pop_back();
            rs.pop_back();
        }
        dead.insert(y);
        return false;
    }

    const WeightContext& ctx_;
    std::size_t cap_;
    std::size_t have_ = unbounded;
    std::vector<OrbitRoot> roots_;
    std::map<std::pair<Weight, Weight>, std::optional<std::size_t>> memo_;
};

inline std::optional<std::size_t> dist(const WeightContext& ctx, const Weight& mu, const Weight& nu,
                                       std::size_t height_bound = unbounded) {
    OrbitSearch s(ctx, height_bound);
    return s.dist(mu, nu);
}

inline std::optional<AChain> find_a_chain(const WeightContext& ctx, const Rational& a, const Weight& mu, const Weight& nu,
                                          std::size_t height_bound = unbounded) {
    OrbitSearch s(ctx, height_bound);
    return s.find_a_chain(a, mu, nu);
}

}  // namespace gkm
