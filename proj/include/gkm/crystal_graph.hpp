#pragma once

#include "root_data.hpp"
#include "text_io.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace gkm {

// Integer or -infinity. Arithmetic with -infinity saturates.
class ExtInt {
public:
    constexpr ExtInt() = default;
    constexpr ExtInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit on purpose
    static constexpr ExtInt neg_inf() {
        ExtInt x;
        x.inf_ = true;
        return x;
    }

    constexpr bool is_neg_inf() const { return inf_; }
    constexpr bool finite() const { return !inf_; }
    constexpr std::int64_t value() const { return v_; }

    friend constexpr ExtInt operator+(ExtInt a, std::int64_t b) { return a.inf_ ? a : ExtInt(a.v_ + b); }
    friend constexpr ExtInt operator-(ExtInt a, std::int64_t b) { return a.inf_ ? a : ExtInt(a.v_ - b); }
    friend constexpr bool operator==(ExtInt a, ExtInt b) { return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_); }
    friend constexpr bool operator<(ExtInt a, ExtInt b) {
        if (a.inf_) return !b.inf_;
        if (b.inf_) return false;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(ExtInt a, ExtInt b) { return b < a; }
    friend constexpr bool operator<=(ExtInt a, ExtInt b) { return !(b < a); }
    friend constexpr bool operator>=(ExtInt a, ExtInt b) { return !(a < b); }
    friend constexpr ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }

    std::string str() const { return inf_ ? "-inf" : std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, ExtInt x) { return os << x.str(); }

private:
    std::int64_t v_ = 0;
    bool inf_ = false;
};

enum class LinkKind {
    None,     // operator gives 0
    Edge,     // operator result is the target node
    Cut,      // f is nonzero but its target lies beyond the depth limit
    Outside,  // e is nonzero but its target is not in the generated crystal
};

struct Link {
    LinkKind kind = LinkKind::None;
    std::size_t target = 0;
    bool is_edge() const { return kind == LinkKind::Edge; }
};

template <class E>
struct CrystalNode {
    E element;
    Weight wt;
    std::vector<ExtInt> eps, phi;
    std::size_t depth = 0;
    bool frontier = false;
    std::vector<Link> f, e;
};

// Crystal generated from nodes[0] by the f_i, truncated at depth_limit. The context must outlive the graph.
template <class E>
struct CrystalGraph {
    const WeightContext* ctx = nullptr;
    std::vector<CrystalNode<E>> nodes;
    std::map<E, std::size_t> index;
    std::size_t depth_limit = 0;

    std::size_t size() const { return nodes.size(); }
    const CrystalNode<E>& root() const { return nodes.front(); }
    std::optional<std::size_t> find(const E& x) const {
        auto it = index.find(x);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    std::size_t edge_count() const {
        std::size_t c = 0;
        for (auto& n : nodes)
            for (auto& l : n.f) c += l.is_edge();
        return c;
    }
};

// A crystal model provides: Element; context(); f(i,x), e(i,x) returning std::optional<Element>; wt(x); eps(i,x); phi(i,x).
struct GenerateOptions {
    bool native_e = false;  // e-links from the model's e instead of reversed f-edges
    bool parallel = false;
};

template <class Model>
CrystalGraph<typename Model::Element> generate_from(const Model& model, const typename Model::Element& root,
                                                    std::size_t depth, GenerateOptions opt = {}) {
    using E = typename Model::Element;
    const WeightContext& ctx = model.context();
    const std::size_t n = ctx.rank();
    CrystalGraph<E> g;
    g.ctx = &ctx;
    g.depth_limit = depth;

    auto make_node = [&](const E& x, std::size_t d) {
        CrystalNode<E> node;
        node.element = x;
        node.wt = model.wt(x);
        node.depth = d;
        node.f.assign(n, Link{});
        node.e.assign(n, Link{});
        for (std::size_t i = 0; i < n; ++i) {
            node.eps.push_back(model.eps(i, x));
            node.phi.push_back(model.phi(i, x));
        }
        return node;
    };
    g.nodes.push_back(make_node(root, 0));
    g.index.emplace(root, 0);

    std::size_t level_begin = 0;
    for (std::size_t d = 0;; ++d) {
        const std::size_t level_end = g.nodes.size();
        if (level_begin == level_end) break;
        std::vector<std::vector<std::optional<E>>> images(level_end - level_begin);
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                auto& out = images[k - level_begin];
                for (std::size_t i = 0; i < n; ++i) out.push_back(model.f(i, g.nodes[k].element));
            }
        };
        std::size_t workers = opt.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;
        if (workers > 1 && level_end - level_begin > 1) {
            std::vector<std::future<void>> jobs;
            std::size_t chunk = (level_end - level_begin + workers - 1) / workers;
            for (std::size_t lo = level_begin; lo < level_end; lo += chunk)
                jobs.push_back(std::async(std::launch::async, work, lo, std::min(level_end, lo + chunk)));
            for (auto& j : jobs) j.get();
        } else {
            work(level_begin, level_end);
        }
        if (d == depth) {
            for (std::size_t k = level_begin; k < level_end; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    if (images[k - level_begin][i]) {
                        g.nodes[k].f[i].kind = LinkKind::Cut;
                        g.nodes[k].frontier = true;
                    }
            break;
        }
        std::map<E, std::size_t> fresh;
        for (auto& imgs : images)
            for (auto& x : imgs)
                if (x && !g.index.count(*x)) fresh.emplace(*x, 0);
        for (auto& [x, slot] : fresh) {
            slot = g.nodes.size();
            g.index.emplace(x, slot);
            g.nodes.push_back(make_node(x, d + 1));
        }
        for (std::size_t k = level_begin; k < level_end; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (auto& x = images[k - level_begin][i]) g.nodes[k].f[i] = Link{LinkKind::Edge, g.index.at(*x)};
        level_begin = level_end;
    }

    if (opt.native_e) {
        for (auto& node : g.nodes)
            for (std::size_t i = 0; i < n; ++i) {
                auto y = model.e(i, node.element);
                if (!y) continue;
                auto at = g.find(*y);
                node.e[i] = at ? Link{LinkKind::Edge, *at} : Link{LinkKind::Outside, 0};
            }
    } else {
        for (std::size_t k = 0; k < g.nodes.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const Link& l = g.nodes[k].f[i];
                if (l.is_edge() && !g.nodes[l.target].e[i].is_edge()) g.nodes[l.target].e[i] = Link{LinkKind::Edge, k};
            }
    }
    return g;
}

struct Violation {
    std::size_t node;
    std::size_t index;  // 0-based crystal index
    int rule;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has_rule(int rule) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
    }
    void add(std::size_t node, std::size_t i, int rule, std::string msg) {
        violations.push_back({node, i, rule, std::move(msg)});
    }
    void merge(const ValidationReport& o) {
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    }
    std::string summary() const {
        std::ostringstream os;
        for (auto& v : violations)
            os << "node " << v.node << " index " << v.index + 1 << " rule " << v.rule << ": " << v.message << "\n";
        return os.str();
    }
};

namespace detail {

inline ExtInt pairing_ext(const WeightContext& ctx, std::size_t i, const Weight& w) {
    return ExtInt(to_int64(ctx.pairing(i, w)));
}

}  // namespace detail

// Rules (1)-(6) of a crystal on every node and link, plus the derived rules for f-edges.
template <class E>
ValidationReport validate_axioms(const WeightContext& ctx, const CrystalGraph<E>& g) {
    ValidationReport r;
    const std::size_t n = ctx.rank();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& b = g.nodes[k];
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t aii = ctx.a(i, i);
            const bool real = ctx.is_real(i);
            ExtInt expect_phi = b.eps[i] + to_int64(ctx.pairing(i, b.wt));
            if (!(b.phi[i] == expect_phi)) r.add(k, i, 1, "phi != eps + pairing(wt)");
            if (const Link& l = b.e[i]; l.is_edge()) {
                const auto& up = g.nodes[l.target];
                if (!(up.wt == b.wt + ctx.simple_root(i))) r.add(k, i, 2, "wt(e b) != wt b + alpha");
                ExtInt want = real ? b.eps[i] - 1 : b.eps[i];
                if (!(up.eps[i] == want)) r.add(k, i, 3, "eps(e b) has wrong value");
                ExtInt want_phi = real ? b.phi[i] + 1 : b.phi[i] + aii;
                if (!(up.phi[i] == want_phi)) r.add(k, i, 3, "phi(e b) has wrong value");
                if (!(up.f[i].is_edge() && up.f[i].target == k)) r.add(k, i, 4, "f(e b) != b");
            }
            if (const Link& l = b.f[i]; l.is_edge()) {
                const auto& down = g.nodes[l.target];
                if (!(down.wt == b.wt - ctx.simple_root(i))) r.add(k, i, 2, "wt(f b) != wt b - alpha");
                ExtInt want = real ? b.eps[i] + 1 : b.eps[i];
                if (!(down.eps[i] == want)) r.add(k, i, 3, "eps(f b) has wrong value");
                ExtInt want_phi = real ? b.phi[i] - 1 : b.phi[i] - aii;
                if (!(down.phi[i] == want_phi)) r.add(k, i, 3, "phi(f b) has wrong value");
                if (!(down.e[i].is_edge() && down.e[i].target == k)) r.add(k, i, 4, "e(f b) != b");
            }
            if (b.phi[i].is_neg_inf() && (b.f[i].kind != LinkKind::None || b.e[i].kind != LinkKind::None))
                r.add(k, i, 5, "phi = -inf but e or f is nonzero");
            if (!real) {
                if (!(b.eps[i].is_neg_inf() || b.eps[i] <= 0)) r.add(k, i, 6, "imaginary eps is positive");
                if (!(b.phi[i].is_neg_inf() || b.phi[i] >= 0)) r.add(k, i, 6, "imaginary phi is negative");
            }
        }
    }
    // f_i injective on the generated part.
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::size_t, std::size_t> seen;
        for (std::size_t k = 0; k < g.size(); ++k)
            if (const Link& l = g.nodes[k].f[i]; l.is_edge()) {
                auto [it, fresh] = seen.emplace(l.target, k);
                if (!fresh) r.add(k, i, 4, "f is not injective (shares target with node " + std::to_string(it->second) + ")");
            }
    }
    return r;
}

template <class E>
ValidationReport validate_category_B(const WeightContext& ctx, const CrystalGraph<E>& g) {
    ValidationReport r;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& b = g.nodes[k];
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            if (ctx.is_real(i)) continue;
            Rational p = ctx.pairing(i, b.wt);
            if (p < 0) r.add(k, i, 1, "negative imaginary pairing");
            if (!(b.eps[i] == ExtInt(0))) r.add(k, i, 2, "imaginary eps != 0");
            bool nonzero = b.f[i].kind == LinkKind::Edge || b.f[i].kind == LinkKind::Cut;
            if (nonzero != (b.phi[i] > ExtInt(0))) r.add(k, i, 3, "f nonzero must match phi > 0");
        }
    }
    return r;
}

// Real indices: eps = length of the e-string, phi = length of the f-string (skipped when the f-string is cut).
template <class E>
ValidationReport validate_normality(const WeightContext& ctx, const CrystalGraph<E>& g) {
    ValidationReport r;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& b = g.nodes[k];
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            if (!ctx.is_real(i)) continue;
            std::int64_t up = 0;
            bool up_complete = true;
            for (std::size_t c = k; g.nodes[c].e[i].kind != LinkKind::None; ++up) {
                if (!g.nodes[c].e[i].is_edge()) {
                    up_complete = false;
                    break;
                }
                c = g.nodes[c].e[i].target;
            }
            if (up_complete && !(b.eps[i] == ExtInt(up))) r.add(k, i, 1, "eps differs from e-string length");
            std::int64_t down = 0;
            bool cut = false;
            for (std::size_t c = k; g.nodes[c].f[i].kind != LinkKind::None; ++down) {
                if (!g.nodes[c].f[i].is_edge()) {
                    cut = true;
                    break;
                }
                c = g.nodes[c].f[i].target;
            }
            if (!cut && !(b.phi[i] == ExtInt(down))) r.add(k, i, 2, "phi differs from f-string length");
        }
    }
    return r;
}

class DepthMismatch : public std::invalid_argument {
public:
    DepthMismatch(std::size_t a, std::size_t b)
        : std::invalid_argument("graphs truncated at different depths (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")") {}
};

struct IsoOptions {
    bool compare_phi = true;
};

struct IsoResult {
    bool isomorphic = false;
    std::string reason;
    explicit operator bool() const { return isomorphic; }
};

// Simultaneous BFS from both roots; the f-edges force the bijection.
template <class E1, class E2>
IsoResult hw_crystal_isomorphic_explain(const CrystalGraph<E1>& g1, const CrystalGraph<E2>& g2, IsoOptions opt = {}) {
    if (g1.depth_limit != g2.depth_limit) throw DepthMismatch(g1.depth_limit, g2.depth_limit);
    IsoResult res;
    auto fail = [&](std::string why) {
        res.isomorphic = false;
        res.reason = std::move(why);
        return res;
    };
    if (g1.size() != g2.size()) return fail("node counts differ: " + std::to_string(g1.size()) + " vs " + std::to_string(g2.size()));
    if (g1.size() == 0) {
        res.isomorphic = true;
        return res;
    }
    const std::size_t n = g1.nodes[0].f.size();
    if (g2.nodes[0].f.size() != n) return fail("ranks differ");
    std::vector<std::optional<std::size_t>> to2(g1.size()), to1(g2.size());
    to2[0] = 0;
    to1[0] = 0;
    std::vector<std::size_t> queue{0};
    const Weight& r1 = g1.nodes[0].wt;
    const Weight& r2 = g2.nodes[0].wt;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        std::size_t a = queue[q], b = *to2[a];
        const auto& x = g1.nodes[a];
        const auto& y = g2.nodes[b];
        Weight o1 = r1 - x.wt, o2 = r2 - y.wt;
        if (!o1.in_root_span() || !o2.in_root_span() || o1.root != o2.root)
            return fail("weight offsets differ at node " + std::to_string(a));
        for (std::size_t i = 0; i < n; ++i) {
            if (!(x.eps[i] == y.eps[i])) return fail("eps differs at node " + std::to_string(a));
            if (opt.compare_phi && !(x.phi[i] == y.phi[i])) return fail("phi differs at node " + std::to_string(a));
            const Link &l1 = x.f[i], &l2 = y.f[i];
            if (l1.kind != l2.kind) return fail("f-link kinds differ at node " + std::to_string(a));
            if (!l1.is_edge()) continue;
            auto& m1 = to2[l1.target];
            auto& m2 = to1[l2.target];
            if (!m1 && !m2) {
                m1 = l2.target;
                m2 = l1.target;
                queue.push_back(l1.target);
            } else if (m1 != std::optional<std::size_t>(l2.target) || m2 != std::optional<std::size_t>(l1.target)) {
                return fail("edge targets inconsistent at node " + std::to_string(a));
            }
        }
    }
    if (queue.size() != g1.size()) return fail("bijection is not total");
    res.isomorphic = true;
    return res;
}

template <class E1, class E2>
bool hw_crystal_isomorphic(const CrystalGraph<E1>& g1, const CrystalGraph<E2>& g2, IsoOptions opt = {}) {
    return hw_crystal_isomorphic_explain(g1, g2, opt).isomorphic;
}

// Nodes are emitted in stored order, which generation keeps sorted by (depth, key).
template <class E>
std::string export_dot(const CrystalGraph<E>& g, const std::function<std::string(const E&)>& extra_label = {}) {
    std::ostringstream os;
    os << "digraph crystal {\n";
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& nd = g.nodes[k];
        os << "  n" << k << " [label=\"wt=" << format_weight(*g.ctx, nd.wt);
        if (extra_label) os << "\\n" << extra_label(nd.element);
        os << "\"";
        if (nd.frontier) os << ", style=dashed";
        os << "];\n";
    }
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t i = 0; i < g.nodes[k].f.size(); ++i)
            if (const Link& l = g.nodes[k].f[i]; l.is_edge())
                os << "  n" << k << " -> n" << l.target << " [label=\"" << i + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace gkm
