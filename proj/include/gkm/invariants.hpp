#pragma once

#include "character.hpp"
#include "crystal_models.hpp"
#include "fixtures.hpp"
#include "gls.hpp"
#include "path.hpp"
#include "torbit.hpp"

#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace gkm {

struct CheckOutcome {
    CheckOutcome() = default;
    explicit CheckOutcome(std::string n) : name(std::move(n)) {}
    std::string name;
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void fail(std::string why) { failures.push_back(std::move(why)); }
    void absorb(const CheckOutcome& o) {
        checked += o.checked;
        for (auto& f : o.failures) failures.push_back(o.name + ": " + f);
    }
    std::string line() const {
        std::string s = (ok() ? "ok   " : "FAIL ") + name + " (" + std::to_string(checked) + " checks";
        if (!ok()) s += ", " + std::to_string(failures.size()) + " failures; first: " + failures.front();
        return s + ")";
    }
};

inline void absorb_report(CheckOutcome& out, const ValidationReport& r, const std::string& what) {
    for (auto& v : r.violations)
        out.fail(what + " node " + std::to_string(v.node) + " index " + std::to_string(v.index + 1) + " rule " +
                 std::to_string(v.rule) + ": " + v.message);
}

template <class E>
void absorb_outside(CheckOutcome& out, const CrystalGraph<E>& g) {
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t i = 0; i < g.nodes[k].e.size(); ++i)
            if (g.nodes[k].e[i].kind == LinkKind::Outside)
                out.fail("e leaves the generated crystal at node " + std::to_string(k) + " index " + std::to_string(i + 1));
}

// ---- path operators ----

// Closed-form operators against the generic path operators on every node.
inline CheckOutcome check_oracle(const WeightContext& ctx, const GlsGraph& g) {
    CheckOutcome out{"oracle equivalence"};
    for (std::size_t k = 0; k < g.size(); ++k) {
        const GLSPath& p = g.nodes[k].element;
        const PiecewisePath rp = render(ctx, p);
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            ++out.checked;
            auto closed = gls_f(ctx, i, p);
            auto generic = apply_f(ctx, i, rp);
            if (closed.has_value() != generic.has_value() || (closed && !(render(ctx, *closed) == *generic)))
                out.fail("f_" + std::to_string(i + 1) + " at " + format_gls(ctx, p));
            if (ctx.is_real(i)) {
                ++out.checked;
                auto ce = gls_e_real(ctx, i, p);
                auto ge = apply_e(ctx, i, rp);
                if (ce.has_value() != ge.has_value() || (ce && !(render(ctx, *ce) == *ge)))
                    out.fail("e_" + std::to_string(i + 1) + " at " + format_gls(ctx, p));
            }
        }
    }
    return out;
}

// Membership, integrality, monotonicity and weight range of every node.
inline CheckOutcome check_gls_nodes(const WeightContext& ctx, const GlsGraph& g, std::size_t height_bound = unbounded) {
    CheckOutcome out{"GLS nodes"};
    OrbitSearch search(ctx, height_bound);
    const Weight& lambda = g.root().element.shape;
    for (auto& node : g.nodes) {
        const GLSPath& p = node.element;
        const PiecewisePath rp = render(ctx, p);
        out.checked += 4;
        if (auto c = verify_gls(ctx, p, search); !c) out.fail("not GLS (" + c.reason + "): " + format_gls(ctx, p));
        if (!is_integral(ctx, rp)) out.fail("not integral: " + format_gls(ctx, p));
        if (!is_monotone(ctx, rp)) out.fail("not monotone: " + format_gls(ctx, p));
        if (!(lambda - node.wt).in_Q_plus()) out.fail("weight outside lambda - Q+: " + format_gls(ctx, p));
    }
    return out;
}

// The root is the only node killed by every e (imaginary e by membership, not by the graph).
inline CheckOutcome check_highest_weight(const WeightContext& ctx, const GlsGraph& g, std::size_t height_bound = unbounded) {
    CheckOutcome out{"highest weight uniqueness"};
    for (std::size_t k = 0; k < g.size(); ++k) {
        const GLSPath& p = g.nodes[k].element;
        bool killed = true;
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            ++out.checked;
            auto up = gls_e(ctx, i, p, height_bound);
            if (up) killed = false;
            const Link& l = g.nodes[k].e[i];
            if (up.has_value() != l.is_edge() || (up && !(g.nodes[l.target].element == *up)))
                out.fail("membership e and reversed edge disagree at node " + std::to_string(k) + " index " +
                         std::to_string(i + 1));
        }
        if (killed != (k == 0)) out.fail("node " + std::to_string(k) + (killed ? " is killed by every e" : " (root) has an e"));
    }
    return out;
}

// Nodes whose ambient e is nonzero while the crystal e vanishes.
inline std::vector<std::pair<std::size_t, std::size_t>> nonstrict_witnesses(const WeightContext& ctx, const GlsGraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> w;
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t i = 0; i < ctx.rank(); ++i)
            if (!g.nodes[k].e[i].is_edge() && apply_e(ctx, i, render(ctx, g.nodes[k].element))) w.emplace_back(k, i);
    return w;
}

// e undoes f and f undoes e, with the weight shifts.
inline CheckOutcome check_inversion(const WeightContext& ctx, const std::vector<PiecewisePath>& paths) {
    CheckOutcome out{"f/e inversion"};
    for (auto& p : paths)
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            const std::string at = " index " + std::to_string(i + 1) + " at\n" + format_path(ctx, p);
            if (auto q = apply_f(ctx, i, p)) {
                out.checked += 2;
                if (!(q->endpoint() == p.endpoint() - ctx.simple_root(i))) out.fail("f weight shift" + at);
                auto back = apply_e(ctx, i, *q);
                if (!back || !(*back == p)) out.fail("e f != id" + at);
            }
            if (auto q = apply_e(ctx, i, p)) {
                out.checked += 2;
                if (!(q->endpoint() == p.endpoint() + ctx.simple_root(i))) out.fail("e weight shift" + at);
                auto back = apply_f(ctx, i, *q);
                if (!back || !(*back == p)) out.fail("f e != id" + at);
            }
        }
    return out;
}

// Iterating f: imaginary strings never end and keep the minimum; real strings lose one unit each step and end.
inline CheckOutcome check_iteration(const WeightContext& ctx, const std::vector<PiecewisePath>& paths, std::size_t k = 8) {
    CheckOutcome out{"f iteration"};
    for (auto& p0 : paths)
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            if (!apply_f(ctx, i, p0)) continue;
            const std::string tag = "index " + std::to_string(i + 1);
            PiecewisePath p = p0;
            if (ctx.is_imaginary(i)) {
                for (std::size_t step = 0; step < k; ++step) {
                    ++out.checked;
                    HProfile a = h_profile(ctx, i, p);
                    auto q = apply_f(ctx, i, p);
                    if (!q) {
                        out.fail(tag + ": imaginary string ended after " + std::to_string(step) + " steps");
                        break;
                    }
                    HProfile b = h_profile(ctx, i, *q);
                    if (b.m != a.m) out.fail(tag + ": minimum changed");
                    if (b.f_plus != a.f_plus) out.fail(tag + ": f_plus moved");
                    if (!b.f_defined || !(*b.f_minus <= *a.f_minus)) out.fail(tag + ": f_minus increased");
                    else if ((*b.f_minus == *a.f_minus) != (ctx.a(i, i) == 0))
                        out.fail(tag + ": f_minus equality does not match a_ii = 0");
                    p = std::move(*q);
                }
            } else {
                const std::size_t limit = 200;
                std::size_t steps = 0;
                while (steps < limit) {
                    ++out.checked;
                    HProfile a = h_profile(ctx, i, p);
                    auto q = apply_f(ctx, i, p);
                    if (!q) break;
                    HProfile b = h_profile(ctx, i, *q);
                    if (b.m != a.m - 1) out.fail(tag + ": real minimum did not drop by one");
                    // Equality fails when h returns to m+1 after f_minus; the new minimum is first reached there.
                    if (!(*b.f_plus >= *a.f_minus) || h_function(ctx, i, *q).at(*a.f_minus) != b.m)
                        out.fail(tag + ": new minimum not reached at the old f_minus");
                    p = std::move(*q);
                    ++steps;
                }
                if (steps == limit) out.fail(tag + ": real string did not terminate");
            }
        }
    return out;
}

// Generic path operators on concatenations against the general tensor rules. For imaginary e the ambient
// operator may act where the tensor rule sits in its middle kill-zone (pi x pi is pi_{2 lambda} as a path);
// such pairs are counted in `divergences`, any other disagreement fails.
struct ConcatenationOutcome {
    CheckOutcome check{"concatenation vs tensor rules"};
    std::size_t divergences = 0;
};

inline ConcatenationOutcome check_concatenation(const WeightContext& ctx,
                                                const std::vector<std::pair<PiecewisePath, PiecewisePath>>& pairs) {
    ConcatenationOutcome res;
    CheckOutcome& out = res.check;
    PathModel pm(ctx);
    TensorModel<PathModel, PathModel> t(pm, pm);
    const Rational half(1, 2);
    auto same = [&](const std::optional<PiecewisePath>& p, const std::optional<std::pair<PiecewisePath, PiecewisePath>>& q) {
        return p.has_value() == q.has_value() && (!p || *p == concatenate(ctx, q->first, q->second, half));
    };
    for (auto& [a, b] : pairs) {
        PiecewisePath joined = concatenate(ctx, a, b, half);
        for (std::size_t i = 0; i < ctx.rank(); ++i) {
            out.checked += 4;
            const std::string tag = "_" + std::to_string(i + 1);
            if (!same(apply_f(ctx, i, joined), t.f(i, {a, b}))) out.fail("f" + tag + " disagrees");
            auto pe = apply_e(ctx, i, joined);
            auto te = t.e(i, {a, b});
            if (!same(pe, te)) {
                ExtInt p1 = pm.phi(i, a), e2 = pm.eps(i, b);
                bool kill_zone = ctx.is_imaginary(i) && p1 > e2 && !(p1 > e2 - ctx.a(i, i));
                if (kill_zone && pe && !te) ++res.divergences;
                else out.fail("e" + tag + " disagrees");
            }
            if (!(ExtInt(path_epsilon(ctx, i, joined)) == t.eps(i, {a, b}))) out.fail("eps" + tag + " disagrees");
            if (!(ExtInt(path_phi(ctx, i, joined)) == t.phi(i, {a, b}))) out.fail("phi" + tag + " disagrees");
        }
    }
    return res;
}

template <class E>
CheckOutcome check_crystal(const WeightContext& ctx, const CrystalGraph<E>& g, const std::string& name, bool category_B = true) {
    CheckOutcome out{name};
    out.checked += g.size() * ctx.rank();
    absorb_report(out, validate_axioms(ctx, g), "axioms");
    if (category_B) absorb_report(out, validate_category_B(ctx, g), "category B");
    absorb_report(out, validate_normality(ctx, g), "normality");
    absorb_outside(out, g);
    return out;
}

// ---- tensor products ----

using GlsTensor = TensorModel<GlsModel, GlsModel>;

inline CrystalGraph<GlsTensor::Element> tensor_graph(const WeightContext& ctx, const Weight& lambda, const Weight& mu,
                                                    std::size_t depth, bool parallel = false) {
    GlsModel m(ctx);
    GlsTensor t(m, m);
    return generate_from(t, {straight_gls(lambda), straight_gls(mu)}, depth, GenerateOptions{true, parallel});
}

// Axioms of the tensor closure and its isomorphism with the crystal of the summed shape.
inline CheckOutcome check_tensor(const WeightContext& ctx, const Weight& lambda, const Weight& mu, std::size_t depth) {
    CheckOutcome out{"tensor product"};
    auto tg = tensor_graph(ctx, lambda, mu, depth);
    out.absorb(check_crystal(ctx, tg, "tensor closure"));
    ++out.checked;
    auto iso = hw_crystal_isomorphic_explain(tg, enumerate(ctx, lambda + mu, depth));
    if (!iso) out.fail("not isomorphic to the crystal of the summed shape: " + iso.reason);
    return out;
}

// ---- limit crystal ----

// Paths of a large shape, with the shape subtracted from weights: a depth-limited stand-in for the limit crystal.
class LimitModel {
public:
    using Element = GLSPath;
    static constexpr bool category_B = false;

    LimitModel(const WeightContext& ctx, Weight big) : ctx_(ctx), big_(std::move(big)) {}
    const WeightContext& context() const { return ctx_; }
    const Weight& shape() const { return big_; }
    GLSPath top() const { return straight_gls(big_); }

    Weight wt(const GLSPath& p) const { return gls_weight(ctx_, p) - big_; }
    ExtInt eps(std::size_t i, const GLSPath& p) const { return gls_epsilon(ctx_, i, p); }
    ExtInt phi(std::size_t i, const GLSPath& p) const { return eps(i, p) + to_int64(ctx_.pairing(i, wt(p))); }
    std::optional<GLSPath> f(std::size_t i, const GLSPath& p) const {
        auto q = gls_f(ctx_, i, p);
        if (!q) throw std::logic_error("limit shape too small for the requested depth");
        return q;
    }
    std::optional<GLSPath> e(std::size_t i, const GLSPath& p) const { return gls_e(ctx_, i, p); }

private:
    const WeightContext& ctx_;
    Weight big_;
};

// ---- B_J(infinity) ----

// Finite tensor b_{i_L} x ... x b_{i_1} of elementary crystals evaluated by the general tensor rules.
class ElementaryChainModel {
public:
    using Element = BJWord;
    static constexpr bool category_B = false;

    ElementaryChainModel(const WeightContext& ctx, GeneratorSequence J) : ctx_(ctx), J_(std::move(J)) {}
    const WeightContext& context() const { return ctx_; }

    Weight wt(const BJWord& m) const {
        Weight w = ctx_.zero();
        for (std::size_t k = 1; k <= m.size(); ++k) w.root[J_.at(k)] -= m[k - 1];
        return w;
    }
    ExtInt eps(std::size_t i, const BJWord& m) const { return stats(i, m, length(m)).first; }
    ExtInt phi(std::size_t i, const BJWord& m) const { return stats(i, m, length(m)).second; }
    std::optional<BJWord> f(std::size_t i, const BJWord& m) const { return act(i, m, true); }
    std::optional<BJWord> e(std::size_t i, const BJWord& m) const { return act(i, m, false); }

private:
    // Enough places that every index occurs above the support.
    std::size_t length(const BJWord& m) const {
        std::size_t L = m.size() + 1;
        for (std::size_t i = 0; i < ctx_.rank(); ++i) L = std::max(L, J_.next_place(i, m.size()));
        return L;
    }
    std::int64_t mk(const BJWord& m, std::size_t k) const { return k <= m.size() ? m[k - 1] : 0; }
    ExtInt elem_eps(std::size_t i, const BJWord& m, std::size_t k) const {
        if (J_.at(k) != i) return ExtInt::neg_inf();
        return ctx_.is_real(i) ? ExtInt(mk(m, k)) : ExtInt(0);
    }
    ExtInt elem_phi(std::size_t i, const BJWord& m, std::size_t k) const {
        if (J_.at(k) != i) return ExtInt::neg_inf();
        return ctx_.is_real(i) ? ExtInt(-mk(m, k)) : ExtInt(-mk(m, k) * ctx_.a(i, i));
    }
    std::int64_t elem_pairing(std::size_t i, const BJWord& m, std::size_t k) const { return -mk(m, k) * ctx_.a(i, J_.at(k)); }

    // (eps, phi) of the tensor of places 1..k.
    std::pair<ExtInt, ExtInt> stats(std::size_t i, const BJWord& m, std::size_t k) const {
        ExtInt e = elem_eps(i, m, 1), p = elem_phi(i, m, 1);
        std::int64_t below = elem_pairing(i, m, 1);
        for (std::size_t j = 2; j <= k; ++j) {
            ExtInt ej = elem_eps(i, m, j), pj = elem_phi(i, m, j);
            std::int64_t wj = elem_pairing(i, m, j);
            ExtInt ne = max(ej, e - wj);
            ExtInt np = max(pj + below, p);
            e = ne;
            p = np;
            below += wj;
        }
        return {e, p};
    }

    std::optional<BJWord> act(std::size_t i, const BJWord& m, bool lower) const {
        for (std::size_t k = length(m); k >= 1; --k) {
            // Top factor is place k, the rest is places 1..k-1.
            ExtInt p1 = elem_phi(i, m, k);
            ExtInt e2 = k > 1 ? stats(i, m, k - 1).first : ExtInt::neg_inf();
            bool here;
            if (lower) {
                here = p1 > e2;
            } else if (ctx_.is_real(i)) {
                here = p1 >= e2;
            } else {
                if (p1 > e2 - ctx_.a(i, i)) here = true;
                else if (p1 > e2) return std::nullopt;
                else here = false;
            }
            if (!here) {
                if (k == 1) return std::nullopt;
                continue;
            }
            if (J_.at(k) != i) return std::nullopt;
            BJWord out = m;
            if (out.size() < k) out.resize(k, 0);
            out[k - 1] += lower ? 1 : -1;
            if (out[k - 1] < 0) return std::nullopt;
            while (!out.empty() && out.back() == 0) out.pop_back();
            return out;
        }
        return std::nullopt;
    }

    const WeightContext& ctx_;
    GeneratorSequence J_;
};

inline CrystalGraph<BJWord> bj_graph(const WeightContext& ctx, const GeneratorSequence& J, std::size_t depth) {
    return generate_from(BJModel(ctx, J), BJWord{}, depth, GenerateOptions{true, false});
}

// Weight-zero uniqueness, two-element property, axioms, agreement with the elementary tensor and with large-shape paths.
inline CheckOutcome check_bj(const WeightContext& ctx, const GeneratorSequence& J, std::size_t depth,
                             std::int64_t big_pairing = 0) {
    CheckOutcome out{"B_J(infinity)"};
    auto g = bj_graph(ctx, J, depth);
    const std::size_t n = ctx.rank();

    std::size_t zero = 0;
    for (auto& node : g.nodes) zero += node.wt.is_zero();
    ++out.checked;
    if (zero != 1) out.fail(std::to_string(zero) + " elements of weight 0");

    // f_i b = f_j b' with i != j imaginary forces a_ij = 0 and b in the image of f_j.
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!ctx.is_imaginary(i) || !g.nodes[k].f[i].is_edge()) continue;
            for (std::size_t k2 = 0; k2 < g.size(); ++k2)
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i || !ctx.is_imaginary(j)) continue;
                    const Link& l = g.nodes[k2].f[j];
                    if (!l.is_edge() || l.target != g.nodes[k].f[i].target) continue;
                    ++out.checked;
                    if (ctx.a(i, j) != 0) out.fail("shared f-image with a_ij != 0");
                    if (!g.nodes[k].e[j].is_edge()) out.fail("shared f-image but b is not an f_j image");
                }
        }

    out.absorb(check_crystal(ctx, g, "B_J axioms", false));

    ElementaryChainModel chain(ctx, J);
    BJModel bj(ctx, J);
    for (auto& node : g.nodes)
        for (std::size_t i = 0; i < n; ++i) {
            out.checked += 4;
            const std::string at = " index " + std::to_string(i + 1) + " at node of depth " + std::to_string(node.depth);
            if (!(bj.f(i, node.element) == chain.f(i, node.element))) out.fail("f differs from tensor rules" + at);
            if (!(bj.e(i, node.element) == chain.e(i, node.element))) out.fail("e differs from tensor rules" + at);
            if (!(bj.eps(i, node.element) == chain.eps(i, node.element))) out.fail("eps differs from tensor rules" + at);
            if (!(bj.phi(i, node.element) == chain.phi(i, node.element))) out.fail("phi differs from tensor rules" + at);
        }

    if (big_pairing > 0) {
        std::vector<BaseWeight> bases{{"Lambda", std::vector<Rational>(n, Rational(big_pairing)), true}};
        auto big_ctx = make_context(ctx.matrix(), bases);
        const WeightContext& bc = *big_ctx;
        LimitModel lim(bc, bc.base_weight("Lambda"));
        auto pg = generate_from(lim, lim.top(), depth);
        auto g2 = generate_from(BJModel(bc, J), BJWord{}, depth);
        ++out.checked;
        auto iso = hw_crystal_isomorphic_explain(g2, pg);
        if (!iso) out.fail("not isomorphic to the large-shape path crystal: " + iso.reason);
    }
    return out;
}

// ---- embedding ----

// For every f-word up to max_len: on pi_lambda x pi_mu the word splits into a submonomial acting on the left
// and f_i^m on the right, and the same split appears on (limit top) x b_i(0).
inline CheckOutcome check_embedding(const std::vector<std::vector<std::int64_t>>& entries, std::size_t i,
                                    std::size_t max_len = 4, std::int64_t wide = 9, std::int64_t big = 20) {
    CheckOutcome out{"embedding index " + std::to_string(i + 1)};
    const std::size_t n = entries.size();
    std::vector<std::int64_t> lam(n, wide), mu(n, 0), Lam(n, big);
    lam[i] = 0;
    mu[i] = wide;
    auto cp = context_with(entries, {{"lambda", lam}, {"mu", mu}, {"Lambda", Lam}});
    const WeightContext& ctx = *cp;
    GlsModel gm(ctx);
    GlsTensor t(gm, gm);
    LimitModel lim(ctx, ctx.base_weight("Lambda"));
    ElementaryModel bi(ctx, i);
    TensorModel<LimitModel, ElementaryModel> t2(lim, bi);
    const GLSPath pl = straight_gls(ctx.base_weight("lambda"));
    const GLSPath pm = straight_gls(ctx.base_weight("mu"));

    std::vector<std::size_t> word;
    std::function<void()> rec = [&]() {
        if (!word.empty()) {
            ++out.checked;
            std::string w;
            for (auto x : word) w += std::to_string(x + 1);
            GlsTensor::Element b{pl, pm};
            std::pair<GLSPath, std::int64_t> c{lim.top(), 0};
            std::vector<std::size_t> left;
            std::size_t m = 0;
            bool zero = false;
            for (auto j : word) {
                bool on_left = t.f_acts_left(j, b);
                auto nb = t.f(j, b);
                if (!nb) {
                    zero = true;
                    break;
                }
                b = std::move(*nb);
                if (on_left) left.push_back(j);
                else if (j != i) out.fail("word " + w + ": an index other than i reached the right factor");
                else ++m;
                auto nc = t2.f(j, c);
                if (!nc) {
                    out.fail("word " + w + ": zero in the limit tensor");
                    return;
                }
                c = std::move(*nc);
            }
            if (!zero) {
                GLSPath x = pl, z = lim.top();
                for (auto j : left) {
                    auto nx = gls_f(ctx, j, x);
                    if (!nx) {
                        out.fail("word " + w + ": left submonomial kills pi_lambda");
                        return;
                    }
                    x = std::move(*nx);
                    z = *gls_f(ctx, j, z);
                }
                GLSPath y = pm;
                for (std::size_t k = 0; k < m; ++k) y = *gls_f(ctx, i, y);
                if (!(b.first == x)) out.fail("word " + w + ": left factor is not the submonomial image");
                if (!(b.second == y)) out.fail("word " + w + ": right factor is not f_i^m pi_mu");
                if (!(c.first == z) || c.second != static_cast<std::int64_t>(m))
                    out.fail("word " + w + ": limit tensor splits differently");
            }
        }
        if (word.size() == max_len) return;
        for (std::size_t j = 0; j < n; ++j) {
            word.push_back(j);
            rec();
            word.pop_back();
        }
    };
    rec();
    return out;
}

// ---- orbit order ----

// Real-reflection and imaginary-reflection behaviour of dist, and monotonicity of imaginary pairings.
inline CheckOutcome check_dist_properties(const WeightContext& ctx, const Weight& lambda, std::size_t depth) {
    CheckOutcome out{"dist properties"};
    auto orb = orbit(ctx, lambda, depth);
    OrbitSearch s(ctx);
    for (auto& mu : orb)
        for (auto& nu : orb) {
            auto d = s.dist(mu, nu);
            if (!d) continue;
            for (std::size_t i = 0; i < ctx.rank(); ++i) {
                Rational pm = ctx.pairing(i, mu), pn = ctx.pairing(i, nu);
                Weight rm = reflect(ctx, i, mu), rn = reflect(ctx, i, nu);
                if (ctx.is_real(i)) {
                    if (pm < 0 && pn >= 0) {
                        ++out.checked;
                        auto d2 = s.dist(rm, nu);
                        if (!d2 || !(*d2 < *d)) out.fail("real reflection of the lower weight");
                    }
                    if (pm <= 0 && pn > 0) {
                        ++out.checked;
                        auto d2 = s.dist(mu, rn);
                        if (!d2 || !(*d2 < *d)) out.fail("real reflection of the upper weight");
                    }
                    if (pm * pn > 0) {
                        ++out.checked;
                        if (s.dist(rm, rn) != d) out.fail("real reflection of both weights");
                    }
                } else {
                    ++out.checked;
                    if (pm < pn) out.fail("imaginary pairing decreased along the order");
                    if (pm == pn && pm >= 0) {
                        ++out.checked;
                        if (s.dist(rm, rn) != d) out.fail("imaginary reflection of both weights");
                    }
                }
            }
        }
    return out;
}

// Orbit range, dominance preservation, leftmost letters of reduced words of dominant weights.
inline CheckOutcome check_orbit(const WeightContext& ctx, const Weight& lambda, std::size_t depth) {
    CheckOutcome out{"orbit"};
    for (auto& mu : orbit(ctx, lambda, depth)) {
        ++out.checked;
        if (!(lambda - mu).in_Q_plus()) out.fail("orbit weight outside lambda - Q+");
        for (std::size_t i = 0; i < ctx.rank(); ++i)
            if (ctx.is_imaginary(i) && ctx.pairing(i, mu) < 0) out.fail("negative imaginary pairing in the orbit");
        if (!is_P_plus(ctx, mu)) continue;
        for (std::size_t i = 0; i < ctx.rank(); ++i)
            if (ctx.is_imaginary(i) && !is_P_plus(ctx, reflect(ctx, i, mu))) out.fail("imaginary reflection left P+");
        if (mu == lambda) continue;
        for (auto& w : all_reduced_words(ctx, lambda, mu, static_cast<std::size_t>(to_int64(ceil_div(depth_below(lambda, mu)))))) {
            ++out.checked;
            if (w.empty() || !ctx.is_imaginary(w.front())) out.fail("reduced word of a dominant weight starts with a real letter");
        }
    }
    return out;
}

namespace detail {

// Images of the coordinate basis under a word: identifies the linear map.
inline std::vector<Weight> word_map(const WeightContext& ctx, const TWord& w) {
    std::vector<Weight> images;
    for (std::size_t b = 0; b < ctx.num_bases(); ++b) {
        Weight x = ctx.zero();
        x.base[b] = 1;
        images.push_back(apply_word(ctx, w, x));
    }
    for (std::size_t j = 0; j < ctx.rank(); ++j) images.push_back(apply_word(ctx, w, ctx.simple_root(j)));
    return images;
}

}  // namespace detail

// Every stabilising word of length <= L acts as a word in the generators fixing lambda.
inline CheckOutcome check_stabilizer(const WeightContext& ctx, const Weight& lambda, std::size_t L) {
    CheckOutcome out{"stabilizer"};
    const std::size_t n = ctx.rank();
    std::vector<std::size_t> fixing;
    for (std::size_t i = 0; i < n; ++i)
        if (ctx.pairing(i, lambda) == 0) fixing.push_back(i);
    std::set<std::vector<Weight>> generated;
    TWord w;
    std::function<void(const std::vector<std::size_t>&, std::function<void()>)> words =
        [&](const std::vector<std::size_t>& letters, std::function<void()> visit) {
            visit();
            if (w.size() == L) return;
            for (auto j : letters) {
                w.push_back(j);
                words(letters, visit);
                w.pop_back();
            }
        };
    words(fixing, [&] { generated.insert(detail::word_map(ctx, w)); });
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    words(all, [&] {
        if (!(apply_word(ctx, w, lambda) == lambda)) return;
        ++out.checked;
        if (!generated.count(detail::word_map(ctx, w))) {
            std::string s;
            for (auto x : w) s += std::to_string(x + 1);
            out.fail("stabilising word " + s + " is not generated by the fixing reflections");
        }
    });
    return out;
}

inline CheckOutcome check_character(const WeightContext& ctx, const Weight& lambda, std::size_t depth) {
    CheckOutcome out{"character"};
    ++out.checked;
    auto rep = compare_characters(ctx, lambda, depth);
    if (!rep.equal) out.fail(rep.text());
    return out;
}

// ---- bundled suite ----

inline std::vector<PiecewisePath> rendered_nodes(const WeightContext& ctx, const GlsGraph& g) {
    std::vector<PiecewisePath> v;
    for (auto& node : g.nodes) v.push_back(render(ctx, node.element));
    return v;
}

struct SuiteOptions {
    std::size_t depth = 3;
    bool stop_on_first = true;
    unsigned seed = 0;           // chooses the sampled path pairs
    std::size_t sampled_pairs = 16;
};

// Runs every invariant family over the bundled matrices; returns true when nothing failed.
inline bool run_suite(std::ostream& os, SuiteOptions opt = {}) {
    bool all_ok = true;
    auto report = [&](const std::string& where, const CheckOutcome& c) {
        os << where << ": " << c.line() << "\n";
        if (!c.ok()) all_ok = false;
        return c.ok() || !opt.stop_on_first;
    };
    for (auto& nm : bundled_matrices()) {
        const std::size_t n = nm.entries.size();
        std::vector<std::vector<std::int64_t>> shapes;
        for (std::int64_t p = 0; p <= 2; ++p) shapes.push_back(std::vector<std::int64_t>(n, p));
        if (n == 2) shapes.push_back({2, 0}), shapes.push_back({0, 1});
        for (auto& lam : shapes) {
            auto cp = context_with(nm.entries, {{"lambda", lam}});
            const WeightContext& ctx = *cp;
            const Weight lambda = ctx.base_weight("lambda");
            std::string where = nm.name + " lambda=(";
            for (std::size_t k = 0; k < n; ++k) where += (k ? "," : "") + std::to_string(lam[k]);
            where += ")";
            auto g = enumerate(ctx, lambda, opt.depth);
            auto paths = rendered_nodes(ctx, g);
            std::vector<std::pair<PiecewisePath, PiecewisePath>> pairs;
            for (auto& a : paths)
                for (auto& b : paths) pairs.emplace_back(a, b);
            std::shuffle(pairs.begin(), pairs.end(), std::mt19937(opt.seed));
            if (pairs.size() > opt.sampled_pairs) pairs.resize(opt.sampled_pairs);
            const std::vector<CheckOutcome> checks = {
                check_orbit(ctx, lambda, 4),
                check_dist_properties(ctx, lambda, 4),
                check_stabilizer(ctx, lambda, 3),
                check_oracle(ctx, g),
                check_gls_nodes(ctx, g),
                check_highest_weight(ctx, g),
                check_crystal(ctx, g, "crystal"),
                check_inversion(ctx, paths),
                check_iteration(ctx, paths),
                check_concatenation(ctx, pairs).check,
                check_tensor(ctx, lambda, lambda, opt.depth),
                check_character(ctx, lambda, opt.depth),
            };
            for (auto& c : checks)
                if (!report(where, c)) return false;
        }
        if (n >= 2) {
            auto cp = context_with(nm.entries);
            if (!report(nm.name, check_bj(*cp, GeneratorSequence::cyclic(n), 4, 12))) return false;
            for (std::size_t i = 0; i < n; ++i)
                if (!report(nm.name, check_embedding(nm.entries, i))) return false;
        }
    }
    return all_ok;
}

}  // namespace gkm
