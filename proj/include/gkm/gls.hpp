#pragma once

#include "crystal_graph.hpp"
#include "path.hpp"
#include "torbit.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gkm {

// Weights lambda_1 > ... > lambda_s of the orbit with break points 0 = a_0 < ... < a_s = 1;
// the path has velocity lambda_j on [a_{j-1}, a_j].
struct GLSPath {
    Weight shape;
    std::vector<Weight> weights;
    std::vector<Rational> breaks;

    std::size_t length() const { return weights.size(); }

    friend bool operator==(const GLSPath& x, const GLSPath& y) {
        return x.shape == y.shape && x.weights == y.weights && x.breaks == y.breaks;
    }
    friend bool operator<(const GLSPath& x, const GLSPath& y) {
        if (!(x.shape == y.shape)) return x.shape < y.shape;
        if (x.weights != y.weights) return x.weights < y.weights;
        return x.breaks < y.breaks;
    }
};

// Drops zero-length segments and merges equal neighbours.
inline GLSPath normalize(GLSPath p) {
    GLSPath out;
    out.shape = std::move(p.shape);
    out.breaks.push_back(p.breaks.front());
    for (std::size_t j = 0; j < p.weights.size(); ++j) {
        if (p.breaks[j + 1] == p.breaks[j]) continue;
        if (!out.weights.empty() && out.weights.back() == p.weights[j]) {
            out.breaks.back() = p.breaks[j + 1];
            continue;
        }
        out.weights.push_back(std::move(p.weights[j]));
        out.breaks.push_back(p.breaks[j + 1]);
    }
    return out;
}

inline GLSPath straight_gls(const Weight& lambda) { return GLSPath{lambda, {lambda}, {Rational(0), Rational(1)}}; }

inline GLSPath make_gls(const Weight& shape, std::vector<Weight> weights, std::vector<Rational> breaks) {
    if (breaks.size() != weights.size() + 1 || weights.empty())
        throw std::invalid_argument("GLS path needs one more break point than weights");
    if (breaks.front() != 0 || breaks.back() != 1) throw std::invalid_argument("break points must run from 0 to 1");
    for (std::size_t k = 1; k < breaks.size(); ++k)
        if (breaks[k] < breaks[k - 1]) throw std::invalid_argument("break points must be increasing");
    return normalize(GLSPath{shape, std::move(weights), std::move(breaks)});
}

// Path with velocity weights[j] on [breaks[j], breaks[j+1]]; zero-length pieces are skipped.
inline PiecewisePath render_sequence(const WeightContext& ctx, const std::vector<Weight>& weights,
                                     const std::vector<Rational>& breaks) {
    std::vector<Rational> t{Rational(0)};
    std::vector<Weight> v{ctx.zero()};
    for (std::size_t j = 0; j < weights.size(); ++j) {
        Rational len = breaks[j + 1] - breaks[j];
        if (len == 0) continue;
        t.push_back(breaks[j + 1]);
        v.push_back(v.back() + len * weights[j]);
    }
    return PiecewisePath(std::move(t), std::move(v));
}

inline PiecewisePath render(const WeightContext& ctx, const GLSPath& p) { return render_sequence(ctx, p.weights, p.breaks); }

inline Weight gls_weight(const WeightContext& ctx, const GLSPath& p) { return render(ctx, p).endpoint(); }

// Reads segment velocities back off a path.
inline GLSPath gls_from_path(const Weight& shape, const PiecewisePath& p) {
    GLSPath g;
    g.shape = shape;
    g.breaks.push_back(Rational(0));
    for (std::size_t k = 1; k < p.size(); ++k) {
        Rational len = p.times()[k] - p.times()[k - 1];
        g.weights.push_back((Rational(1) / len) * (p.values()[k] - p.values()[k - 1]));
        g.breaks.push_back(p.times()[k]);
    }
    return normalize(std::move(g));
}

namespace detail {

inline std::size_t break_position(const GLSPath& p, const Rational& t) {
    for (std::size_t j = 0; j < p.breaks.size(); ++j)
        if (p.breaks[j] == t) return j;
    throw std::logic_error("extremal point " + t.get_str() + " is not a break point of the path");
}

// Smallest p >= 1 with x <= a_p.
inline std::size_t segment_containing(const GLSPath& p, const Rational& x) {
    for (std::size_t j = 1; j < p.breaks.size(); ++j)
        if (x <= p.breaks[j]) return j;
    throw std::logic_error("point outside [0,1]");
}

}  // namespace detail

inline std::optional<GLSPath> gls_f(const WeightContext& ctx, std::size_t i, const GLSPath& p) {
    HProfile prof = h_profile(ctx, i, render(ctx, p));
    if (!prof.f_defined) return std::nullopt;
    const std::size_t t = detail::break_position(p, *prof.f_plus);
    const std::size_t q = detail::segment_containing(p, *prof.f_minus);
    GLSPath out;
    out.shape = p.shape;
    for (std::size_t j = 0; j < t; ++j) out.weights.push_back(p.weights[j]);
    for (std::size_t j = t; j < q; ++j) out.weights.push_back(reflect(ctx, i, p.weights[j]));
    for (std::size_t j = q - 1; j < p.weights.size(); ++j) out.weights.push_back(p.weights[j]);
    for (std::size_t j = 0; j < q; ++j) out.breaks.push_back(p.breaks[j]);
    out.breaks.push_back(*prof.f_minus);
    for (std::size_t j = q; j < p.breaks.size(); ++j) out.breaks.push_back(p.breaks[j]);
    return normalize(std::move(out));
}

// Closed form for a real index.
inline std::optional<GLSPath> gls_e_real(const WeightContext& ctx, std::size_t i, const GLSPath& p) {
    if (!ctx.is_real(i)) throw std::invalid_argument("closed-form e requires a real index");
    HProfile prof = h_profile(ctx, i, render(ctx, p));
    if (!prof.e_defined) return std::nullopt;
    const std::size_t k = detail::break_position(p, *prof.e_plus);
    const Rational em = *prof.e_minus;
    std::size_t q = 1;
    while (!(p.breaks[q - 1] <= em && em < p.breaks[q])) ++q;
    GLSPath out;
    out.shape = p.shape;
    for (std::size_t j = 0; j < q; ++j) out.weights.push_back(p.weights[j]);
    for (std::size_t j = q - 1; j < k; ++j) out.weights.push_back(reflect(ctx, i, p.weights[j]));
    for (std::size_t j = k; j < p.weights.size(); ++j) out.weights.push_back(p.weights[j]);
    for (std::size_t j = 0; j < q; ++j) out.breaks.push_back(p.breaks[j]);
    out.breaks.push_back(em);
    for (std::size_t j = q; j < p.breaks.size(); ++j) out.breaks.push_back(p.breaks[j]);
    return normalize(std::move(out));
}

inline std::int64_t gls_epsilon(const WeightContext& ctx, std::size_t i, const GLSPath& p) {
    return path_epsilon(ctx, i, render(ctx, p));
}

inline std::int64_t gls_phi(const WeightContext& ctx, std::size_t i, const GLSPath& p) {
    return path_phi(ctx, i, render(ctx, p));
}

struct GlsCertificate {
    bool ok = false;
    std::vector<AChain> chains;              // consecutive pairs, then the final 1-chain when present
    std::optional<std::size_t> failing_pair; // 0-based pair index; weights.size()-1 means the final pair
    std::string reason;
    explicit operator bool() const { return ok; }
};

inline GlsCertificate verify_gls(const WeightContext& ctx, const GLSPath& p, OrbitSearch& search) {
    GlsCertificate c;
    const std::size_t s = p.weights.size();
    if (s == 0 || p.breaks.size() != s + 1 || p.breaks.front() != 0 || p.breaks.back() != 1) {
        c.reason = "malformed break sequence";
        return c;
    }
    for (std::size_t k = 1; k <= s; ++k)
        if (!(p.breaks[k - 1] < p.breaks[k])) {
            c.reason = "break points not strictly increasing";
            return c;
        }
    if (!ctx.in_P(gls_weight(ctx, p))) {
        c.reason = "endpoint not integral";
        return c;
    }
    for (std::size_t k = 0; k + 1 < s; ++k) {
        auto chain = search.find_a_chain(p.breaks[k + 1], p.weights[k], p.weights[k + 1]);
        if (!chain) {
            c.failing_pair = k;
            c.reason = "no " + p.breaks[k + 1].get_str() + "-chain for pair " + std::to_string(k + 1);
            return c;
        }
        c.chains.push_back(std::move(*chain));
    }
    if (!(p.weights.back() == p.shape)) {
        auto chain = search.find_a_chain(Rational(1), p.weights.back(), p.shape);
        if (!chain) {
            c.failing_pair = s - 1;
            c.reason = "no 1-chain from the last weight to the shape";
            return c;
        }
        c.chains.push_back(std::move(*chain));
    }
    c.ok = true;
    return c;
}

inline GlsCertificate verify_gls(const WeightContext& ctx, const GLSPath& p, std::size_t height_bound = unbounded) {
    OrbitSearch search(ctx, height_bound);
    return verify_gls(ctx, p, search);
}

// Membership rule for an imaginary index outside an enumeration: candidate from the path operator,
// accepted when it is a GLS path of the same shape mapping back under f.
inline std::optional<GLSPath> gls_e(const WeightContext& ctx, std::size_t i, const GLSPath& p,
                                    std::size_t height_bound = unbounded) {
    if (ctx.is_real(i)) return gls_e_real(ctx, i, p);
    auto up = apply_e(ctx, i, render(ctx, p));
    if (!up) return std::nullopt;
    GLSPath cand = gls_from_path(p.shape, *up);
    if (!(depth_below(p.shape, gls_weight(ctx, cand)) >= 0)) return std::nullopt;
    if (!verify_gls(ctx, cand, height_bound)) return std::nullopt;
    auto back = gls_f(ctx, i, cand);
    if (!back || !(*back == p)) return std::nullopt;
    return cand;
}

// Crystal model on GLS paths of one shape.
class GlsModel {
public:
    using Element = GLSPath;
    explicit GlsModel(const WeightContext& ctx) : ctx_(ctx) {}
    const WeightContext& context() const { return ctx_; }
    std::optional<GLSPath> f(std::size_t i, const GLSPath& p) const { return gls_f(ctx_, i, p); }
    std::optional<GLSPath> e(std::size_t i, const GLSPath& p) const { return gls_e(ctx_, i, p); }
    Weight wt(const GLSPath& p) const { return gls_weight(ctx_, p); }
    ExtInt eps(std::size_t i, const GLSPath& p) const { return gls_epsilon(ctx_, i, p); }
    ExtInt phi(std::size_t i, const GLSPath& p) const { return gls_phi(ctx_, i, p); }
    static constexpr bool category_B = true;

private:
    const WeightContext& ctx_;
};

using GlsGraph = CrystalGraph<GLSPath>;

inline GlsGraph enumerate(const WeightContext& ctx, const Weight& lambda, std::size_t depth, bool parallel = false) {
    if (!is_P_plus(ctx, lambda)) throw std::domain_error("shape must be dominant integral");
    GlsModel model(ctx);
    return generate_from(model, straight_gls(lambda), depth, GenerateOptions{false, parallel});
}

// Imaginary e inside an enumerated crystal: the reversed f-edge.
inline std::optional<GLSPath> gls_e_in(const GlsGraph& g, std::size_t i, const GLSPath& p) {
    auto at = g.find(p);
    if (!at) throw std::invalid_argument("path is not a node of the enumerated crystal");
    const Link& l = g.nodes[*at].e[i];
    if (!l.is_edge()) return std::nullopt;
    return g.nodes[l.target].element;
}

inline std::string format_gls(const WeightContext& ctx, const GLSPath& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < p.weights.size(); ++j) os << (j ? ", " : "") << format_weight(ctx, p.weights[j]);
    os << "; ";
    for (std::size_t j = 0; j < p.breaks.size(); ++j) os << (j ? ", " : "") << p.breaks[j].get_str();
    os << ")";
    return os.str();
}

inline std::string format_breaks(const GLSPath& p) {
    std::string s;
    for (std::size_t j = 0; j < p.breaks.size(); ++j) s += (j ? " " : "") + p.breaks[j].get_str();
    return s;
}

struct JoinCertificate {
    std::vector<Weight> mu_chain;         // lower end first, ends at the shape of the right path
    std::vector<OrbitRoot> mu_roots;      // mu_chain[j] = r_{mu_roots[j]} mu_chain[j+1]
    std::vector<Rational> coroot_values;  // coroot of mu_roots[j] on the partially moved left shape
    std::vector<bool> kept;               // mu_roots[j] survives the omission rule
    Weight tau_bar_lambda;
    bool condition1 = false;
    bool condition2_restricted = false;
    bool condition2_full = false;
    std::optional<AChain> s_chain;
};

struct JoinOutcome {
    std::optional<PiecewisePath> path;
    int failed_condition = 0;  // 1 or 2 when rejected
    JoinCertificate certificate;
    bool accepted() const { return path.has_value(); }
};

class JoinRejected : public std::runtime_error {
public:
    JoinRejected(int condition, JoinCertificate witness)
        : std::runtime_error("joining condition " + std::to_string(condition) + " fails"),
          condition_(condition),
          witness_(std::move(witness)) {}
    int condition() const { return condition_; }
    const JoinCertificate& witness() const { return witness_; }

private:
    int condition_;
    JoinCertificate witness_;
};

inline JoinOutcome try_properly_join(const WeightContext& ctx, const GLSPath& left, const GLSPath& right, const Rational& s,
                                     const Rational& s2, OrbitSearch& search) {
    const std::size_t k = left.weights.size();
    if (!(s > 0 && s <= s2 && s2 < 1)) throw std::invalid_argument("join needs 0 < s <= s' < 1");
    if (!(left.breaks[k - 1] < s)) throw std::invalid_argument("join point s must follow the last break of the left path");
    if (!(s2 < right.breaks[1])) throw std::invalid_argument("join point s' must precede the first break of the right path");
    GlsCertificate rc = verify_gls(ctx, right, search);
    if (!rc) throw std::invalid_argument("right path is not a GLS path: " + rc.reason);

    JoinOutcome out;
    JoinCertificate& cert = out.certificate;
    cert.mu_chain.push_back(right.weights.front());
    for (auto& ch : rc.chains) {
        for (std::size_t t = 1; t < ch.weights.size(); ++t) cert.mu_chain.push_back(ch.weights[t]);
        cert.mu_roots.insert(cert.mu_roots.end(), ch.roots.begin(), ch.roots.end());
    }
    const std::size_t L = cert.mu_roots.size();
    cert.coroot_values.assign(L, Rational(0));
    cert.kept.assign(L, false);
    Weight y = left.shape;
    cert.condition2_full = cert.condition2_restricted = true;
    for (std::size_t j = L; j-- > 0;) {
        const OrbitRoot& beta = cert.mu_roots[j];
        Rational c = beta.coroot_value(ctx, y);
        cert.coroot_values[j] = c;
        if (!beta.real && !(s * c < 1)) {
            cert.condition2_full = false;
            if (c != 0) cert.condition2_restricted = false;
        }
        if (c != 0) {
            cert.kept[j] = true;
            y = beta.reflect(ctx, y);
        }
    }
    cert.tau_bar_lambda = y;
    const Weight& last = left.weights.back();
    if (last == y) {
        cert.condition1 = true;
    } else {
        cert.s_chain = search.find_a_chain(s, last, y);
        cert.condition1 = cert.s_chain.has_value();
    }
    if (!cert.condition1) {
        out.failed_condition = 1;
        return out;
    }
    if (!cert.condition2_restricted) {
        out.failed_condition = 2;
        return out;
    }
    std::vector<Weight> ws(left.weights.begin(), left.weights.end());
    ws.push_back(ctx.zero());
    ws.insert(ws.end(), right.weights.begin(), right.weights.end());
    std::vector<Rational> bs(left.breaks.begin(), left.breaks.end() - 1);
    bs.push_back(s);
    bs.push_back(s2);
    bs.insert(bs.end(), right.breaks.begin() + 1, right.breaks.end());
    out.path = render_sequence(ctx, ws, bs);
    return out;
}

inline JoinOutcome try_properly_join(const WeightContext& ctx, const GLSPath& left, const GLSPath& right, const Rational& s,
                                     const Rational& s2, std::size_t height_bound = unbounded) {
    OrbitSearch search(ctx, height_bound);
    return try_properly_join(ctx, left, right, s, s2, search);
}

inline PiecewisePath properly_join(const WeightContext& ctx, const GLSPath& left, const GLSPath& right, const Rational& s,
                                   const Rational& s2, std::size_t height_bound = unbounded) {
    JoinOutcome o = try_properly_join(ctx, left, right, s, s2, height_bound);
    if (!o.accepted()) throw JoinRejected(o.failed_condition, o.certificate);
    return *o.path;
}

}  // namespace gkm
