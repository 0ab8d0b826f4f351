#pragma once

#include "root_data.hpp"
#include "text_io.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gkm {

// Piecewise-linear path from 0, given by its vertices (t_k, value_k) with t strictly increasing from 0 to 1.
class PiecewisePath {
public:
    PiecewisePath() = default;

    PiecewisePath(std::vector<Rational> t, std::vector<Weight> v) : t_(std::move(t)), v_(std::move(v)) {
        if (t_.size() != v_.size() || t_.size() < 2) throw std::invalid_argument("path needs at least two vertices");
        if (t_.front() != 0 || t_.back() != 1) throw std::invalid_argument("path parameter must run from 0 to 1");
        for (std::size_t k = 1; k < t_.size(); ++k)
            if (!(t_[k - 1] < t_[k])) throw std::invalid_argument("path parameters must be strictly increasing");
        if (!v_.front().is_zero()) throw std::invalid_argument("path must start at 0");
        drop_redundant_vertices();
    }

    const std::vector<Rational>& times() const { return t_; }
    const std::vector<Weight>& values() const { return v_; }
    std::size_t size() const { return t_.size(); }
    const Weight& endpoint() const { return v_.back(); }

    Weight at(const Rational& t) const {
        if (t <= 0) return v_.front();
        if (t >= 1) return v_.back();
        std::size_t k = 1;
        while (t_[k] < t) ++k;
        if (t_[k] == t) return v_[k];
        Rational u = (t - t_[k - 1]) / (t_[k] - t_[k - 1]);
        return v_[k - 1] + u * (v_[k] - v_[k - 1]);
    }

    // Vertex values with pauses and straight-through vertices removed: equal iff equal up to reparametrization.
    std::vector<Weight> shape() const {
        std::vector<Weight> out;
        for (auto& v : v_) {
            if (!out.empty() && out.back() == v) continue;
            while (out.size() >= 2 && positively_proportional(out.back() - out[out.size() - 2], v - out.back()))
                out.pop_back();
            out.push_back(v);
        }
        return out;
    }

    friend bool operator==(const PiecewisePath& a, const PiecewisePath& b) { return a.shape() == b.shape(); }
    friend bool operator<(const PiecewisePath& a, const PiecewisePath& b) { return a.shape() < b.shape(); }

    static bool positively_proportional(const Weight& d1, const Weight& d2) {
        auto flat = [](const Weight& w) {
            std::vector<Rational> f = w.base;
            f.insert(f.end(), w.root.begin(), w.root.end());
            return f;
        };
        auto a = flat(d1), b = flat(d2);
        std::size_t k = 0;
        while (k < a.size() && a[k] == 0) ++k;
        if (k == a.size()) return false;
        Rational c = b[k] / a[k];
        if (c <= 0) return false;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (b[j] != c * a[j]) return false;
        return true;
    }

private:
    // Removes vertices lying on the straight segment between their neighbours at matching speed.
    void drop_redundant_vertices() {
        std::vector<Rational> t{t_.front()};
        std::vector<Weight> v{v_.front()};
        for (std::size_t k = 1; k < t_.size(); ++k) {
            if (v.size() >= 2) {
                const Rational& t0 = t[t.size() - 2];
                const Rational& t1 = t.back();
                Rational u = (t1 - t0) / (t_[k] - t0);
                Weight interp = v[v.size() - 2] + u * (v_[k] - v[v.size() - 2]);
                if (interp == v.back()) {
                    t.pop_back();
                    v.pop_back();
                }
            }
            t.push_back(t_[k]);
            v.push_back(v_[k]);
        }
        t_ = std::move(t);
        v_ = std::move(v);
    }

    std::vector<Rational> t_;
    std::vector<Weight> v_;
};

inline PiecewisePath linear_path(const WeightContext& ctx, const Weight& lambda) {
    if (!ctx.in_P(lambda)) throw std::domain_error("linear path endpoint must be integral");
    return PiecewisePath({Rational(0), Rational(1)}, {ctx.zero(), lambda});
}

// Piecewise-linear real function given by vertices.
class PLFunction {
public:
    PLFunction(std::vector<Rational> t, std::vector<Rational> h) : t_(std::move(t)), h_(std::move(h)) {}

    const std::vector<Rational>& times() const { return t_; }
    const std::vector<Rational>& values() const { return h_; }

    Rational at(const Rational& t) const {
        if (t <= 0) return h_.front();
        if (t >= 1) return h_.back();
        std::size_t k = 1;
        while (t_[k] < t) ++k;
        if (t_[k] == t) return h_[k];
        return h_[k - 1] + (t - t_[k - 1]) / (t_[k] - t_[k - 1]) * (h_[k] - h_[k - 1]);
    }

    Rational min() const { return *std::min_element(h_.begin(), h_.end()); }

    Rational min_from(const Rational& from) const {
        Rational best = at(from);
        for (std::size_t k = 0; k < t_.size(); ++k)
            if (t_[k] > from && h_[k] < best) best = h_[k];
        return best;
    }
    Rational max_from(const Rational& from) const {
        Rational best = at(from);
        for (std::size_t k = 0; k < t_.size(); ++k)
            if (t_[k] > from && h_[k] > best) best = h_[k];
        return best;
    }

    // Smallest t >= from with h(t) = value.
    std::optional<Rational> first_hit(const Rational& from, const Rational& value) const {
        Rational h0 = at(from);
        if (h0 == value) return from;
        Rational s0 = from;
        for (std::size_t k = 1; k < t_.size(); ++k) {
            if (t_[k] <= from) continue;
            if (t_[k - 1] > from) {
                s0 = t_[k - 1];
                h0 = h_[k - 1];
            }
            const Rational& h1 = h_[k];
            if ((h0 - value) * (h1 - value) <= 0 && h1 != h0)
                return s0 + (value - h0) / (h1 - h0) * (t_[k] - s0);
            if (h1 == value) return t_[k];
        }
        return std::nullopt;
    }

    // Largest t <= upto with h(t) = value.
    std::optional<Rational> last_hit(const Rational& upto, const Rational& value) const {
        Rational h1 = at(upto);
        if (h1 == value) return upto;
        Rational s1 = upto;
        for (std::size_t k = t_.size() - 1; k >= 1; --k) {
            if (t_[k - 1] >= upto) continue;
            if (t_[k] < upto) {
                s1 = t_[k];
                h1 = h_[k];
            }
            const Rational& h0 = h_[k - 1];
            if ((h0 - value) * (h1 - value) <= 0 && h1 != h0)
                return s1 - (value - h1) / (h0 - h1) * (s1 - t_[k - 1]);
            if (h0 == value) return t_[k - 1];
        }
        return std::nullopt;
    }

    // Strictly (or weakly) increasing on [lo, hi].
    bool increasing_on(const Rational& lo, const Rational& hi, bool strict) const {
        for (std::size_t k = 1; k < t_.size(); ++k) {
            if (t_[k] <= lo || t_[k - 1] >= hi) continue;
            if (strict ? h_[k] <= h_[k - 1] : h_[k] < h_[k - 1]) return false;
        }
        return true;
    }

private:
    std::vector<Rational> t_;
    std::vector<Rational> h_;
};

inline PLFunction h_function(const WeightContext& ctx, std::size_t i, const PiecewisePath& p) {
    std::vector<Rational> h;
    h.reserve(p.size());
    for (auto& v : p.values()) h.push_back(ctx.pairing(i, v));
    return PLFunction(p.times(), std::move(h));
}

struct HProfile {
    std::size_t index = 0;
    std::vector<std::pair<Rational, Rational>> points;
    Rational m;
    std::optional<Rational> f_plus, f_minus, e_plus, e_minus;
    bool f_defined = false;
    bool e_defined = false;
};

inline HProfile h_profile(const WeightContext& ctx, std::size_t i, const PiecewisePath& p) {
    PLFunction h = h_function(ctx, i, p);
    HProfile out;
    out.index = i;
    for (std::size_t k = 0; k < p.size(); ++k) out.points.emplace_back(h.times()[k], h.values()[k]);
    out.m = Rational(ceil_div(h.min()));
    const Rational one(1);
    out.f_plus = h.last_hit(one, out.m);
    if (out.f_plus && *out.f_plus < 1) {
        out.f_minus = h.first_hit(*out.f_plus, out.m + 1);
        out.f_defined = out.f_minus.has_value();
    }
    if (ctx.is_real(i)) {
        out.e_plus = h.first_hit(Rational(0), out.m);
        if (out.e_plus && *out.e_plus > 0) {
            out.e_minus = h.last_hit(*out.e_plus, out.m + 1);
            out.e_defined = out.e_minus.has_value();
        }
    } else {
        const Rational aii(ctx.a(i, i));
        out.e_minus = out.f_plus;
        if (!out.e_minus || *out.e_minus == 1) return out;
        if (h.max_from(*out.e_minus) < out.m + 1 - aii) return out;
        out.e_plus = h.first_hit(*out.e_minus, out.m + 1 - aii);
        if (!out.e_plus) return out;
        if (h.min_from(*out.e_plus) <= out.m - aii) return out;
        out.e_defined = true;
    }
    return out;
}

namespace detail {

// Rebuilds the path after inserting vertices at cut points and transforming each vertex by its zone.
template <class Zone>
PiecewisePath transform_path(const PiecewisePath& p, const std::vector<Rational>& cuts, Zone zone) {
    std::vector<Rational> t = p.times();
    std::vector<Weight> v = p.values();
    for (auto& c : cuts) {
        auto it = std::lower_bound(t.begin(), t.end(), c);
        if (it != t.end() && *it == c) continue;
        std::size_t k = static_cast<std::size_t>(it - t.begin());
        Weight val = p.at(c);
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(k), c);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(k), std::move(val));
    }
    for (std::size_t k = 0; k < t.size(); ++k) v[k] = zone(t[k], v[k]);
    return PiecewisePath(std::move(t), std::move(v));
}

}  // namespace detail

inline std::optional<PiecewisePath> apply_f(const WeightContext& ctx, std::size_t i, const PiecewisePath& p) {
    HProfile prof = h_profile(ctx, i, p);
    if (!prof.f_defined) return std::nullopt;
    const Rational fp = *prof.f_plus, fm = *prof.f_minus;
    const Weight anchor = p.at(fp);
    const Weight alpha = ctx.simple_root(i);
    return detail::transform_path(p, {fp, fm}, [&](const Rational& t, const Weight& v) {
        if (t <= fp) return v;
        if (t <= fm) return anchor + reflect(ctx, i, v - anchor);
        return v - alpha;
    });
}

inline std::optional<PiecewisePath> apply_e(const WeightContext& ctx, std::size_t i, const PiecewisePath& p) {
    HProfile prof = h_profile(ctx, i, p);
    if (!prof.e_defined) return std::nullopt;
    const Rational em = *prof.e_minus, ep = *prof.e_plus;
    const Weight anchor = p.at(em);
    const Weight alpha = ctx.simple_root(i);
    const bool real = ctx.is_real(i);
    return detail::transform_path(p, {em, ep}, [&](const Rational& t, const Weight& v) {
        if (t <= em) return v;
        if (t <= ep) return anchor + (real ? reflect(ctx, i, v - anchor) : reflect_inverse(ctx, i, v - anchor));
        return v + alpha;
    });
}

inline PiecewisePath concatenate(const WeightContext& ctx, const PiecewisePath& p1, const PiecewisePath& p2,
                                 const Rational& s) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("junction parameter must lie in (0,1)");
    if (!ctx.in_P(p1.endpoint())) throw std::domain_error("junction weight is not integral");
    std::vector<Rational> t;
    std::vector<Weight> v;
    for (std::size_t k = 0; k < p1.size(); ++k) {
        t.push_back(s * p1.times()[k]);
        v.push_back(p1.values()[k]);
    }
    for (std::size_t k = 1; k < p2.size(); ++k) {
        t.push_back(s + (1 - s) * p2.times()[k]);
        v.push_back(p1.endpoint() + p2.values()[k]);
    }
    return PiecewisePath(std::move(t), std::move(v));
}

inline bool is_integral(const WeightContext& ctx, const PiecewisePath& p) {
    for (std::size_t i = 0; i < ctx.rank(); ++i)
        if (!is_integer(h_function(ctx, i, p).min())) return false;
    return true;
}

inline bool is_monotone(const WeightContext& ctx, const PiecewisePath& p, bool strict = true) {
    for (std::size_t i = 0; i < ctx.rank(); ++i) {
        HProfile prof = h_profile(ctx, i, p);
        if (!prof.f_defined) continue;
        PLFunction h = h_function(ctx, i, p);
        if (!h.increasing_on(*prof.f_plus, *prof.f_minus, strict)) return false;
        // h >= m+1 after f_minus: check vertices beyond it (h is linear between them).
        for (std::size_t k = 0; k < p.size(); ++k)
            if (h.times()[k] > *prof.f_minus && h.values()[k] < prof.m + 1) return false;
    }
    return true;
}

// Crystal data of the ambient path set.
inline std::int64_t path_epsilon(const WeightContext& ctx, std::size_t i, const PiecewisePath& p) {
    if (ctx.is_imaginary(i)) return 0;
    return -to_int64(Rational(ceil_div(h_function(ctx, i, p).min())));
}

inline std::int64_t path_phi(const WeightContext& ctx, std::size_t i, const PiecewisePath& p) {
    return path_epsilon(ctx, i, p) + to_int64(ctx.pairing(i, p.endpoint()));
}

// "t : weight" lines.
inline std::string format_path(const WeightContext& ctx, const PiecewisePath& p) {
    std::ostringstream os;
    for (std::size_t k = 0; k < p.size(); ++k) os << p.times()[k].get_str() << " : " << format_weight(ctx, p.values()[k]) << "\n";
    return os.str();
}

inline PiecewisePath parse_path(const WeightContext& ctx, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Rational> t;
    std::vector<Weight> v;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("path line lacks ':'");
        std::string ts = line.substr(0, colon);
        ts.erase(0, ts.find_first_not_of(" \t"));
        ts.erase(ts.find_last_not_of(" \t") + 1);
        t.push_back(rational_from(ts));
        v.push_back(parse_weight(ctx, line.substr(colon + 1)));
    }
    return PiecewisePath(std::move(t), std::move(v));
}

}  // namespace gkm
