#pragma once

#include "crystal_graph.hpp"
#include "gls.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gkm {

class NonIntegralOffset : public std::logic_error {
public:
    explicit NonIntegralOffset(const std::string& m) : std::logic_error("non-integral orbit offset: " + m) {}
};

using Offset = std::vector<std::int64_t>;

inline std::int64_t offset_degree(const Offset& c) {
    std::int64_t d = 0;
    for (auto x : c) d += x;
    return d;
}

// Sum of coeff * e^{base - sum c_i alpha_i} over offsets of degree <= depth.
struct CharacterSeries {
    Weight base;
    std::size_t rank = 0;
    std::size_t depth = 0;
    std::map<Offset, Integer> terms;

    void add(const Offset& c, const Integer& coeff) {
        if (offset_degree(c) > static_cast<std::int64_t>(depth)) return;
        auto& slot = terms[c];
        slot += coeff;
        if (slot == 0) terms.erase(c);
    }
    Integer coeff(const Offset& c) const {
        auto it = terms.find(c);
        return it == terms.end() ? Integer(0) : it->second;
    }
    friend bool operator==(const CharacterSeries& a, const CharacterSeries& b) {
        return a.base == b.base && a.depth == b.depth && a.terms == b.terms;
    }
};

inline CharacterSeries series_one(const Weight& base, std::size_t rank, std::size_t depth) {
    CharacterSeries s{base, rank, depth, {}};
    s.add(Offset(rank, 0), Integer(1));
    return s;
}

inline CharacterSeries multiply(const CharacterSeries& a, const CharacterSeries& b) {
    CharacterSeries out{a.base + b.base, a.rank, std::min(a.depth, b.depth), {}};
    for (auto& [ca, xa] : a.terms)
        for (auto& [cb, xb] : b.terms) {
            Offset c(a.rank);
            for (std::size_t k = 0; k < a.rank; ++k) c[k] = ca[k] + cb[k];
            out.add(c, xa * xb);
        }
    return out;
}

// a / b truncated at min depth; b must have constant term 1.
inline CharacterSeries divide(const CharacterSeries& a, const CharacterSeries& b) {
    const Offset zero(a.rank, 0);
    if (b.coeff(zero) != 1) throw std::domain_error("series divisor must have constant term 1");
    CharacterSeries q{a.base - b.base, a.rank, std::min(a.depth, b.depth), {}};
    // Enumerate offsets of each degree in lexicographic order; q[c] = a[c] - sum_{d != 0} b[d] q[c - d].
    std::vector<Offset> order;
    Offset cur(a.rank, 0);
    std::function<void(std::size_t, std::int64_t)> gen = [&](std::size_t k, std::int64_t left) {
        if (k + 1 == a.rank) {
            cur[k] = left;
            order.push_back(cur);
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            cur[k] = v;
            gen(k + 1, left - v);
        }
    };
    for (std::int64_t d = 0; d <= static_cast<std::int64_t>(q.depth); ++d) gen(0, d);
    for (auto& c : order) {
        Integer v = a.coeff(c);
        for (auto& [d, xb] : b.terms) {
            if (d == zero) continue;
            Offset rest(a.rank);
            bool ok = true;
            for (std::size_t k = 0; k < a.rank && ok; ++k) {
                rest[k] = c[k] - d[k];
                ok = rest[k] >= 0;
            }
            if (ok) v -= xb * q.coeff(rest);
        }
        if (v != 0) q.terms[c] = v;
    }
    return q;
}

template <class E>
CharacterSeries char_of_graph(const CrystalGraph<E>& g) {
    const std::size_t n = g.ctx->rank();
    CharacterSeries s{g.root().wt, n, g.depth_limit, {}};
    for (auto& node : g.nodes) {
        Weight d = g.root().wt - node.wt;
        Offset c(n);
        for (std::size_t k = 0; k < n; ++k) c[k] = to_int64(d.root[k]);
        s.add(c, Integer(1));
    }
    return s;
}

// Sets of pairwise orthogonal imaginary indices (i != j), at most depth of them.
// With a weight given, every member must pair to zero with it.
inline std::vector<std::vector<std::size_t>> orthogonal_subsets(const WeightContext& ctx,
                                                                const std::optional<Weight>& restrict_to,
                                                                std::size_t depth) {
    std::vector<std::size_t> im;
    for (std::size_t i = 0; i < ctx.rank(); ++i)
        if (ctx.is_imaginary(i) && (!restrict_to || ctx.pairing(i, *restrict_to) == 0)) im.push_back(i);
    if (im.size() > 30) throw std::length_error("too many imaginary indices for subset enumeration");
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << im.size()); ++mask) {
        std::vector<std::size_t> F;
        for (std::size_t k = 0; k < im.size(); ++k)
            if (mask >> k & 1) F.push_back(im[k]);
        if (F.size() > depth) continue;
        bool orth = true;
        for (std::size_t x = 0; x < F.size() && orth; ++x)
            for (std::size_t y = 0; y < F.size() && orth; ++y)
                if (x != y && ctx.a(F[x], F[y]) != 0) orth = false;
        if (orth) out.push_back(std::move(F));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

struct SignedOffset {
    Offset offset;  // x - w x
    bool odd = false;
};

// W-orbit of a weight that is regular dominant on the real indices, with length parity; offsets up to max_degree.
inline std::vector<SignedOffset> signed_weyl_orbit(const WeightContext& ctx, const Weight& x, std::int64_t max_degree) {
    const std::size_t n = ctx.rank();
    std::map<Offset, bool> seen;
    std::vector<SignedOffset> out;
    std::deque<std::pair<Weight, SignedOffset>> queue;
    SignedOffset start{Offset(n, 0), false};
    seen.emplace(start.offset, false);
    out.push_back(start);
    queue.emplace_back(x, start);
    while (!queue.empty()) {
        auto [y, so] = std::move(queue.front());
        queue.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
            if (!ctx.is_real(j)) continue;
            Rational c = ctx.pairing(j, y);
            if (c <= 0) continue;
            if (!is_integer(c)) throw NonIntegralOffset("pairing " + c.get_str() + " on index " + std::to_string(j + 1));
            SignedOffset nx{so.offset, !so.odd};
            nx.offset[j] += to_int64(c);
            if (offset_degree(nx.offset) > max_degree) continue;
            auto [it, fresh] = seen.emplace(nx.offset, nx.odd);
            if (!fresh) {
                if (it->second != nx.odd) throw std::logic_error("inconsistent length parity in orbit search");
                continue;
            }
            out.push_back(nx);
            Weight ny = y;
            ny.root[j] -= c;
            queue.emplace_back(std::move(ny), std::move(nx));
        }
    }
    return out;
}

namespace detail {

// Sum over w and F of signed e^{w(top - s(F))}, as offsets from top.
inline CharacterSeries alternating_sum(const WeightContext& ctx, const Weight& top,
                                       const std::vector<std::vector<std::size_t>>& sets, std::size_t depth) {
    const std::size_t n = ctx.rank();
    CharacterSeries s{top, n, depth, {}};
    for (auto& F : sets) {
        Weight x = top;
        Offset shift(n, 0);
        for (auto i : F) {
            x.root[i] -= 1;
            shift[i] += 1;
        }
        std::int64_t room = static_cast<std::int64_t>(depth) - offset_degree(shift);
        if (room < 0) continue;
        for (auto& so : signed_weyl_orbit(ctx, x, room)) {
            Offset c = shift;
            for (std::size_t k = 0; k < n; ++k) {
                c[k] += so.offset[k];
                if (c[k] < 0) throw NonIntegralOffset("negative offset");
            }
            bool odd = so.odd != (F.size() % 2 == 1);
            s.add(c, Integer(odd ? -1 : 1));
        }
    }
    return s;
}

}  // namespace detail

struct WkbParts {
    CharacterSeries numerator;    // relative to lambda + rho
    CharacterSeries denominator;  // relative to rho
    CharacterSeries quotient;     // relative to lambda
};

inline WkbParts wkb_parts(const WeightContext& ctx, const Weight& lambda, std::size_t depth) {
    if (!is_P_plus(ctx, lambda)) throw std::domain_error("character needs a dominant integral weight");
    const Weight rho = ctx.rho();
    WkbParts p;
    p.numerator = detail::alternating_sum(ctx, lambda + rho, orthogonal_subsets(ctx, lambda, depth), depth);
    p.denominator = detail::alternating_sum(ctx, rho, orthogonal_subsets(ctx, std::nullopt, depth), depth);
    p.quotient = divide(p.numerator, p.denominator);
    return p;
}

inline CharacterSeries wkb_series(const WeightContext& ctx, const Weight& lambda, std::size_t depth) {
    return wkb_parts(ctx, lambda, depth).quotient;
}

struct CharacterReport {
    bool equal = false;
    std::size_t terms = 0;
    std::vector<std::string> differences;
    CharacterSeries crystal, formula;

    std::string text() const {
        if (equal) return "equal, " + std::to_string(terms) + " terms";
        std::string s = "different, " + std::to_string(differences.size()) + " mismatches";
        for (auto& d : differences) s += "\n  " + d;
        return s;
    }
};

inline std::string format_offset(const Offset& c) {
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k]);
    return s;
}

inline CharacterReport compare_series(const CharacterSeries& crystal, const CharacterSeries& formula) {
    CharacterReport r;
    r.crystal = crystal;
    r.formula = formula;
    std::set<Offset> keys;
    for (auto& [c, x] : crystal.terms) keys.insert(c);
    for (auto& [c, x] : formula.terms) keys.insert(c);
    for (auto& c : keys) {
        Integer a = crystal.coeff(c), b = formula.coeff(c);
        if (a != b) r.differences.push_back("[" + format_offset(c) + "] crystal " + a.get_str() + " formula " + b.get_str());
    }
    r.equal = r.differences.empty() && crystal.base == formula.base;
    r.terms = crystal.terms.size();
    return r;
}

inline CharacterReport compare_characters(const WeightContext& ctx, const Weight& lambda, std::size_t depth,
                                          bool parallel = false) {
    return compare_series(char_of_graph(enumerate(ctx, lambda, depth, parallel)), wkb_series(ctx, lambda, depth));
}

inline std::string format_character(const WeightContext& ctx, const CharacterSeries& s) {
    std::ostringstream os;
    os << "# lambda=" << format_weight(ctx, s.base) << " depth=" << s.depth << "\n";
    for (auto& [c, x] : s.terms) os << format_offset(c) << " : " << x.get_str() << "\n";
    return os.str();
}

}  // namespace gkm
