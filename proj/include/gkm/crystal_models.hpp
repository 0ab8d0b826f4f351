#pragma once

#include "crystal_graph.hpp"
#include "gls.hpp"
#include "path.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gkm {

// Left factor acts first in the tensor rules; elements are (left, right) pairs.
template <class M1, class M2>
class TensorModel {
public:
    using Left = typename M1::Element;
    using Right = typename M2::Element;
    using Element = std::pair<Left, Right>;
    static constexpr bool category_B = M1::category_B && M2::category_B;

    TensorModel(const M1& left, const M2& right) : l_(left), r_(right) {}
    const WeightContext& context() const { return l_.context(); }
    const M1& left() const { return l_; }
    const M2& right() const { return r_; }

    Weight wt(const Element& b) const { return l_.wt(b.first) + r_.wt(b.second); }

    ExtInt eps(std::size_t i, const Element& b) const {
        return max(l_.eps(i, b.first), r_.eps(i, b.second) - pairing(i, l_.wt(b.first)));
    }
    ExtInt phi(std::size_t i, const Element& b) const {
        return max(l_.phi(i, b.first) + pairing(i, r_.wt(b.second)), r_.phi(i, b.second));
    }

    std::optional<Element> f(std::size_t i, const Element& b) const {
        ExtInt p1 = l_.phi(i, b.first), e2 = r_.eps(i, b.second);
        bool left_side = p1 > e2;
        if constexpr (category_B) {
            if (context().is_imaginary(i) && left_side != (p1 > ExtInt(0)))
                throw std::logic_error("simplified f rule disagrees with the general rule");
        }
        return left_side ? act_left(l_.f(i, b.first), b) : act_right(r_.f(i, b.second), b);
    }

    std::optional<Element> e(std::size_t i, const Element& b) const {
        ExtInt p1 = l_.phi(i, b.first), e2 = r_.eps(i, b.second);
        std::optional<Element> out;
        if (context().is_real(i)) {
            out = p1 >= e2 ? act_left(l_.e(i, b.first), b) : act_right(r_.e(i, b.second), b);
            return out;
        }
        const std::int64_t aii = context().a(i, i);
        if (p1 > e2 - aii)
            out = act_left(l_.e(i, b.first), b);
        else if (p1 > e2)
            out = std::nullopt;
        else
            out = act_right(r_.e(i, b.second), b);
        if constexpr (category_B) {
            std::optional<Element> simple =
                p1 > ExtInt(0) ? act_left(l_.e(i, b.first), b) : act_right(r_.e(i, b.second), b);
            if (simple != out) throw std::logic_error("simplified e rule disagrees with the general rule");
        }
        return out;
    }

    // Which factor the f rule selects: true for the left one.
    bool f_acts_left(std::size_t i, const Element& b) const { return l_.phi(i, b.first) > r_.eps(i, b.second); }

private:
    std::int64_t pairing(std::size_t i, const Weight& w) const { return to_int64(context().pairing(i, w)); }
    static std::optional<Element> act_left(std::optional<Left> x, const Element& b) {
        if (!x) return std::nullopt;
        return Element{std::move(*x), b.second};
    }
    static std::optional<Element> act_right(std::optional<Right> x, const Element& b) {
        if (!x) return std::nullopt;
        return Element{b.first, std::move(*x)};
    }
    M1 l_;
    M2 r_;
};

template <class M1, class M2>
std::optional<typename TensorModel<M1, M2>::Element> tensor_f(const TensorModel<M1, M2>& t, std::size_t i,
                                                              const typename TensorModel<M1, M2>::Element& b) {
    return t.f(i, b);
}

template <class M1, class M2>
std::optional<typename TensorModel<M1, M2>::Element> tensor_e(const TensorModel<M1, M2>& t, std::size_t i,
                                                              const typename TensorModel<M1, M2>::Element& b) {
    return t.e(i, b);
}

// Elementary crystal of one index; the element b(-n) is stored as n.
class ElementaryModel {
public:
    using Element = std::int64_t;
    static constexpr bool category_B = false;

    ElementaryModel(const WeightContext& ctx, std::size_t i) : ctx_(ctx), i_(i) {}
    const WeightContext& context() const { return ctx_; }
    std::size_t index() const { return i_; }

    Weight wt(Element n) const { return Rational(-n) * ctx_.simple_root(i_); }
    ExtInt eps(std::size_t j, Element n) const {
        if (j != i_) return ExtInt::neg_inf();
        return ctx_.is_real(j) ? ExtInt(n) : ExtInt(0);
    }
    ExtInt phi(std::size_t j, Element n) const {
        if (j != i_) return ExtInt::neg_inf();
        return ctx_.is_real(j) ? ExtInt(-n) : ExtInt(-n * ctx_.a(j, j));
    }
    std::optional<Element> f(std::size_t j, Element n) const {
        if (j != i_) return std::nullopt;
        return n + 1;
    }
    std::optional<Element> e(std::size_t j, Element n) const {
        if (j != i_ || n <= 0) return std::nullopt;
        return n - 1;
    }

private:
    const WeightContext& ctx_;
    std::size_t i_;
};

// Ambient path crystal: all piecewise-linear paths with the root operators.
class PathModel {
public:
    using Element = PiecewisePath;
    static constexpr bool category_B = false;

    explicit PathModel(const WeightContext& ctx) : ctx_(ctx) {}
    const WeightContext& context() const { return ctx_; }
    Weight wt(const PiecewisePath& p) const { return p.endpoint(); }
    ExtInt eps(std::size_t i, const PiecewisePath& p) const { return path_epsilon(ctx_, i, p); }
    ExtInt phi(std::size_t i, const PiecewisePath& p) const { return path_phi(ctx_, i, p); }
    std::optional<PiecewisePath> f(std::size_t i, const PiecewisePath& p) const { return apply_f(ctx_, i, p); }
    std::optional<PiecewisePath> e(std::size_t i, const PiecewisePath& p) const { return apply_e(ctx_, i, p); }

private:
    const WeightContext& ctx_;
};

// Eventually periodic index sequence i_1, i_2, ... (0-based indices, 1-based places).
class GeneratorSequence {
public:
    GeneratorSequence(std::vector<std::size_t> preperiod, std::vector<std::size_t> period, std::size_t rank)
        : pre_(std::move(preperiod)), period_(std::move(period)) {
        if (period_.empty()) throw std::invalid_argument("generator sequence needs a nonempty period");
        std::vector<bool> present(rank, false);
        for (auto i : period_) {
            if (i >= rank) throw std::invalid_argument("generator index out of range");
            present[i] = true;
        }
        for (auto i : pre_)
            if (i >= rank) throw std::invalid_argument("generator index out of range");
        for (std::size_t i = 0; i < rank; ++i)
            if (!present[i]) throw std::invalid_argument("every index must recur in the period");
        for (std::size_t k = 1; k <= pre_.size() + period_.size(); ++k)
            if (at(k) == at(k + 1)) throw std::invalid_argument("consecutive generator indices must differ");
    }

    // Cyclic sequence 1, 2, ..., n, 1, 2, ...
    static GeneratorSequence cyclic(std::size_t rank) {
        std::vector<std::size_t> p(rank);
        for (std::size_t i = 0; i < rank; ++i) p[i] = i;
        return GeneratorSequence({}, p, rank);
    }

    std::size_t at(std::size_t place) const {
        if (place == 0) throw std::out_of_range("places are 1-based");
        if (place <= pre_.size()) return pre_[place - 1];
        return period_[(place - 1 - pre_.size()) % period_.size()];
    }

    // First place > after where index i occurs.
    std::size_t next_place(std::size_t i, std::size_t after) const {
        for (std::size_t k = after + 1;; ++k)
            if (at(k) == i) return k;
    }

private:
    std::vector<std::size_t> pre_, period_;
};

// m_k at place k+1; trailing zeros removed.
using BJWord = std::vector<std::int64_t>;

struct KashiwaraData {
    std::vector<ExtInt> r;      // r[k-1] for places 1..r.size()
    ExtInt R;
    std::size_t s = 0;          // smallest place attaining R
    std::optional<std::size_t> l;  // largest such place; none when infinitely many
};

inline KashiwaraData kashiwara(const WeightContext& ctx, const GeneratorSequence& J, std::size_t i, const BJWord& m) {
    KashiwaraData d;
    const std::size_t K = J.next_place(i, m.size());
    auto mk = [&](std::size_t k) { return k <= m.size() ? m[k - 1] : std::int64_t(0); };
    std::int64_t tail = 0;  // sum over j > k of m_j a_{i, i_j}
    d.r.assign(K, ExtInt::neg_inf());
    for (std::size_t k = K; k >= 1; --k) {
        if (J.at(k) == i) d.r[k - 1] = ExtInt(ctx.is_real(i) ? mk(k) : 0) + tail;
        tail += mk(k) * ctx.a(i, J.at(k));
    }
    d.R = ExtInt::neg_inf();
    for (auto& x : d.r) d.R = max(d.R, x);
    for (std::size_t k = 1; k <= K; ++k)
        if (d.r[k - 1] == d.R) {
            d.s = k;
            break;
        }
    if (!(d.R == ExtInt(0))) {
        for (std::size_t k = K; k >= 1; --k)
            if (d.r[k - 1] == d.R) {
                d.l = k;
                break;
            }
    }
    return d;
}

enum class Direction { f, e };

inline std::optional<BJWord> bj_apply(const WeightContext& ctx, const GeneratorSequence& J, Direction dir, std::size_t i,
                                      const BJWord& m) {
    KashiwaraData d = kashiwara(ctx, J, i, m);
    BJWord out = m;
    auto place = [&](std::size_t k) -> std::int64_t& {
        if (out.size() < k) out.resize(k, 0);
        return out[k - 1];
    };
    if (dir == Direction::f) {
        place(d.s) += 1;
    } else if (ctx.is_real(i)) {
        if (!d.l) return std::nullopt;
        place(*d.l) -= 1;
    } else {
        if (d.s > m.size() || m[d.s - 1] == 0) return std::nullopt;
        place(d.s) -= 1;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

class BJModel {
public:
    using Element = BJWord;
    static constexpr bool category_B = false;

    BJModel(const WeightContext& ctx, GeneratorSequence J) : ctx_(ctx), J_(std::move(J)) {}
    const WeightContext& context() const { return ctx_; }
    const GeneratorSequence& sequence() const { return J_; }

    Weight wt(const BJWord& m) const {
        Weight w = ctx_.zero();
        for (std::size_t k = 1; k <= m.size(); ++k) w.root[J_.at(k)] -= m[k - 1];
        return w;
    }
    ExtInt eps(std::size_t i, const BJWord& m) const { return kashiwara(ctx_, J_, i, m).R; }
    ExtInt phi(std::size_t i, const BJWord& m) const { return eps(i, m) + to_int64(ctx_.pairing(i, wt(m))); }
    std::optional<BJWord> f(std::size_t i, const BJWord& m) const { return bj_apply(ctx_, J_, Direction::f, i, m); }
    std::optional<BJWord> e(std::size_t i, const BJWord& m) const { return bj_apply(ctx_, J_, Direction::e, i, m); }

private:
    const WeightContext& ctx_;
    GeneratorSequence J_;
};

}  // namespace gkm
