#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkm {

class MatrixError : public std::invalid_argument {
public:
    enum class Kind { AxisViolation, AsymmetricZero };

    // i, j are 1-based. axiom: 1 = diagonal, 2 = off-diagonal sign, 3 = zero symmetry.
    MatrixError(Kind kind, std::size_t i, std::size_t j, int axiom, const std::string& detail)
        : std::invalid_argument(label(kind, i, j) + ": " + detail), kind_(kind), i_(i), j_(j), axiom_(axiom) {}

    Kind kind() const { return kind_; }
    std::size_t row() const { return i_; }
    std::size_t col() const { return j_; }
    int axiom() const { return axiom_; }
    std::string label() const { return label(kind_, i_, j_); }

private:
    static std::string label(Kind k, std::size_t i, std::size_t j) {
        return std::string(k == Kind::AxisViolation ? "AxisViolation(" : "AsymmetricZero(") + std::to_string(i) +
               "," + std::to_string(j) + ")";
    }
    Kind kind_;
    std::size_t i_, j_;
    int axiom_;
};

class UnknownBase : public std::out_of_range {
public:
    explicit UnknownBase(const std::string& name) : std::out_of_range("unknown base weight '" + name + "'") {}
};

class BorcherdsCartanMatrix {
public:
    BorcherdsCartanMatrix() = default;

    std::size_t rank() const { return a_.size(); }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
    const std::vector<std::vector<std::int64_t>>& entries() const { return a_; }
    bool is_real(std::size_t i) const { return a_[i][i] == 2; }
    bool is_imaginary(std::size_t i) const { return !is_real(i); }

    std::vector<std::size_t> real_indices() const { return select(true); }
    std::vector<std::size_t> imaginary_indices() const { return select(false); }

    friend bool operator==(const BorcherdsCartanMatrix&, const BorcherdsCartanMatrix&) = default;

    friend BorcherdsCartanMatrix validate_matrix(const std::vector<std::vector<std::int64_t>>&, bool);

private:
    std::vector<std::size_t> select(bool real) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < rank(); ++i)
            if (is_real(i) == real) out.push_back(i);
        return out;
    }
    std::vector<std::vector<std::int64_t>> a_;
};

inline BorcherdsCartanMatrix validate_matrix(const std::vector<std::vector<std::int64_t>>& a,
                                             bool imaginary_diag_zero_allowed = true) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("matrix must have positive rank");
    for (std::size_t i = 0; i < n; ++i)
        if (a[i].size() != n) throw std::invalid_argument("matrix is not square (row " + std::to_string(i + 1) + ")");
    using K = MatrixError::Kind;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t d = a[i][i];
        bool ok = d == 2 || d < 0 || (d == 0 && imaginary_diag_zero_allowed);
        if (!ok)
            throw MatrixError(K::AxisViolation, i + 1, i + 1, 1,
                              "diagonal entry " + std::to_string(d) + " must be 2 or a non-positive integer" +
                                  (d == 0 ? " (zero diagonal disabled)" : ""));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0)
                throw MatrixError(K::AxisViolation, i + 1, j + 1, 2,
                                  "off-diagonal entry " + std::to_string(a[i][j]) + " must be non-positive");
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (a[i][j] == 0) != (a[j][i] == 0))
                throw MatrixError(K::AsymmetricZero, i + 1, j + 1, 3, "a_ij = 0 must hold exactly when a_ji = 0");
    BorcherdsCartanMatrix m;
    m.a_ = a;
    return m;
}

// A weight over a context: coefficients on the named bases followed by simple-root coefficients.
struct Weight {
    std::vector<Rational> base;
    std::vector<Rational> root;

    Weight& operator+=(const Weight& o) {
        check(o);
        for (std::size_t k = 0; k < base.size(); ++k) base[k] += o.base[k];
        for (std::size_t k = 0; k < root.size(); ++k) root[k] += o.root[k];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        check(o);
        for (std::size_t k = 0; k < base.size(); ++k) base[k] -= o.base[k];
        for (std::size_t k = 0; k < root.size(); ++k) root[k] -= o.root[k];
        return *this;
    }
    Weight& operator*=(const Rational& c) {
        for (auto& x : base) x *= c;
        for (auto& x : root) x *= c;
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Rational& c, Weight a) { return a *= c; }
    friend Weight operator-(Weight a) { return a *= Rational(-1); }

    bool is_zero() const {
        return std::all_of(base.begin(), base.end(), [](const Rational& q) { return q == 0; }) &&
               std::all_of(root.begin(), root.end(), [](const Rational& q) { return q == 0; });
    }
    // Base part vanishes: the weight is a rational combination of simple roots.
    bool in_root_span() const {
        return std::all_of(base.begin(), base.end(), [](const Rational& q) { return q == 0; });
    }
    // Nonnegative integer combination of simple roots.
    bool in_Q_plus() const {
        return in_root_span() &&
               std::all_of(root.begin(), root.end(), [](const Rational& q) { return q >= 0 && is_integer(q); });
    }
    Rational height() const {
        Rational h;
        for (auto& x : root) h += x;
        return h;
    }

    friend bool operator==(const Weight& a, const Weight& b) { return a.base == b.base && a.root == b.root; }
    friend bool operator<(const Weight& a, const Weight& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.root < b.root;
    }

private:
    void check(const Weight& o) const {
        if (o.base.size() != base.size() || o.root.size() != root.size())
            throw std::invalid_argument("weights belong to different contexts");
    }
};

struct BaseWeight {
    std::string name;
    std::vector<Rational> pairings;  // pairing of each simple coroot with this base
    bool integral = true;
};

class WeightContext {
public:
    WeightContext() = default;

    // "rho" is added in front of the supplied bases.
    explicit WeightContext(BorcherdsCartanMatrix a, std::vector<BaseWeight> extra = {}) : a_(std::move(a)) {
        const std::size_t n = a_.rank();
        BaseWeight rho{"rho", {}, true};
        for (std::size_t i = 0; i < n; ++i) {
            rho.pairings.emplace_back(Rational(a_(i, i), 2));
            rho.pairings.back().canonicalize();
            if (!is_integer(rho.pairings.back())) rho.integral = false;
        }
        bases_.push_back(std::move(rho));
        for (auto& b : extra) add_base(std::move(b));
    }

    const BorcherdsCartanMatrix& matrix() const { return a_; }
    std::size_t rank() const { return a_.rank(); }
    std::size_t num_bases() const { return bases_.size(); }
    const BaseWeight& base(std::size_t k) const { return bases_[k]; }
    const std::vector<BaseWeight>& bases() const { return bases_; }
    bool is_real(std::size_t i) const { return a_.is_real(i); }
    bool is_imaginary(std::size_t i) const { return a_.is_imaginary(i); }
    std::int64_t a(std::size_t i, std::size_t j) const { return a_(i, j); }

    std::size_t base_index(const std::string& name) const {
        for (std::size_t k = 0; k < bases_.size(); ++k)
            if (bases_[k].name == name) return k;
        throw UnknownBase(name);
    }
    bool has_base(const std::string& name) const {
        return std::any_of(bases_.begin(), bases_.end(), [&](const BaseWeight& b) { return b.name == name; });
    }

    Weight zero() const { return Weight{std::vector<Rational>(num_bases()), std::vector<Rational>(rank())}; }
    Weight base_weight(const std::string& name) const {
        Weight w = zero();
        w.base[base_index(name)] = 1;
        return w;
    }
    Weight rho() const { return base_weight("rho"); }
    Weight simple_root(std::size_t i) const {
        Weight w = zero();
        w.root.at(i) = 1;
        return w;
    }
    Weight root_combination(const std::vector<Rational>& coeffs) const {
        Weight w = zero();
        for (std::size_t k = 0; k < coeffs.size() && k < rank(); ++k) w.root[k] = coeffs[k];
        return w;
    }

    Rational pairing(std::size_t i, const Weight& w) const {
        Rational p;
        for (std::size_t b = 0; b < bases_.size(); ++b)
            if (w.base[b] != 0) p += w.base[b] * bases_[b].pairings[i];
        for (std::size_t j = 0; j < rank(); ++j)
            if (w.root[j] != 0) p += w.root[j] * Rational(a_(i, j));
        return p;
    }

    bool in_P(const Weight& w) const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (!is_integer(pairing(i, w))) return false;
        for (auto& c : w.root)
            if (!is_integer(c)) return false;
        for (std::size_t b = 0; b < bases_.size(); ++b)
            if (bases_[b].integral && !is_integer(w.base[b])) return false;
        return true;
    }

    bool owns(const Weight& w) const { return w.base.size() == num_bases() && w.root.size() == rank(); }

private:
    void add_base(BaseWeight b) {
        if (b.name.empty()) throw std::invalid_argument("empty base name");
        if (has_base(b.name)) throw std::invalid_argument("duplicate base name '" + b.name + "'");
        if (b.name.size() > 1 && b.name[0] == 'a' &&
            std::all_of(b.name.begin() + 1, b.name.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("base name '" + b.name + "' collides with simple-root names");
        if (b.pairings.size() != rank())
            throw std::invalid_argument("base '" + b.name + "' needs " + std::to_string(rank()) + " pairings");
        b.integral = std::all_of(b.pairings.begin(), b.pairings.end(), [](const Rational& q) { return is_integer(q); });
        bases_.push_back(std::move(b));
    }

    BorcherdsCartanMatrix a_;
    std::vector<BaseWeight> bases_;
};

using ContextPtr = std::shared_ptr<const WeightContext>;

inline ContextPtr make_context(BorcherdsCartanMatrix a, std::vector<BaseWeight> extra = {}) {
    return std::make_shared<const WeightContext>(std::move(a), std::move(extra));
}

inline Weight reflect(const WeightContext& ctx, std::size_t i, const Weight& w) {
    Rational p = ctx.pairing(i, w);
    Weight out = w;
    out.root[i] -= p;
    return out;
}

inline Weight reflect_inverse(const WeightContext& ctx, std::size_t i, const Weight& w) {
    if (!ctx.is_imaginary(i))
        throw std::domain_error("reflect_inverse is only defined for imaginary indices (index " + std::to_string(i + 1) +
                                " is real)");
    Rational p = ctx.pairing(i, w) / Rational(1 - ctx.a(i, i));
    Weight out = w;
    out.root[i] += p;
    return out;
}

inline bool is_dominant(const WeightContext& ctx, const Weight& w) {
    for (std::size_t i = 0; i < ctx.rank(); ++i)
        if (ctx.is_real(i) && ctx.pairing(i, w) < 0) return false;
    return true;
}

inline bool is_P_plus(const WeightContext& ctx, const Weight& w) {
    if (!ctx.in_P(w)) return false;
    for (std::size_t i = 0; i < ctx.rank(); ++i)
        if (ctx.pairing(i, w) < 0) return false;
    return true;
}

// Sum of root coefficients of (upper - w); throws when the base parts differ.
inline Rational depth_below(const Weight& upper, const Weight& w) {
    Weight d = upper - w;
    if (!d.in_root_span()) throw std::invalid_argument("weights differ outside the root lattice");
    return d.height();
}

}  // namespace gkm
