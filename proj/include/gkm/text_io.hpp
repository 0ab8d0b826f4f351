#pragma once

#include "root_data.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace gkm {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct MatrixFile {
    std::vector<std::vector<std::int64_t>> entries;
    std::vector<BaseWeight> bases;
};

namespace detail {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(const std::string& line) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k >= line.size()) break;
        std::size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        out.push_back({line.substr(start, k - start), start + 1});
    }
    return out;
}

inline bool parse_int64(const std::string& s, std::int64_t& v) {
    if (s.empty()) return false;
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) return false;
    for (std::size_t t = k; t < s.size(); ++t)
        if (!std::isdigit(static_cast<unsigned char>(s[t]))) return false;
    try {
        v = std::stoll(s);
    } catch (...) {
        return false;
    }
    return true;
}

}  // namespace detail

// Line 1: n. Next n lines: matrix rows. Optional "bases:" line, then "name p_1 ... p_n" per line.
// Blank lines and lines starting with '#' are skipped.
inline MatrixFile parse_matrix_file(std::istream& in) {
    MatrixFile out;
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&](std::vector<detail::Token>& toks) {
        while (std::getline(in, line)) {
            ++lineno;
            toks = detail::split_tokens(line);
            if (toks.empty() || toks[0].text[0] == '#') continue;
            return true;
        }
        return false;
    };
    std::vector<detail::Token> toks;
    if (!next_line(toks)) throw ParseError(lineno + 1, 1, "expected rank on first line");
    std::int64_t n = 0;
    if (toks.size() != 1 || !detail::parse_int64(toks[0].text, n) || n <= 0)
        throw ParseError(lineno, toks[0].column, "expected a single positive rank, got '" + toks[0].text + "'");
    for (std::int64_t r = 0; r < n; ++r) {
        if (!next_line(toks)) throw ParseError(lineno + 1, 1, "expected matrix row " + std::to_string(r + 1));
        std::vector<std::int64_t> row;
        for (auto& t : toks) {
            std::int64_t v;
            if (!detail::parse_int64(t.text, v)) throw ParseError(lineno, t.column, "expected integer, got '" + t.text + "'");
            row.push_back(v);
        }
        if (row.size() != static_cast<std::size_t>(n))
            throw ParseError(lineno, toks.back().column + toks.back().text.size(),
                             "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        out.entries.push_back(std::move(row));
    }
    if (!next_line(toks)) return out;
    if (toks.size() != 1 || toks[0].text != "bases:")
        throw ParseError(lineno, toks[0].column, "expected 'bases:' or end of file, got '" + toks[0].text + "'");
    while (next_line(toks)) {
        BaseWeight b;
        b.name = toks[0].text;
        for (char c : b.name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw ParseError(lineno, toks[0].column, "invalid base name '" + b.name + "'");
        if (toks.size() != static_cast<std::size_t>(n) + 1)
            throw ParseError(lineno, toks.back().column, "base '" + b.name + "' needs " + std::to_string(n) + " pairings");
        for (std::size_t k = 1; k < toks.size(); ++k) {
            Rational q;
            if (!parse_rational(toks[k].text, q))
                throw ParseError(lineno, toks[k].column, "expected rational p/q, got '" + toks[k].text + "'");
            b.pairings.push_back(q);
        }
        out.bases.push_back(std::move(b));
    }
    return out;
}

inline MatrixFile parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_file(in);
}

inline std::string format_matrix_file(const MatrixFile& m) {
    std::ostringstream os;
    os << m.entries.size() << "\n";
    for (auto& row : m.entries) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k];
        os << "\n";
    }
    if (!m.bases.empty()) {
        os << "bases:\n";
        for (auto& b : m.bases) {
            os << b.name;
            for (auto& p : b.pairings) os << " " << p.get_str();
            os << "\n";
        }
    }
    return os.str();
}

// Text form: "lambda - 2*a1 + 1/2*rho"; simple roots are a1..an; zero is "0".
inline std::string format_weight(const WeightContext& ctx, const Weight& w) {
    std::string out;
    auto term = [&](const Rational& c, const std::string& name) {
        if (c == 0) return;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (mag != 1) out += mag.get_str() + "*";
        out += name;
    };
    for (std::size_t b = 0; b < ctx.num_bases(); ++b) term(w.base[b], ctx.base(b).name);
    for (std::size_t i = 0; i < ctx.rank(); ++i) term(w.root[i], "a" + std::to_string(i + 1));
    return out.empty() ? "0" : out;
}

inline Weight parse_weight(const WeightContext& ctx, const std::string& text) {
    Weight w = ctx.zero();
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "0") return w;
    if (s.empty()) throw std::invalid_argument("empty weight text");
    std::size_t k = 0;
    while (k < s.size()) {
        int sign = 1;
        if (s[k] == '+' || s[k] == '-') {
            sign = s[k] == '-' ? -1 : 1;
            ++k;
        } else if (k != 0) {
            throw std::invalid_argument("expected '+' or '-' in weight text '" + text + "'");
        }
        std::size_t end = k;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string t = s.substr(k, end - k);
        k = end;
        Rational c(1);
        std::size_t star = t.find('*');
        std::string name = t;
        if (star != std::string::npos) {
            if (!parse_rational(t.substr(0, star), c)) throw std::invalid_argument("bad coefficient in '" + t + "'");
            name = t.substr(star + 1);
        }
        c *= sign;
        if (name.size() > 1 && name[0] == 'a' &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t i = std::stoul(name.substr(1));
            if (i == 0 || i > ctx.rank()) throw std::invalid_argument("simple root index out of range in '" + t + "'");
            w.root[i - 1] += c;
        } else {
            w.base[ctx.base_index(name)] += c;
        }
    }
    return w;
}

}  // namespace gkm
