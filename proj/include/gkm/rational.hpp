#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gkm {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_div(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_div(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Throws if q is not an integer or does not fit in 64 bits.
inline std::int64_t to_int64(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p())
        throw std::domain_error("rational " + q.get_str() + " is not a machine integer");
    return q.get_num().get_si();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "-p", "p/q". Returns false on malformed text.
inline bool parse_rational(std::string_view text, Rational& out) {
    if (text.empty()) return false;
    std::size_t slash = text.find('/');
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t k = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) k = 1;
        if (k == s.size()) return false;
        for (; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!valid_int(num, true)) return false;
    if (slash != std::string_view::npos && !valid_int(den, false)) return false;
    std::string n(num);
    if (!n.empty() && n[0] == '+') n.erase(0, 1);
    Integer zn(n, 10);
    Integer zd(1);
    if (slash != std::string_view::npos) {
        zd = Integer(std::string(den), 10);
        if (zd == 0) return false;
    }
    out = Rational(zn, zd);
    out.canonicalize();
    return true;
}

inline Rational rational_from(std::string_view text) {
    Rational q;
    if (!parse_rational(text, q)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    return q;
}

}  // namespace gkm
