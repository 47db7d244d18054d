#include "ssm/rational.hpp"

#include "ssm/error.hpp"

#include <cctype>
#include <sstream>

namespace ssm {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// explicit base 10 (the string constructor would treat a leading 0 as octal)
Int int10(const std::string& s) {
    Int v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        fail("ParseError", "bad integer literal '" + s + "'");
    return v;
}

} // namespace

Rat parse_rational(const std::string& input) {
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail("ParseError", "empty rational literal");

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        s = s.substr(1);
    }

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            fail("ParseError", "bad fraction literal '" + input + "'");
        Int n = int10(num), d = int10(den);
        if (d == 0) fail("ParseError", "zero denominator in '" + input + "'");
        Rat q(n, d);
        q.canonicalize();
        Rat out = neg ? Rat(-q) : q;
        return out;
    }

    // decimal with optional exponent
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string es = s.substr(epos + 1);
        s = s.substr(0, epos);
        try {
            exp10 = std::stol(es);
        } catch (...) {
            fail("ParseError", "bad exponent in '" + input + "'");
        }
    }
    std::string digits = s;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        exp10 -= static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty()) digits = "0";
    if (!all_digits(digits))
        fail("ParseError", "bad rational literal '" + input + "'");

    Int mant = int10(digits);
    Rat q(mant);
    if (exp10 > 0) {
        Int p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
        q *= Rat(p10);
    } else if (exp10 < 0) {
        Int p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
        q /= Rat(p10);
    }
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

std::string rational_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rational_to_decimal(const Rat& q, int digits) {
    Int p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rat scaled = q * Rat(p10);
    // round half away from zero
    Int num = scaled.get_num(), den = scaled.get_den();
    Int twice = 2 * num + (num >= 0 ? den : -den);
    Int rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(), Int(2 * den).get_mpz_t());

    bool neg = rounded < 0;
    Int absr = abs(rounded);
    std::string ds = absr.get_str();
    if (static_cast<int>(ds.size()) <= digits)
        ds = std::string(digits + 1 - ds.size(), '0') + ds;
    std::string out = ds.substr(0, ds.size() - digits);
    if (digits > 0) out += "." + ds.substr(ds.size() - digits);
    return neg ? "-" + out : out;
}

std::vector<Rat> parse_rational_list(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_rational(tok));
    return out;
}

} // namespace ssm
