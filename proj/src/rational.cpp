#include "hc/rational.hpp"

namespace hc {

Rational parse_rational(const std::string& s) {
    auto bad = [&]() { throw ParseError("not a rational: '" + s + "'"); };
    if (s.empty()) bad();
    std::string num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string::npos) bad();
    }
    Integer n, d;
    try {
        n = Integer(num);
        d = Integer(den);
    } catch (const std::invalid_argument&) {
        bad();
    }
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool rational_is_integer(const Rational& q) { return q.get_den() == 1; }

Integer rational_floor(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

long long floor_long(const Rational& q) {
    Integer f = rational_floor(q);
    if (!f.fits_slong_p()) throw InvalidData("floor out of machine range: " + rational_str(q));
    return f.get_si();
}

double rational_double(const Rational& q) { return q.get_d(); }

} // namespace hc
