#include "simerka/factored_rational.hpp"

#include <cctype>
#include <string>

#include "simerka/errors.hpp"

namespace simerka {

const char* errc_name(Errc code)
{
    switch (code) {
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::discriminant_mismatch: return "DISCRIMINANT_MISMATCH";
    case Errc::inert_prime: return "INERT";
    case Errc::condition_violated: return "CONDITION_VIOLATED";
    case Errc::not_primitive: return "NOT_PRIMITIVE";
    case Errc::not_ambiguous: return "NOT_AMBIGUOUS";
    case Errc::precondition: return "PRECONDITION";
    case Errc::rank_deficient: return "RANK_DEFICIENT";
    case Errc::timeout: return "TIMEOUT";
    case Errc::budget_exceeded: return "BUDGET_EXCEEDED";
    }
    return "UNKNOWN";
}

Int parse_int(const std::string& text)
{
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::string body = text.substr(begin, end - begin);
    std::size_t digits = (!body.empty() && (body[0] == '-' || body[0] == '+')) ? 1 : 0;
    if (digits == body.size()) throw Error(Errc::parse_error, "empty integer: '" + text + "'");
    for (std::size_t i = digits; i < body.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(body[i])))
            throw Error(Errc::parse_error, "not an integer: '" + text + "'");
    }
    if (body[0] == '+') body.erase(0, 1);
    return Int(body, 10);
}

FactoredRational FactoredRational::prime_power(const Int& p, long e)
{
    FactoredRational r;
    r.multiply_prime(p, e);
    return r;
}

long FactoredRational::exponent(const Int& p) const
{
    auto it = entries_.find(p);
    return it == entries_.end() ? 0 : it->second;
}

void FactoredRational::multiply_prime(const Int& p, long e)
{
    if (e == 0) return;
    auto [it, inserted] = entries_.try_emplace(p, e);
    if (!inserted) {
        it->second += e;
        if (it->second == 0) entries_.erase(it);
    }
}

FactoredRational& FactoredRational::operator*=(const FactoredRational& other)
{
    for (const auto& [p, e] : other.entries_) multiply_prime(p, e);
    return *this;
}

FactoredRational FactoredRational::inverse() const
{
    return pow(-1);
}

FactoredRational FactoredRational::pow(long k) const
{
    FactoredRational r;
    if (k == 0) return r;
    for (const auto& [p, e] : entries_) r.entries_.emplace(p, e * k);
    return r;
}

Int FactoredRational::numerator() const
{
    Int n = 1;
    for (const auto& [p, e] : entries_)
        if (e > 0) n *= ipow(p, static_cast<unsigned long>(e));
    return n;
}

Int FactoredRational::denominator() const
{
    Int n = 1;
    for (const auto& [p, e] : entries_)
        if (e < 0) n *= ipow(p, static_cast<unsigned long>(-e));
    return n;
}

std::string FactoredRational::to_string() const
{
    if (entries_.empty()) return "1";
    std::string out;
    for (const auto& [p, e] : entries_) {
        if (!out.empty()) out += " * ";
        out += p.get_str();
        out += '^';
        out += std::to_string(e);
    }
    return out;
}

FactoredRational FactoredRational::parse(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    FactoredRational r;
    if (s == "1") return r;
    if (s.empty()) throw Error(Errc::parse_error, "empty factored rational");
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t star = s.find('*', pos);
        std::string term = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        std::size_t caret = term.find('^');
        Int p = parse_int(term.substr(0, caret));
        long e = 1;
        if (caret != std::string::npos) {
            Int ev = parse_int(term.substr(caret + 1));
            if (!fits_i64(ev)) throw Error(Errc::parse_error, "exponent out of range: " + term);
            e = static_cast<long>(to_i64(ev));
        }
        if (p < 2) throw Error(Errc::parse_error, "bad prime in factored rational: " + term);
        r.multiply_prime(p, e);
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    return r;
}

} // namespace simerka
