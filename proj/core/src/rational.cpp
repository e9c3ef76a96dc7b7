#include "pwhs/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pwhs {

namespace {
int sign_of(const Rational& q) {
    if (q == 0) return 0;
    return q < 0 ? -1 : 1;
}
}  // namespace

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw domain_error("cannot convert non-finite double");
    return Rational(x);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
    normalize_();
}

RationalPolynomial RationalPolynomial::from_doubles(const std::vector<double>& c) {
    std::vector<Rational> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) q[i] = rational_from_double(c[i]);
    return RationalPolynomial(std::move(q));
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
    return RationalPolynomial(std::vector<Rational>{c});
}

void RationalPolynomial::normalize_() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& RationalPolynomial::leading() const {
    if (is_zero()) throw domain_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
    Rational v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
    return v;
}

double RationalPolynomial::operator()(double x) const {
    double v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        v = v * x + it->convert_to<double>();
    return v;
}

RationalPolynomial RationalPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
    return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::operator-() const {
    auto c = coeffs_;
    for (auto& v : c) v = -v;
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
    return *this + (-o);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * o.coeffs_[j];
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(const Rational& s) const {
    auto c = coeffs_;
    for (auto& v : c) v *= s;
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::remainder(const RationalPolynomial& d) const {
    if (d.is_zero()) throw domain_error("polynomial division by zero");
    std::vector<Rational> r = coeffs_;
    const int dd = d.degree();
    while (static_cast<int>(r.size()) - 1 >= dd) {
        const Rational q = r.back() / d.leading();
        const std::size_t shift = r.size() - 1 - dd;
        for (int i = 0; i <= dd; ++i) r[shift + i] -= q * d.coeffs()[i];
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
    }
    return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::divide_exact(const RationalPolynomial& d) const {
    if (d.is_zero()) throw domain_error("polynomial division by zero");
    if (is_zero()) return {};
    std::vector<Rational> rem = coeffs_;
    std::vector<Rational> quot(std::max<std::size_t>(1, coeffs_.size() - d.coeffs().size() + 1),
                               Rational(0));
    const int dd = d.degree();
    while (static_cast<int>(rem.size()) - 1 >= dd && !rem.empty()) {
        const Rational q = rem.back() / d.leading();
        const std::size_t shift = rem.size() - 1 - dd;
        quot[shift] = q;
        for (int i = 0; i <= dd; ++i) rem[shift + i] -= q * d.coeffs()[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    if (!rem.empty()) throw domain_error("polynomial division was not exact");
    return RationalPolynomial(std::move(quot));
}

RationalPolynomial RationalPolynomial::primitive() const {
    if (is_zero()) return {};
    // scale so the leading coefficient is +-1; keeps PRS coefficients small
    auto c = coeffs_;
    const Rational lead = c.back() < 0 ? -c.back() : c.back();
    for (auto& v : c) v /= lead;
    return RationalPolynomial(std::move(c));
}

std::string RationalPolynomial::str() const {
    std::ostringstream os;
    if (is_zero()) return "0";
    for (int i = degree(); i >= 0; --i) {
        if (coeffs_[i] == 0) continue;
        if (i != degree()) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        Rational a = coeffs_[i] < 0 ? Rational(-coeffs_[i]) : coeffs_[i];
        os << a;
        if (i >= 1) os << "*r";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
        RationalPolynomial r = a.remainder(b).primitive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive();
}

namespace {

using Int = boost::multiprecision::cpp_int;
using IntPoly = std::vector<Int>;  // ascending, no trailing zeros

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly to_int_poly(const RationalPolynomial& p) {
    Int l = 1;
    for (const auto& c : p.coeffs())
        l = boost::multiprecision::lcm(l, Int(boost::multiprecision::denominator(c)));
    IntPoly out(p.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& c = p.coeffs()[i];
        out[i] = Int(boost::multiprecision::numerator(c)) *
                 (l / Int(boost::multiprecision::denominator(c)));
    }
    trim(out);
    return out;
}

void strip_content(IntPoly& p) {
    Int g = 0;
    for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (auto& c : p) c /= g;
}

IntPoly int_derivative(const IntPoly& p) {
    if (p.size() <= 1) return {};
    IntPoly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<int>(i);
    return d;
}

// pseudo-remainder scaled so the effective multiplier of `a` is positive
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const Int lb = b.back();
    int mults = 0;
    trim(a);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const Int la = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto& c : a) c *= lb;
        ++mults;
        for (int i = 0; i <= db; ++i) a[shift + i] -= la * b[i];
        trim(a);
    }
    if (lb < 0 && mults % 2 == 1)
        for (auto& c : a) c = -c;
    return a;
}

// primitive pseudo-remainder sequence: the integer Sturm chain
std::vector<IntPoly> sturm_chain_int(const RationalPolynomial& q) {
    std::vector<IntPoly> chain;
    IntPoly p0 = to_int_poly(q);
    strip_content(p0);
    chain.push_back(p0);
    IntPoly p1 = int_derivative(p0);
    strip_content(p1);
    if (p1.empty()) return chain;
    chain.push_back(std::move(p1));
    while (chain.back().size() > 1) {
        IntPoly r = pseudo_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        strip_content(r);
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_at(const IntPoly& q, const Int& n, const std::vector<Int>& dpow) {
    if (q.empty()) return 0;
    const std::size_t m = q.size() - 1;
    Int v = q[m];
    for (std::size_t i = m; i-- > 0;) v = v * n + q[i] * dpow[m - i];
    if (v == 0) return 0;
    return v < 0 ? -1 : 1;
}

int variations_at(const std::vector<IntPoly>& chain, const Rational& x) {
    const Int n = Int(boost::multiprecision::numerator(x));
    const Int d = Int(boost::multiprecision::denominator(x));
    std::size_t maxdeg = 0;
    for (const auto& q : chain) maxdeg = std::max(maxdeg, q.size());
    std::vector<Int> dpow(maxdeg + 1);
    dpow[0] = 1;
    for (std::size_t j = 1; j <= maxdeg; ++j) dpow[j] = dpow[j - 1] * d;
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        const int s = sign_at(q, n, dpow);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace

int sturm_count(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw domain_error("sturm_count of the zero polynomial");
    if (lo >= hi) throw domain_error("sturm_count requires lo < hi");
    if (p(lo) == 0 || p(hi) == 0)
        throw endpoint_root("polynomial vanishes at a counting endpoint");
    const auto chain = sturm_chain_int(p);
    return variations_at(chain, lo) - variations_at(chain, hi);
}

int descartes_bound(const RationalPolynomial& p) {
    if (p.is_zero()) throw domain_error("descartes_bound of the zero polynomial");
    int v = 0, prev = 0;
    for (const auto& c : p.coeffs()) {
        const int s = sign_of(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

namespace {

// Bareiss fraction-free determinant over an integral domain; entries are
// rational polynomials (constants included), division is exact.
RationalPolynomial det_bareiss(std::vector<std::vector<RationalPolynomial>> m) {
    const std::size_t n = m.size();
    if (n == 0) return RationalPolynomial::constant(1);
    RationalPolynomial prev = RationalPolynomial::constant(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return {};
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                RationalPolynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num.divide_exact(prev);
            }
            m[i][k] = {};
        }
        prev = m[k][k];
    }
    RationalPolynomial det = m[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

RationalPolynomial resultant_poly(const std::vector<RationalPolynomial>& p,
                                  const std::vector<RationalPolynomial>& q) {
    const int dp = static_cast<int>(p.size()) - 1;
    const int dq = static_cast<int>(q.size()) - 1;
    if (dp < 0 || dq < 0) return {};
    const int n = dp + dq;
    std::vector<std::vector<RationalPolynomial>> s(
        n, std::vector<RationalPolynomial>(n));
    for (int i = 0; i < dq; ++i)
        for (int j = 0; j <= dp; ++j) s[i][i + j] = p[dp - j];
    for (int i = 0; i < dp; ++i)
        for (int j = 0; j <= dq; ++j) s[dq + i][i + j] = q[dq - j];
    return det_bareiss(std::move(s));
}

}  // namespace

Rational resultant(const RationalPolynomial& p, const RationalPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return 0;
    std::vector<RationalPolynomial> pc, qc;
    for (const auto& c : p.coeffs()) pc.push_back(RationalPolynomial::constant(c));
    for (const auto& c : q.coeffs()) qc.push_back(RationalPolynomial::constant(c));
    RationalPolynomial res = resultant_poly(pc, qc);
    return res.is_zero() ? Rational(0) : res.coeffs()[0];
}

Rational discriminant(const RationalPolynomial& p) {
    const int n = p.degree();
    if (n < 2) throw domain_error("discriminant requires degree >= 2");
    const Rational res = resultant(p, p.derivative());
    const int s = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
    return s * res / p.leading();
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(
    const RationalPolynomial& q, Rational lo, Rational hi) {
    if (q.is_zero()) throw domain_error("cannot isolate roots of the zero polynomial");
    if (q.degree() == 0) return {};
    // squarefree part: same distinct roots, and every one changes sign
    const RationalPolynomial g = gcd(q, q.derivative());
    const RationalPolynomial p = g.degree() >= 1 ? q.divide_exact(g) : q;
    // nudge endpoints inward off roots: the interval is open
    const Rational eps(1, 1000000000);
    Rational span = hi - lo;
    while (p(lo) == 0) lo += eps * span;
    while (p(hi) == 0) hi -= eps * span;
    if (lo >= hi) return {};

    const auto chain = sturm_chain_int(p);
    auto count = [&chain](const Rational& a, const Rational& b) {
        return variations_at(chain, a) - variations_at(chain, b);
    };
    std::vector<std::pair<Rational, Rational>> out;
    struct Seg { Rational a, b; int n; };
    std::vector<Seg> stack{{lo, hi, count(lo, hi)}};
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1) {
            out.push_back({s.a, s.b});
            continue;
        }
        Rational mid = (s.a + s.b) / 2;
        while (p(mid) == 0) mid += (s.b - s.a) / 1048576;
        const int left = count(s.a, mid);
        stack.push_back({s.a, mid, left});
        stack.push_back({mid, s.b, s.n - left});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

std::vector<double> real_roots(const RationalPolynomial& q, const Rational& lo,
                               const Rational& hi, double tol) {
    const RationalPolynomial g = gcd(q, q.derivative());
    const RationalPolynomial p = g.degree() >= 1 ? q.divide_exact(g) : q;
    std::vector<double> out;
    for (auto [a, b] : isolate_real_roots(p, lo, hi)) {
        // exact bisection until the bracket is tiny, then report the midpoint
        int sa = sign_of(p(a));
        if (sa == 0) { out.push_back(to_double(a)); continue; }
        while (to_double(b - a) > tol) {
            const Rational mid = (a + b) / 2;
            const int sm = sign_of(p(mid));
            if (sm == 0) { a = b = mid; break; }
            if (sm == sa) a = mid;
            else b = mid;
        }
        out.push_back(to_double((a + b) / 2));
    }
    return out;
}

std::vector<double> real_roots(const RationalPolynomial& p, double tol) {
    if (p.is_zero() || p.degree() == 0) return {};
    // Cauchy bound: 1 + max |a_i| / |a_n|
    Rational m = 0;
    for (const auto& c : p.coeffs()) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (a > m) m = a;
    }
    Rational lead = p.leading() < 0 ? Rational(-p.leading()) : p.leading();
    const Rational bound = 1 + m / lead;
    return real_roots(p, -bound, bound, tol);
}

RationalPolynomial ParametricFamily::at_kappa(const Rational& kappa) const {
    std::vector<Rational> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i](kappa);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial ParametricFamily::discriminant_in_kappa() const {
    std::vector<RationalPolynomial> p = coeffs;
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    const int n = static_cast<int>(p.size()) - 1;
    if (n < 2) throw domain_error("family discriminant requires degree >= 2 in r");
    std::vector<RationalPolynomial> dp(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * Rational(static_cast<int>(i));
    RationalPolynomial res = resultant_poly(p, dp);
    const int s = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
    RationalPolynomial disc = res.divide_exact(p.back());
    return s == 1 ? disc : -disc;
}

}  // namespace pwhs
