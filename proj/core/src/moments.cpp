#include "prodmat/moments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace prodmat {

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at every step: r is binom(n-k+i, i)
    }
    return r;
}

BigInt fuss_catalan(int m, int k) {
    if (m < 1 || k < 0) throw std::invalid_argument("need m >= 1, k >= 0");
    const long mk = long(m) * k;
    const BigInt num = binomial(mk + k, k);
    BigInt q, r;
    boost::multiprecision::divide_qr(num, BigInt(mk + 1), q, r);
    if (r != 0) throw std::logic_error("Fuss-Catalan division must be exact");
    return q;
}

namespace {

template <typename T>
std::vector<T> convolve_trunc(const std::vector<T>& a, const std::vector<T>& b, std::size_t len) {
    std::vector<T> out(len, T(0));
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == T(0)) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Phi = 1 + w * Phi * prod_l (1 - y_l + y_l * Phi), solved coefficient by coefficient.
template <typename T>
std::vector<T> series_moments(int m, const std::vector<T>& y, int K) {
    std::vector<T> M(std::size_t(K) + 1, T(0));
    M[0] = T(1);
    for (int k = 1; k <= K; ++k) {
        const std::size_t len = std::size_t(k);  // orders 0..k-1
        std::vector<T> t(M.begin(), M.begin() + long(len));
        for (int l = 0; l < m; ++l) {
            std::vector<T> factor(M.begin(), M.begin() + long(len));
            for (auto& c : factor) c *= y[std::size_t(l)];
            factor[0] += T(1) - y[std::size_t(l)];
            t = convolve_trunc(t, factor, len);
        }
        M[std::size_t(k)] = t[len - 1];
    }
    return M;
}

}  // namespace

std::vector<BigInt> fuss_catalan_by_recurrence(int m, int K) {
    if (m < 1 || K < 0) throw std::invalid_argument("need m >= 1, K >= 0");
    std::vector<BigInt> M(std::size_t(K) + 1);
    M[0] = 1;
    for (int k = 1; k <= K; ++k) {
        const std::size_t len = std::size_t(k);
        std::vector<BigInt> conv{1};
        const std::vector<BigInt> prefix(M.begin(), M.begin() + long(len));
        for (int t = 0; t <= m; ++t) conv = convolve_trunc(conv, prefix, len);
        M[std::size_t(k)] = conv[len - 1];
    }
    return M;
}

MomentTable moments_general_y(int m, const std::vector<BigRat>& y, int K) {
    if (m < 1 || int(y.size()) != m) throw std::invalid_argument("need m ratios");
    for (const auto& v : y)
        if (!(v > 0) || v > 1) throw std::invalid_argument("ratios must lie in (0, 1]");
    if (K < 0) throw std::invalid_argument("K must be nonnegative");
    MomentTable table;
    table.m = m;
    table.y = y;
    table.values = series_moments<BigRat>(m, y, K);
    return table;
}

std::vector<double> moments_general_y_float(int m, const std::vector<double>& y, int K) {
    if (m < 1 || int(y.size()) != m) throw std::invalid_argument("need m ratios");
    for (double v : y)
        if (!(v > 0) || v > 1) throw std::invalid_argument("ratios must lie in (0, 1]");
    if (K < 0) throw std::invalid_argument("K must be nonnegative");
    return series_moments<double>(m, y, K);
}

std::vector<double> moment_report(const DensityCurve& curve, const MomentTable& table, int K) {
    if (K < 0 || std::size_t(K) >= table.values.size())
        throw std::invalid_argument("table does not cover requested order");
    if (curve.x.size() < 2) throw std::invalid_argument("curve needs at least two points");
    std::vector<double> quad(std::size_t(K) + 1, 0.0);
    for (std::size_t i = 1; i < curve.x.size(); ++i) {
        const double h = curve.x[i] - curve.x[i - 1];
        double pa = 1.0, pb = 1.0;
        for (int k = 0; k <= K; ++k) {
            quad[std::size_t(k)] +=
                0.5 * h * (pa * curve.g[i - 1] + pb * curve.g[i]);
            pa *= curve.x[i - 1];
            pb *= curve.x[i];
        }
    }
    std::vector<double> err(std::size_t(K) + 1);
    for (int k = 0; k <= K; ++k) {
        const double mk = double(table.values[std::size_t(k)]);
        err[std::size_t(k)] = std::abs(quad[std::size_t(k)] - mk) / mk;
    }
    return err;
}

namespace {

// Strict base-10 integer: optional sign then digits. Avoids the bignum string
// constructor, whose leading-0 octal rule would mangle inputs like "0.09".
BigInt integer_from_text(const std::string& text) {
    std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1u : 0u;
    if (i >= text.size()) throw std::invalid_argument("bad rational: " + text);
    BigInt v = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad rational: " + text);
        v = v * 10 + (text[i] - '0');
    }
    return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

BigRat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const BigInt num = integer_from_text(text.substr(0, slash));
        const BigInt den = integer_from_text(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return BigRat(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return BigRat(integer_from_text(text));
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    for (char c : frac)
        if (c < '0' || c > '9') throw std::invalid_argument("bad rational: " + text);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool neg = !whole.empty() && whole[0] == '-';
    const bool sign_only = whole.empty() || whole == "-" || whole == "+";
    if (sign_only && frac.empty()) throw std::invalid_argument("bad rational: " + text);
    const BigInt whole_i = sign_only ? BigInt(0) : abs(integer_from_text(whole));
    BigInt num = whole_i * den + (frac.empty() ? BigInt(0) : integer_from_text(frac));
    if (neg) num = -num;
    return BigRat(num, den);
}

std::string rational_string(const BigRat& q) {
    const BigInt num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

void write_moment_csv(std::ostream& os, const MomentTable& table) {
    os << "k,numerator,denominator,value\n";
    char buf[64];
    for (std::size_t k = 0; k < table.values.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g", double(table.values[k]));
        os << k << ',' << numerator(table.values[k]).str() << ','
           << denominator(table.values[k]).str() << ',' << buf << '\n';
    }
}

}  // namespace prodmat
