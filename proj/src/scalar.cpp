#include "colorpoincare/scalar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace colorpoincare {
namespace {

// Little-endian integer polynomials, enough for cyclotomic bookkeeping.
std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Exact division, used only where divisibility is guaranteed.
std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<long> out(dn - dd + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        long c = num[k + dd] / den[dd];
        out[k] = c;
        for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    return out;
}

std::vector<long> cyclotomic_poly(int m) {
    // Phi_m = (x^m - 1) / prod of Phi_d over proper divisors d of m.
    std::vector<long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        num = poly_div_exact(num, cyclotomic_poly(d));
    }
    return num;
}

using QPoly = std::vector<Rational>;

int qdeg(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void qpoly_submul(QPoly& a, const Rational& c, const QPoly& b, int shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
}

// a mod b in place, returning the quotient's action folded into (t-tracking
// handled by caller via callback).
QPoly qpoly_divmod(QPoly a, const QPoly& b, const std::function<void(const Rational&, int)>& on_q) {
    int db = qdeg(b);
    for (int da = qdeg(a); da >= db && da >= 0; da = qdeg(a)) {
        Rational c = a[da] / b[db];
        on_q(c, da - db);
        qpoly_submul(a, c, b, da - db);
    }
    return a;
}

}  // namespace

ScalarField::ScalarField(int n) : n_(n) {
    m_ = (n == 0) ? 8 : static_cast<int>(std::lcm(8, n));
    phi_poly_ = cyclotomic_poly(m_);
    deg_ = static_cast<int>(phi_poly_.size()) - 1;
    powers_.assign(m_, std::vector<long>(deg_, 0));
    for (int e = 0; e < m_; ++e) {
        if (e < deg_) {
            powers_[e][e] = 1;
            continue;
        }
        // zeta^e = zeta * zeta^(e-1), reduced by the monic Phi_m.
        std::vector<long> shifted(deg_ + 1, 0);
        for (int j = 0; j < deg_; ++j) shifted[j + 1] = powers_[e - 1][j];
        long top = shifted[deg_];
        for (int j = 0; j < deg_; ++j) powers_[e][j] = shifted[j] - top * phi_poly_[j];
    }
}

std::shared_ptr<const ScalarField> ScalarField::make(int n) {
    if (n < 0 || n == 1 || n == 2)
        throw std::invalid_argument(
            "grading order n must be 0 (formal q) or >= 3: for n = 1 or 2 the "
            "deformation q would be +-1 and the colour part of the commutation "
            "factor degenerates to a sign");
    return std::shared_ptr<const ScalarField>(new ScalarField(n));
}

const std::vector<long>& ScalarField::zeta_power(long e) const {
    long r = e % m_;
    if (r < 0) r += m_;
    return powers_[static_cast<size_t>(r)];
}

int ScalarField::q_zeta_exponent() const {
    if (n_ == 0) throw std::logic_error("q is a formal parameter when n = 0");
    return m_ / n_;
}

void Scalar::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool all0 = std::all_of(it->second.begin(), it->second.end(),
                                [](const Rational& c) { return c == 0; });
        it = all0 ? terms_.erase(it) : std::next(it);
    }
}

void Scalar::add_term(long qexp, const std::vector<Rational>& vec, const Rational& mult) {
    if (mult == 0) return;
    auto& dst = terms_[qexp];
    if (dst.empty()) dst.assign(f_->degree(), Rational(0));
    for (int j = 0; j < f_->degree(); ++j) dst[j] += vec[j] * mult;
}

Scalar Scalar::from_rational(const FieldPtr& f, const Rational& r) {
    Scalar s(f);
    if (r != 0) {
        std::vector<Rational> v(f->degree(), Rational(0));
        v[0] = r;
        s.terms_[0] = std::move(v);
    }
    return s;
}

Scalar Scalar::zeta_power(const FieldPtr& f, long e) {
    Scalar s(f);
    const auto& row = f->zeta_power(e);
    std::vector<Rational> v(f->degree(), Rational(0));
    bool nz = false;
    for (int j = 0; j < f->degree(); ++j) {
        v[j] = row[j];
        nz = nz || row[j] != 0;
    }
    if (nz) s.terms_[0] = std::move(v);
    return s;
}

Scalar Scalar::q_power(const FieldPtr& f, long e) {
    if (f->n() > 0) return zeta_power(f, e * f->q_zeta_exponent());
    Scalar s(f);
    std::vector<Rational> v(f->degree(), Rational(0));
    v[0] = 1;
    s.terms_[e] = std::move(v);
    return s;
}

Scalar Scalar::z8_power(const FieldPtr& f, long e) { return zeta_power(f, e * f->z8_zeta_exponent()); }

Scalar Scalar::i(const FieldPtr& f) { return z8_power(f, 2); }

Scalar Scalar::sign_q(const FieldPtr& f, long parity, long qexp) {
    Scalar s = q_power(f, qexp);
    bool neg = ((parity % 2) + 2) % 2 == 1;
    return neg ? -s : s;
}

std::optional<Rational> Scalar::as_rational() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() != 1 || terms_.begin()->first != 0) return std::nullopt;
    const auto& v = terms_.begin()->second;
    for (size_t j = 1; j < v.size(); ++j)
        if (v[j] != 0) return std::nullopt;
    return v[0];
}

Scalar Scalar::operator-() const {
    Scalar out(*this);
    for (auto& [k, v] : out.terms_)
        for (auto& c : v) c = -c;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (!f_) f_ = o.f_;
    for (const auto& [k, v] : o.terms_) {
        auto& dst = terms_[k];
        if (dst.empty()) dst.assign(f_->degree(), Rational(0));
        for (int j = 0; j < f_->degree(); ++j) dst[j] += v[j];
    }
    prune();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (!f_) f_ = o.f_;
    Scalar out(f_);
    for (const auto& [k1, v1] : terms_) {
        for (const auto& [k2, v2] : o.terms_) {
            auto& dst = out.terms_[k1 + k2];
            if (dst.empty()) dst.assign(f_->degree(), Rational(0));
            for (int a = 0; a < f_->degree(); ++a) {
                if (v1[a] == 0) continue;
                for (int b = 0; b < f_->degree(); ++b) {
                    if (v2[b] == 0) continue;
                    Rational c = v1[a] * v2[b];
                    const auto& row = f_->zeta_power(a + b);
                    for (int j = 0; j < f_->degree(); ++j)
                        if (row[j] != 0) dst[j] += c * row[j];
                }
            }
        }
    }
    out.prune();
    terms_ = std::move(out.terms_);
    return *this;
}

bool Scalar::operator==(const Scalar& o) const { return compare(o) == 0; }

int Scalar::compare(const Scalar& o) const {
    auto it = terms_.begin(), jt = o.terms_.begin();
    while (it != terms_.end() && jt != o.terms_.end()) {
        if (it->first != jt->first) return it->first < jt->first ? -1 : 1;
        for (size_t a = 0; a < it->second.size(); ++a) {
            int c = cmp(it->second[a], jt->second[a]);
            if (c != 0) return c;
        }
        ++it;
        ++jt;
    }
    if (it != terms_.end()) return 1;
    if (jt != o.terms_.end()) return -1;
    return 0;
}

Scalar Scalar::conjugate() const {
    Scalar out(f_);
    int m = f_->m();
    for (const auto& [k, v] : terms_) {
        long nk = f_->n() == 0 ? -k : 0;
        for (int a = 0; a < f_->degree(); ++a) {
            if (v[a] == 0) continue;
            out.add_term(nk, [&] {
                const auto& row = f_->zeta_power((m - a) % m);
                std::vector<Rational> rv(f_->degree());
                for (int j = 0; j < f_->degree(); ++j) rv[j] = row[j];
                return rv;
            }(), v[a]);
        }
    }
    out.prune();
    return out;
}

Scalar Scalar::inverse() const {
    if (terms_.empty()) throw std::domain_error("scalar inverse of zero");
    if (terms_.size() > 1)
        throw std::domain_error(
            "scalar not invertible: with n = 0 the parameter q is formal, so only "
            "scalars supported on a single power of q have inverses");
    long k = terms_.begin()->first;
    // Extended Euclid in Q[x] modulo the cyclotomic polynomial: maintain
    // t_i with t_i * v == r_i (mod Phi_m); Phi_m is irreducible over Q so the
    // final remainder is a nonzero constant.
    QPoly phi(f_->cyclotomic().begin(), f_->cyclotomic().end());
    QPoly r0 = phi, r1(terms_.begin()->second.begin(), terms_.begin()->second.end());
    QPoly t0{Rational(0)}, t1{Rational(1)};
    while (qdeg(r1) >= 0) {
        QPoly tq;
        QPoly rem = qpoly_divmod(r0, r1, [&](const Rational& c, int sh) {
            if (tq.size() < static_cast<size_t>(sh + 1)) tq.resize(sh + 1, Rational(0));
            tq[sh] += c;
        });
        QPoly t2 = t0;
        if (!tq.empty())
            for (size_t i = 0; i < tq.size(); ++i)
                if (tq[i] != 0) qpoly_submul(t2, tq[i], t1, static_cast<int>(i));
        r0 = std::move(r1);
        t0 = std::move(t1);
        r1 = std::move(rem);
        t1 = std::move(t2);
    }
    if (qdeg(r0) != 0) throw std::logic_error("cyclotomic inverse: gcd not constant");
    Rational c = r0[0];
    // Reduce t0 modulo phi and divide by the constant.
    QPoly red = qpoly_divmod(std::move(t0), phi, [](const Rational&, int) {});
    Scalar out(f_);
    std::vector<Rational> v(f_->degree(), Rational(0));
    bool nz = false;
    for (int j = 0; j < f_->degree() && j < static_cast<int>(red.size()); ++j) {
        v[j] = red[j] / c;
        nz = nz || v[j] != 0;
    }
    if (nz) out.terms_[f_->n() == 0 ? -k : 0] = std::move(v);
    return out;
}

std::optional<Scalar> Scalar::sqrt_rational(const FieldPtr& f, const Rational& r) {
    if (r == 0) return zero(f);
    Rational mag = r < 0 ? -r : r;
    mpz_class N = mag.get_num() * mag.get_den();
    // N = s^2 * t with t squarefree; sqrt(mag) = (s / den) * sqrt(t).
    mpz_class s = 1;
    std::vector<long> squarefree;
    for (long d = 2; d <= 1000000L && N > 1; ++d) {
        if (mpz_cmp_ui(N.get_mpz_t(), static_cast<unsigned long>(d) * d) < 0) break;
        if (!mpz_divisible_ui_p(N.get_mpz_t(), d)) continue;
        int e = 0;
        while (mpz_divisible_ui_p(N.get_mpz_t(), d)) {
            N /= d;
            ++e;
        }
        for (int j = 0; j < e / 2; ++j) s *= d;
        if (e % 2) squarefree.push_back(d);
    }
    if (N > 1) {
        if (mpz_perfect_square_p(N.get_mpz_t())) {
            mpz_class rt;
            mpz_sqrt(rt.get_mpz_t(), N.get_mpz_t());
            s *= rt;
        } else if (N.fits_slong_p()) {
            squarefree.push_back(N.get_si());
        } else {
            return std::nullopt;
        }
    }
    Scalar out = from_rational(f, Rational(s) / Rational(mag.get_den()));
    for (long p : squarefree) {
        if (p == 2) {
            out *= z8_power(f, 1) + z8_power(f, -1);
            continue;
        }
        if (f->m() % p != 0) return std::nullopt;  // zeta_p not in the field
        // Quadratic Gauss sum g = sum over a of legendre(a|p) zeta_p^a:
        // g^2 = p for p = 1 mod 4 and -p for p = 3 mod 4.
        Scalar g = zero(f);
        long zp = f->m() / p;
        for (long a = 1; a < p; ++a) {
            long leg = 1, x = a % p, e = (p - 1) / 2, acc = 1;
            while (e) {  // a^((p-1)/2) mod p
                if (e & 1) acc = (acc * x) % p;
                x = (x * x) % p;
                e >>= 1;
            }
            leg = (acc == 1) ? 1 : -1;
            Scalar term = zeta_power(f, a * zp);
            g += leg > 0 ? term : -term;
        }
        out *= (p % 4 == 1) ? g : -(i(f) * g);
    }
    if (r < 0) out *= i(f);
    if (out * out != from_rational(f, r)) return std::nullopt;
    return out;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    struct Term {
        long v;  // q exponent
        long u;  // z8 exponent
        Rational c;
    };
    std::vector<Term> ts;
    int m = f_->m();
    if (f_->n() == 0) {
        for (const auto& [k, vec] : terms_)
            for (int a = 0; a < f_->degree(); ++a)
                if (vec[a] != 0) ts.push_back({k, a, vec[a]});
    } else {
        const auto& vec = terms_.begin()->second;
        int mq = f_->q_zeta_exponent(), m8 = f_->z8_zeta_exponent();
        for (int a = 0; a < f_->degree(); ++a) {
            if (vec[a] == 0) continue;
            bool found = false;
            for (long u = 0; u < 8 && !found; ++u)
                for (long v = 0; v < f_->n() && !found; ++v)
                    if ((u * m8 + v * mq) % m == a) {
                        ts.push_back({v, u, vec[a]});
                        found = true;
                    }
            if (!found) throw std::logic_error("scalar rendering: basis exponent not decomposable");
        }
    }
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) {
        return a.v != b.v ? a.v < b.v : a.u < b.u;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& t : ts) {
        Rational mag = t.c < 0 ? Rational(-t.c) : t.c;
        if (first) {
            if (t.c < 0) os << "-";
            first = false;
        } else {
            os << (t.c < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (mag != 1 || (t.u == 0 && t.v == 0)) factors.push_back(rational_str(mag));
        if (t.u != 0) factors.push_back(t.u == 1 ? "z8" : "z8^" + std::to_string(t.u));
        if (t.v != 0) factors.push_back(t.v == 1 ? "q" : "q^" + std::to_string(t.v));
        for (size_t j = 0; j < factors.size(); ++j) os << (j ? "*" : "") << factors[j];
    }
    return os.str();
}

}  // namespace colorpoincare
