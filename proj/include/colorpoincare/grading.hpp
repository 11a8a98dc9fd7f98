#pragma once

#include <string>
#include <utility>

#include "colorpoincare/scalar.hpp"

namespace colorpoincare {

// A grading degree: an integer colour triple (r, g, b).  For grading order
// n > 0 degrees live in (Z/n)^3 and are stored with canonical representatives
// in [0, n); for n = 0 the lattice is Z^3 and components are arbitrary.
struct Degree {
    int r = 0, g = 0, b = 0;
    bool operator==(const Degree& o) const { return r == o.r && g == o.g && b == o.b; }
    bool operator!=(const Degree& o) const { return !(*this == o); }
    bool operator<(const Degree& o) const {
        if (r != o.r) return r < o.r;
        if (g != o.g) return g < o.g;
        return b < o.b;
    }
    bool is_zero() const { return r == 0 && g == 0 && b == 0; }
    std::string str() const {
        return "(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
    }
};

// Grading order + coefficient field bundle.
class GradingConfig {
  public:
    explicit GradingConfig(int n) : n_(n), field_(ScalarField::make(n)) {}

    int n() const { return n_; }
    const FieldPtr& field() const { return field_; }

    Degree reduce(int r, int g, int b) const {
        if (n_ == 0) return {r, g, b};
        auto md = [this](int v) { return ((v % n_) + n_) % n_; };
        return {md(r), md(g), md(b)};
    }
    Degree add(const Degree& x, const Degree& y) const { return reduce(x.r + y.r, x.g + y.g, x.b + y.b); }
    Degree neg(const Degree& x) const { return reduce(-x.r, -x.g, -x.b); }

    // Commutation factor split into (sign parity, q exponent), evaluated on the
    // stored integer components with no reduction:
    //   epsilon(x, y) = (-1)^(x.y) * q^(xr yg - yr xg + xg yb - yg xb + xb yr - yb xr).
    // On the integer lattice this is multiplicative in each slot; for odd n > 0
    // the sign part does not descend to residue classes, which is why the
    // bicharacter laws are stated (and tested) on integer triples.
    static std::pair<long, long> epsilon_parts(const Degree& x, const Degree& y) {
        long parity = static_cast<long>(x.r) * y.r + static_cast<long>(x.g) * y.g +
                      static_cast<long>(x.b) * y.b;
        long qexp = static_cast<long>(x.r) * y.g - static_cast<long>(y.r) * x.g +
                    static_cast<long>(x.g) * y.b - static_cast<long>(y.g) * x.b +
                    static_cast<long>(x.b) * y.r - static_cast<long>(y.b) * x.r;
        return {parity, qexp};
    }

    Scalar epsilon(const Degree& x, const Degree& y) const {
        auto [p, e] = epsilon_parts(x, y);
        return Scalar::sign_q(field_, p, e);
    }

    enum class Kind { Bosonic, Fermionic, Exotic };
    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::Bosonic: return "bosonic";
            case Kind::Fermionic: return "fermionic";
            default: return "exotic";
        }
    }

    // Bosonic: epsilon(x, y) = 1 for every y.  Fermionic: epsilon(x, y) = +-1
    // for every y with epsilon(x, x) = -1.  Everything else is exotic.
    Kind classify(const Degree& x) const {
        if (n_ == 0) {
            // q is formal: the q-exponent must vanish identically in y, which
            // forces equal components.
            if (x.r == x.g && x.g == x.b) return (x.r % 2 == 0) ? Kind::Bosonic : Kind::Fermionic;
            return Kind::Exotic;
        }
        bool all_one = true, all_sign = true;
        Scalar one = Scalar::one(field_), minus = -one;
        for (int yr = 0; yr < n_ && all_sign; ++yr)
            for (int yg = 0; yg < n_ && all_sign; ++yg)
                for (int yb = 0; yb < n_ && all_sign; ++yb) {
                    Scalar e = epsilon(x, Degree{yr, yg, yb});
                    if (e != one) all_one = false;
                    if (e != one && e != minus) all_sign = false;
                }
        if (all_one) return Kind::Bosonic;
        if (all_sign && epsilon(x, x) == minus) return Kind::Fermionic;
        return Kind::Exotic;
    }

  private:
    int n_;
    FieldPtr field_;
};

}  // namespace colorpoincare
