#include "colorpoincare/grassmann.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace colorpoincare {

Degree GrassmannAlgebra::family_degree(Family f) {
    switch (f) {
        case Family::ThR: return {1, 0, 0};
        case Family::ThG: return {0, 1, 0};
        case Family::ThB: return {0, 0, 1};
        case Family::ThbR: return {-1, 0, 0};
        case Family::ThbG: return {0, -1, 0};
        case Family::ThbB: return {0, 0, -1};
        case Family::Eta: return {1, 1, 1};
        case Family::Etab: return {-1, -1, -1};
        default: throw std::invalid_argument("parameter generators have no fixed degree");
    }
}

const char* GrassmannAlgebra::family_prefix(Family f) {
    switch (f) {
        case Family::ThR: return "th_r";
        case Family::ThG: return "th_g";
        case Family::ThB: return "th_b";
        case Family::ThbR: return "thb_r";
        case Family::ThbG: return "thb_g";
        case Family::ThbB: return "thb_b";
        case Family::Eta: return "eta";
        case Family::Etab: return "etab";
        default: return "param";
    }
}

Scalar GrassmannAlgebra::default_phase(const Degree& deg) const {
    const auto& f = cfg_.field();
    if (deg.is_zero()) return Scalar::one(f);
    if (deg == Degree{1, 1, 1} || deg == Degree{-1, -1, -1}) return -Scalar::i(f);
    for (Family fam : {Family::ThR, Family::ThG, Family::ThB, Family::ThbR, Family::ThbG,
                       Family::ThbB})
        if (deg == family_degree(fam)) return Scalar::i(f) * Scalar::q_power(f, 1);
    throw std::invalid_argument(
        "no default adjoint phase for a parameter of degree " + deg.str() +
        "; pass one explicitly (it must satisfy conj(phase)*phase = 1)");
}

int GrassmannAlgebra::canonical(Family fam, int index) {
    if (fam == Family::Param) throw std::invalid_argument("use parameter() for parameters");
    if (index < 0) throw std::invalid_argument("generator index must be nonnegative");
    auto key = std::make_pair(static_cast<int>(fam), index);
    auto it = canon_.find(key);
    if (it != canon_.end()) return it->second;
    Generator g;
    g.family = fam;
    g.index = index;
    g.degree = family_degree(fam);
    g.adj_phase = default_phase(g.degree);
    g.name = std::string(family_prefix(fam)) + "[" + std::to_string(index) + "]";
    g.order_key = (static_cast<std::uint64_t>(fam) << 32) | static_cast<std::uint32_t>(index);
    gens_.push_back(std::move(g));
    int id = static_cast<int>(gens_.size()) - 1;
    canon_[key] = id;
    return id;
}

int GrassmannAlgebra::parameter(const std::string& name, const Degree& deg) {
    return parameter(name, deg, default_phase(deg));
}

int GrassmannAlgebra::parameter(const std::string& name, const Degree& deg,
                                const Scalar& adj_phase) {
    auto it = params_.find(name);
    if (it != params_.end()) {
        const Generator& g = gens_[static_cast<size_t>(it->second)];
        if (g.degree != deg || g.adj_phase != adj_phase)
            throw std::invalid_argument("parameter '" + name +
                                        "' already declared with a different degree or phase");
        return it->second;
    }
    if (adj_phase.conjugate() * adj_phase != Scalar::one(cfg_.field()))
        throw std::invalid_argument("adjoint phase of '" + name +
                                    "' must satisfy conj(phase)*phase = 1");
    Generator g;
    g.family = Family::Param;
    g.index = param_seq_++;
    g.degree = deg;
    g.adj_phase = adj_phase;
    g.name = name;
    g.order_key = (8ull << 32) | static_cast<std::uint32_t>(g.index);
    gens_.push_back(std::move(g));
    int id = static_cast<int>(gens_.size()) - 1;
    params_[name] = id;
    return id;
}

int GrassmannAlgebra::find_canonical(Family fam, int index) const {
    auto it = canon_.find(std::make_pair(static_cast<int>(fam), index));
    return it == canon_.end() ? -1 : it->second;
}

int GrassmannAlgebra::find_parameter(const std::string& name) const {
    auto it = params_.find(name);
    return it == params_.end() ? -1 : it->second;
}

GrassmannAlgebra::NormalForm GrassmannAlgebra::normal_order(std::vector<int> seq) const {
    NormalForm nf;
    // Insertion sort: each adjacent swap u v -> v u contributes epsilon(du, dv),
    // evaluated on the declared integer degree vectors.
    for (size_t i = 1; i < seq.size(); ++i) {
        size_t j = i;
        while (j > 0 && gen(seq[j]).order_key < gen(seq[j - 1]).order_key) {
            auto [p, e] = GradingConfig::epsilon_parts(gen(seq[j - 1]).degree, gen(seq[j]).degree);
            nf.parity += p;
            nf.qexp += e;
            std::swap(seq[j - 1], seq[j]);
            --j;
        }
    }
    for (size_t i = 1; i < seq.size(); ++i) {
        if (seq[i] == seq[i - 1] && !self_commuting(seq[i])) {
            nf.zero = true;
            return nf;
        }
    }
    nf.ids = std::move(seq);
    return nf;
}

Degree GrassmannAlgebra::word_degree(const std::vector<int>& ids) const {
    Degree d{0, 0, 0};
    for (int id : ids) d = cfg_.add(d, gen(id).degree);
    return d;
}

Multivector Multivector::scalar(const GrassmannAlgebra& alg, const Scalar& s) {
    Multivector m(&alg);
    if (!s.is_zero()) m.terms_[{}] = s;
    return m;
}

Multivector Multivector::generator(const GrassmannAlgebra& alg, int id) {
    Multivector m(&alg);
    m.terms_[{id}] = Scalar::one(alg.field());
    return m;
}

Multivector Multivector::word(const GrassmannAlgebra& alg, const std::vector<int>& ids,
                              const Scalar& coeff) {
    Multivector m(&alg);
    m.accumulate(ids, coeff);
    return m;
}

void Multivector::accumulate(const std::vector<int>& seq, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto nf = alg_->normal_order(seq);
    if (nf.zero) return;
    Scalar c = coeff * Scalar::sign_q(alg_->field(), nf.parity, nf.qexp);
    auto it = terms_.find(nf.ids);
    if (it == terms_.end()) {
        terms_.emplace(std::move(nf.ids), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Multivector::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

std::optional<Scalar> Multivector::as_scalar() const {
    if (terms_.empty()) return alg_ ? Scalar::zero(alg_->field()) : Scalar();
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
}

Scalar Multivector::coefficient(const std::vector<int>& ids) const {
    auto nf = alg_->normal_order(ids);
    if (nf.zero) return Scalar::zero(alg_->field());
    auto it = terms_.find(nf.ids);
    if (it == terms_.end()) return Scalar::zero(alg_->field());
    // Undo the reordering factor so the caller gets the coefficient of the
    // exact sequence asked about.
    return Scalar::sign_q(alg_->field(), -nf.parity, -nf.qexp) * it->second;
}

Multivector Multivector::operator-() const {
    Multivector out(*this);
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    if (!alg_) alg_ = o.alg_;
    for (const auto& [w, c] : o.terms_) {
        auto it = terms_.find(w);
        if (it == terms_.end())
            terms_[w] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) { return *this += -o; }

Multivector operator*(const Multivector& a, const Multivector& b) {
    const GrassmannAlgebra* alg = a.alg_ ? a.alg_ : b.alg_;
    Multivector out(alg);
    std::vector<int> seq;
    for (const auto& [w1, c1] : a.terms_) {
        for (const auto& [w2, c2] : b.terms_) {
            seq.clear();
            seq.insert(seq.end(), w1.begin(), w1.end());
            seq.insert(seq.end(), w2.begin(), w2.end());
            out.accumulate(seq, c1 * c2);
        }
    }
    return out;
}

Multivector operator*(const Scalar& s, Multivector a) {
    if (s.is_zero()) return Multivector(a.alg_);
    for (auto& [w, c] : a.terms_) c *= s;
    a.prune();
    return a;
}

bool Multivector::operator==(const Multivector& o) const {
    return (*this - o).terms_.empty();
}

Multivector Multivector::adjoint() const {
    Multivector out(alg_);
    for (const auto& [w, c] : terms_) {
        Scalar coeff = c.conjugate();
        for (int id : w) coeff *= alg_->gen(id).adj_phase;
        std::vector<int> rev(w.rbegin(), w.rend());
        out.accumulate(rev, coeff);
    }
    return out;
}

Multivector Multivector::derivative(int gen_id) const {
    Multivector out(alg_);
    const Degree dx = alg_->gen(gen_id).degree;
    for (const auto& [w, c] : terms_) {
        // Passing the derivative over a prefix generator u contributes
        // epsilon(d_u, d_x).  The other orientation would not descend to the
        // quotient by the exchange relations: d/dx (u x) must equal
        // epsilon(d_u,d_x) d/dx (x u) term by term, which needs antisymmetry
        // of the two factors, not their product.
        long parity = 0, qexp = 0;
        for (size_t p = 0; p < w.size(); ++p) {
            if (w[p] == gen_id) {
                std::vector<int> rest;
                rest.reserve(w.size() - 1);
                rest.insert(rest.end(), w.begin(), w.begin() + static_cast<long>(p));
                rest.insert(rest.end(), w.begin() + static_cast<long>(p) + 1, w.end());
                out.accumulate(rest, c * Scalar::sign_q(alg_->field(), parity, qexp));
            }
            auto [pp, ee] = GradingConfig::epsilon_parts(alg_->gen(w[p]).degree, dx);
            parity += pp;
            qexp += ee;
        }
    }
    return out;
}

std::optional<Degree> Multivector::homogeneous_degree() const {
    if (terms_.empty()) return Degree{0, 0, 0};
    std::optional<Degree> d;
    for (const auto& [w, c] : terms_) {
        Degree wd = alg_->word_degree(w);
        if (!d)
            d = wd;
        else if (*d != wd)
            return std::nullopt;
    }
    return d;
}

Multivector Multivector::filter(
    const std::function<bool(const std::vector<int>&)>& keep) const {
    Multivector out(alg_);
    for (const auto& [w, c] : terms_)
        if (keep(w)) out.terms_[w] = c;
    return out;
}

std::string Multivector::str() const {
    if (terms_.empty()) return "0";
    // Render in canonical order: shorter words first, then by order_key.
    std::vector<const std::pair<const std::vector<int>, Scalar>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    auto keyseq = [this](const std::vector<int>& w) {
        std::vector<std::uint64_t> ks;
        ks.reserve(w.size());
        for (int id : w) ks.push_back(alg_->gen(id).order_key);
        return ks;
    };
    std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
        if (a->first.size() != b->first.size()) return a->first.size() < b->first.size();
        return keyseq(a->first) < keyseq(b->first);
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        std::string cs = t->second.str();
        bool negated = false;
        if (!first && cs.size() && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            cs = cs.substr(1);
            negated = true;
        }
        os << (first ? "" : (negated ? " - " : " + "));
        first = false;
        bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (t->first.empty()) {
            os << (compound && ts.size() > 1 ? "(" + cs + ")" : cs);
            continue;
        }
        if (compound)
            os << "(" << cs << ")*";
        else if (cs == "1")
            ;  // unit coefficient: just the word
        else if (cs == "-1")
            os << "-";
        else
            os << cs << "*";
        bool fw = true;
        for (int id : t->first) {
            os << (fw ? "" : "*") << alg_->gen(id).name;
            fw = false;
        }
    }
    return os.str();
}

}  // namespace colorpoincare
