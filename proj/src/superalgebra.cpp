#include "colorpoincare/superalgebra.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "colorpoincare/parallel.hpp"

namespace colorpoincare {

namespace {

const std::array<Degree, 8> kQDeg = {{{1, 1, 1},
                                      {1, 0, 0},
                                      {0, 1, 0},
                                      {0, 0, 1},
                                      {-1, -1, -1},
                                      {-1, 0, 0},
                                      {0, -1, 0},
                                      {0, 0, -1}}};
const char* kQName[8] = {"w", "r", "g", "b", "wb", "rb", "gb", "bb"};

const std::array<Degree, 12> kRDeg = {{{1, 1, 0},
                                       {0, 1, 1},
                                       {1, 0, 1},
                                       {-1, -1, 0},
                                       {0, -1, -1},
                                       {-1, 0, -1},
                                       {1, -1, 0},
                                       {0, 1, -1},
                                       {-1, 0, 1},
                                       {-1, 1, 0},
                                       {0, -1, 1},
                                       {1, 0, -1}}};
const char* kRName[12] = {"r+g",   "g+b",   "b+r",   "rb+gb", "gb+bb", "bb+rb",
                          "r+gb",  "g+bb",  "b+rb",  "rb+g",  "gb+b",  "bb+r"};

Degree add_deg(const Degree& a, const Degree& b) { return {a.r + b.r, a.g + b.g, a.b + b.b}; }

int r_deg_index(const Degree& d) {
    for (int k = 0; k < 12; ++k)
        if (kRDeg[static_cast<size_t>(k)] == d) return k;
    return -1;
}

int opp_q(int di) { return di < 4 ? di + 4 : di - 4; }
bool is_color(int di) { return di == 1 || di == 2 || di == 3; }
bool is_anticolor(int di) { return di == 5 || di == 6 || di == 7; }
bool is_colored(int di) { return is_color(di) || is_anticolor(di); }

// Natural sector orientations for the two-component tables: the left-handed
// (unconjugated) spinor sits in the first slot wherever the pair is mixed
// handed, and the pure same-handed sectors follow the colour cycle. The
// pairing matrices need not be symmetric here, so the reverse orientation is
// completed through epsilon-antisymmetry instead of re-applying the formula.
bool natural_2c(int di, int dj) {
    if (dj == opp_q(di)) return di < 4;
    if (is_color(di) && is_color(dj))
        return (di == 1 && dj == 2) || (di == 2 && dj == 3) || (di == 3 && dj == 1);
    if (is_anticolor(di) && is_anticolor(dj))
        return (di == 5 && dj == 6) || (di == 6 && dj == 7) || (di == 7 && dj == 5);
    if (is_color(di) && is_anticolor(dj)) return true;   // mixed, unbarred first
    if (di == 0 && is_anticolor(dj)) return true;        // white with anticolour
    if (is_color(di) && dj == 4) return true;            // colour with antiwhite
    return false;
}

}  // namespace

Rational KappaConfig::of(const Degree& d) const {
    Degree a{std::abs(d.r), std::abs(d.g), std::abs(d.b)};
    if (a == Degree{1, 1, 1}) return white;
    if (a == Degree{1, 0, 0}) return r;
    if (a == Degree{0, 1, 0}) return g;
    if (a == Degree{0, 0, 1}) return b;
    throw std::invalid_argument("kappa is defined for the white and colour degrees, got " + d.str());
}

const std::array<Degree, 8>& Superalgebra::q_degrees() { return kQDeg; }
const std::array<Degree, 12>& Superalgebra::r_degrees() { return kRDeg; }
std::string Superalgebra::q_degree_name(int k) { return kQName[k]; }
std::string Superalgebra::r_degree_name(int k) { return kRName[k]; }

Superalgebra::Superalgebra(const GradingConfig& cfg, CliffordData cliff, KappaConfig kappa,
                           Units units)
    : cfg_(cfg), f_(cfg.field()), cliff_(std::move(cliff)), kappa_(kappa), units_(units) {
    if (cliff_.spinor_dim != 2 && cliff_.spinor_dim != 4)
        throw std::invalid_argument("spinor_dim must be 2 or 4");
    build_basis();
    build_table();
}

Superalgebra Superalgebra::make(const GradingConfig& cfg, int spinor_dim, KappaConfig kappa,
                                Units units) {
    return Superalgebra(cfg, default_clifford(cfg.field(), spinor_dim), kappa, units);
}

void Superalgebra::build_basis() {
    basis_.clear();
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) {
            BasisElement e;
            e.kind = BasisKind::M;
            e.alpha = a;
            e.beta = b;
            e.name = "M[" + std::to_string(a) + "," + std::to_string(b) + "]";
            basis_.push_back(std::move(e));
        }
    for (int mu = 1; mu <= 4; ++mu) {
        BasisElement e;
        e.kind = BasisKind::P;
        e.mu = mu;
        e.name = "P[" + std::to_string(mu) + "]";
        basis_.push_back(std::move(e));
    }
    for (int di = 0; di < 8; ++di)
        for (int c = 0; c < cliff_.spinor_dim; ++c) {
            BasisElement e;
            e.kind = BasisKind::Q;
            e.deg_idx = di;
            e.comp = c;
            e.deg = kQDeg[static_cast<size_t>(di)];
            e.name = "Q[" + std::to_string(c + 1) + ";" + kQName[di] + "]";
            basis_.push_back(std::move(e));
        }
    for (int ci = 0; ci < 12; ++ci)
        for (int a = 0; a < 4; ++a) {
            BasisElement e;
            e.kind = BasisKind::R;
            e.deg_idx = ci;
            e.comp = a;
            e.deg = kRDeg[static_cast<size_t>(ci)];
            e.name = "R[" + std::to_string(a + 1) + ";" + kRName[ci] + "]";
            basis_.push_back(std::move(e));
        }

    // Degree-pair epsilon cache over the distinct degrees that occur.
    std::vector<Degree> degs;
    deg_of_.assign(basis_.size(), -1);
    for (size_t i = 0; i < basis_.size(); ++i) {
        const Degree& d = basis_[i].deg;
        int found = -1;
        for (size_t k = 0; k < degs.size(); ++k)
            if (degs[k] == d) {
                found = static_cast<int>(k);
                break;
            }
        if (found < 0) {
            found = static_cast<int>(degs.size());
            degs.push_back(d);
        }
        deg_of_[i] = found;
    }
    n_deg_ = static_cast<int>(degs.size());
    eps_deg_.clear();
    eps_deg_.reserve(static_cast<size_t>(n_deg_) * static_cast<size_t>(n_deg_));
    for (int a = 0; a < n_deg_; ++a)
        for (int b = 0; b < n_deg_; ++b)
            eps_deg_.push_back(cfg_.epsilon(degs[static_cast<size_t>(a)], degs[static_cast<size_t>(b)]));
}

const Scalar& Superalgebra::epsilon_basis(int i, int j) const {
    return eps_deg_[static_cast<size_t>(deg_of_[static_cast<size_t>(i)]) * static_cast<size_t>(n_deg_) +
                    static_cast<size_t>(deg_of_[static_cast<size_t>(j)])];
}

int Superalgebra::index_of(const std::string& name) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Superalgebra::m_index(int alpha, int beta) const { return CliffordData::pair_index(alpha, beta); }
int Superalgebra::p_index(int mu) const { return 6 + (mu - 1); }
int Superalgebra::q_index(int deg_idx, int comp) const {
    return 10 + deg_idx * cliff_.spinor_dim + comp;
}
int Superalgebra::r_index(int deg_idx, int comp) const {
    return 10 + 8 * cliff_.spinor_dim + deg_idx * 4 + comp;
}

void Superalgebra::add_term(int i, int j, int target, const Scalar& c) {
    if (c.is_zero()) return;
    LinComb& s = slot(i, j);
    for (auto& [t, v] : s)
        if (t == target) {
            v += c;
            return;
        }
    s.emplace_back(target, c);
}

void Superalgebra::build_table() {
    table_.assign(basis_.size() * basis_.size(), {});
    fill_mm();
    fill_m_other();
    fill_qq();
    complete_by_antisymmetry();
    for (auto& s : table_) {
        std::sort(s.begin(), s.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        s.erase(std::remove_if(s.begin(), s.end(), [](const auto& t) { return t.second.is_zero(); }),
                s.end());
    }
}

void Superalgebra::fill_mm() {
    Scalar h_over_i = Scalar::from_rational(f_, units_.hbar) * (-Scalar::i(f_));
    // [M_ab, M_cd] = (hbar/i)(eta_ac M_bd - eta_ad M_bc - eta_bc M_ad + eta_bd M_ac)
    auto add_m = [&](int i, int j, int sign, int metric_slot, int a, int b) {
        if (a == b) return;
        Scalar c = Scalar::from_rational(f_, sign * cliff_.eta(metric_slot)) * h_over_i;
        if (a < b)
            add_term(i, j, m_index(a, b), c);
        else
            add_term(i, j, m_index(b, a), -c);
    };
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c)
                for (int d = c + 1; d <= 4; ++d) {
                    int i = m_index(a, b), j = m_index(c, d);
                    if (a == c) add_m(i, j, +1, a, b, d);
                    if (a == d) add_m(i, j, -1, a, b, c);
                    if (b == c) add_m(i, j, -1, b, a, d);
                    if (b == d) add_m(i, j, +1, b, a, c);
                }
}

void Superalgebra::fill_m_other() {
    Scalar h_over_i = Scalar::from_rational(f_, units_.hbar) * (-Scalar::i(f_));
    Scalar h_over_2i = Scalar::from_rational(f_, units_.hbar / 2) * (-Scalar::i(f_));
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) {
            int mi = m_index(a, b);
            // [M_ab, P_mu] = (hbar/i)(eta_amu P_b - eta_bmu P_a)
            add_term(mi, p_index(a), p_index(b), Scalar::from_rational(f_, cliff_.eta(a)) * h_over_i);
            add_term(mi, p_index(b), p_index(a), -Scalar::from_rational(f_, cliff_.eta(b)) * h_over_i);
            // [M_ab, R_c] carries the same vector action on the component index.
            for (int ci = 0; ci < 12; ++ci) {
                add_term(mi, r_index(ci, a - 1), r_index(ci, b - 1),
                         Scalar::from_rational(f_, cliff_.eta(a)) * h_over_i);
                add_term(mi, r_index(ci, b - 1), r_index(ci, a - 1),
                         -Scalar::from_rational(f_, cliff_.eta(b)) * h_over_i);
            }
            // [M_ab, Q_i] = (hbar/2i) sum_j W_{ij} Q_j
            const MatS& w0 = cliff_.spin_w(a, b);
            MatS wconj = w0.conjugate();
            for (int di = 0; di < 8; ++di) {
                const MatS& w = (cliff_.conj_spin_for_anti && di >= 4) ? wconj : w0;
                for (int i = 0; i < cliff_.spinor_dim; ++i)
                    for (int j = 0; j < cliff_.spinor_dim; ++j)
                        add_term(mi, q_index(di, i), q_index(di, j), h_over_2i * w.at(i, j));
            }
        }
}

void Superalgebra::fill_qq() {
    const Scalar one = Scalar::one(f_);
    const Scalar half = Scalar::from_rational(f_, Rational(1, 2));
    auto sqrt_kk = [&](const Degree& d, const Degree& e) {
        Rational prod = kappa_.of(d) * kappa_.of(e);
        auto s = Scalar::sqrt_rational(f_, prod);
        if (!s)
            throw std::domain_error("sqrt(kappa_d * kappa_d') = sqrt(" + rational_str(prod) +
                                    ") does not exist in the coefficient field; pick kappa values "
                                    "with square pairwise products");
        return *s;
    };
    for (int di = 0; di < 8; ++di)
        for (int dj = 0; dj < 8; ++dj) {
            if (cliff_.spinor_dim == 2 && !natural_2c(di, dj)) continue;
            const Degree& d = kQDeg[static_cast<size_t>(di)];
            const Degree& e = kQDeg[static_cast<size_t>(dj)];
            if (dj == opp_q(di)) {
                // [Q_d, Q_-d] = sP * kappa_d * sum_mu pairP[mu] P_mu
                Scalar c0 = Scalar::from_rational(f_, Rational(cliff_.sP) * kappa_.of(d));
                for (int mu = 0; mu < 4; ++mu)
                    for (int i = 0; i < cliff_.spinor_dim; ++i)
                        for (int j = 0; j < cliff_.spinor_dim; ++j)
                            add_term(q_index(di, i), q_index(dj, j), p_index(mu + 1),
                                     c0 * cliff_.pairP[static_cast<size_t>(mu)].at(i, j));
            } else if (is_colored(di) && is_colored(dj) && dj != di) {
                // colour-colour: ((1 - epsilon(d,e))/2) sqrt(kk') sum_a pairR[a] R_a^{d+e}
                int ri = r_deg_index(add_deg(d, e));
                if (ri < 0) throw std::logic_error("colour pair missing bicolor target");
                Scalar w = (one - cfg_.epsilon(d, e)) * half * sqrt_kk(d, e);
                for (int a = 0; a < 4; ++a)
                    for (int i = 0; i < cliff_.spinor_dim; ++i)
                        for (int j = 0; j < cliff_.spinor_dim; ++j)
                            add_term(q_index(di, i), q_index(dj, j), r_index(ri, a),
                                     w * cliff_.pairR[static_cast<size_t>(a)].at(i, j));
            } else if ((di == 0 && is_anticolor(dj)) || (di == 4 && is_color(dj)) ||
                       (dj == 0 && is_anticolor(di)) || (dj == 4 && is_color(di))) {
                // white-anticolour (and antiwhite-colour): -sqrt(kk') sum_a pairR[a] R_a^{d+e}
                int ri = r_deg_index(add_deg(d, e));
                if (ri < 0) throw std::logic_error("white-anticolour pair missing bicolor target");
                Scalar w = -sqrt_kk(d, e);
                for (int a = 0; a < 4; ++a)
                    for (int i = 0; i < cliff_.spinor_dim; ++i)
                        for (int j = 0; j < cliff_.spinor_dim; ++j)
                            add_term(q_index(di, i), q_index(dj, j), r_index(ri, a),
                                     w * cliff_.pairR[static_cast<size_t>(a)].at(i, j));
            }
            // remaining degree pairs have no admissible target: bracket is zero
        }
}

void Superalgebra::complete_by_antisymmetry() {
    int n = dim();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !slot(x, y).empty() || slot(y, x).empty()) continue;
            Scalar w = -epsilon_basis(x, y);
            for (const auto& [t, c] : slot(y, x)) add_term(x, y, t, w * c);
        }
}

SuiteReport Superalgebra::grading_report() const {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.name = "algebra-grading";
    int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ++rep.cases;
            Degree want = add_deg(at(i).deg, at(j).deg);
            for (const auto& [t, c] : bracket(i, j))
                if (!(at(t).deg == want))
                    rep.add_failure("[" + at(i).name + ", " + at(j).name + "]",
                                    "target " + at(t).name + " has degree " + at(t).deg.str() +
                                        ", expected " + want.str());
        }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport Superalgebra::antisymmetry_report() const {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.name = "algebra-antisymmetry";
    int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ++rep.cases;
            // bracket(j,i) must equal -epsilon(d_j, d_i) * bracket(i,j)
            LinComb want;
            Scalar w = -epsilon_basis(j, i);
            for (const auto& [t, c] : bracket(i, j)) {
                Scalar v = w * c;
                if (!v.is_zero()) want.emplace_back(t, v);
            }
            const LinComb& have = bracket(j, i);
            bool ok = have.size() == want.size();
            for (size_t k = 0; ok && k < have.size(); ++k)
                ok = have[k].first == want[k].first && have[k].second == want[k].second;
            if (!ok)
                rep.add_failure("[" + at(j).name + ", " + at(i).name + "]",
                                "does not equal -epsilon * [" + at(i).name + ", " + at(j).name + "]");
        }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void Superalgebra::accumulate_nested(std::vector<std::pair<int, Scalar>>& res, int x,
                                     const LinComb& inner, const Scalar& weight) const {
    for (const auto& [t, c] : inner) {
        const LinComb& second = bracket(x, t);
        for (const auto& [u, c2] : second) {
            Scalar v = weight * c * c2;
            if (v.is_zero()) continue;
            bool merged = false;
            for (auto& [ri, rv] : res)
                if (ri == u) {
                    rv += v;
                    merged = true;
                    break;
                }
            if (!merged) res.emplace_back(u, v);
        }
    }
}

std::string Superalgebra::triple_name(int i, int j, int k) const {
    return "(" + at(i).name + ", " + at(j).name + ", " + at(k).name + ")";
}

bool Superalgebra::jacobi_holds(int i, int j, int k) const {
    if (bracket(j, k).empty() && bracket(k, i).empty() && bracket(i, j).empty()) return true;
    std::vector<std::pair<int, Scalar>> res;
    accumulate_nested(res, i, bracket(j, k), epsilon_basis(k, i));
    accumulate_nested(res, j, bracket(k, i), epsilon_basis(i, j));
    accumulate_nested(res, k, bracket(i, j), epsilon_basis(j, k));
    for (const auto& [t, c] : res)
        if (!c.is_zero()) return false;
    return true;
}

SuiteReport Superalgebra::jacobi_report(bool parallel) const {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.name = "algebra-jacobi";
    const int n = dim();
    rep.cases = static_cast<long long>(n) * n * n;

    // Failures are gathered with a sort key so the serial and parallel paths
    // report identically.
    std::mutex mx;
    std::vector<std::tuple<long long, std::string, std::string>> fails;
    long long pure_pair = 0, other = 0;

    auto same_handed_colored_pair = [&](int i, int j, int k) {
        int idx[3] = {i, j, k};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                const BasisElement &x = at(idx[a]), &y = at(idx[b]);
                if (x.kind != BasisKind::Q || y.kind != BasisKind::Q) continue;
                if (x.deg_idx == y.deg_idx) continue;
                if ((is_color(x.deg_idx) && is_color(y.deg_idx)) ||
                    (is_anticolor(x.deg_idx) && is_anticolor(y.deg_idx)))
                    return true;
            }
        return false;
    };

    parallel_for(static_cast<long long>(n) * n, parallel, [&](long long idx) {
        int i = static_cast<int>(idx / n), j = static_cast<int>(idx % n);
        std::vector<std::pair<int, Scalar>> res;
        for (int k = 0; k < n; ++k) {
            if (bracket(j, k).empty() && bracket(k, i).empty() && bracket(i, j).empty()) continue;
            res.clear();
            accumulate_nested(res, i, bracket(j, k), epsilon_basis(k, i));
            accumulate_nested(res, j, bracket(k, i), epsilon_basis(i, j));
            accumulate_nested(res, k, bracket(i, j), epsilon_basis(j, k));
            std::string detail;
            for (const auto& [t, c] : res)
                if (!c.is_zero()) {
                    if (!detail.empty()) detail += ", ";
                    if (detail.size() < 160) detail += at(t).name + ": " + c.str();
                }
            if (!detail.empty()) {
                long long key = (idx * n) + k;
                std::lock_guard<std::mutex> lock(mx);
                fails.emplace_back(key, triple_name(i, j, k), "residual " + detail);
                if (same_handed_colored_pair(i, j, k))
                    ++pure_pair;
                else
                    ++other;
            }
        }
    });

    std::sort(fails.begin(), fails.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    for (const auto& [key, ctx, det] : fails) rep.add_failure(ctx, det);
    rep.info["failures_with_same_handed_colour_pair"] = std::to_string(pure_pair);
    rep.info["failures_otherwise"] = std::to_string(other);
    rep.info["threads"] = std::to_string(parallel ? effective_threads() : 1);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

long long Superalgebra::jacobi_failures_on(const std::vector<int>& subset) const {
    long long fails = 0;
    for (int i : subset)
        for (int j : subset)
            for (int k : subset)
                if (!jacobi_holds(i, j, k)) ++fails;
    return fails;
}

void Superalgebra::inject_fault(const std::string& kind) {
    int qr = q_index(1, 0), qrb = q_index(5, 0);
    if (kind == "epsilon-sign") {
        // Flips one orientation of a [Q, Qbar] bracket; antisymmetry and
        // Jacobi both notice.
        for (auto& [t, c] : slot(qr, qrb)) c = -c;
        return;
    }
    if (kind == "jacobi-drop") {
        LinComb& s = slot(m_index(1, 2), m_index(2, 3));
        if (!s.empty()) s.pop_back();
        return;
    }
    if (kind == "grading-shift") {
        // Moves a bracket target into a wrong-degree slot.
        LinComb& s = slot(qr, qrb);
        if (!s.empty()) s[0].first = r_index(0, 0);
        return;
    }
    throw std::invalid_argument("unknown fault kind: " + kind +
                                " (expected epsilon-sign, jacobi-drop or grading-shift)");
}

std::vector<ConventionCandidate> convention_search(const GradingConfig& cfg, int spinor_dim,
                                                   const KappaConfig& kappa, Units units,
                                                   bool full_verify, bool parallel) {
    auto cands = enumerate_clifford_candidates(cfg.field(), spinor_dim);
    std::vector<ConventionCandidate> out(cands.size());
    // Probe triples: everything over the M, P and Q blocks; the R block only
    // receives the vector action already exercised through P.
    std::vector<int> probe;
    for (int i = 0; i < 10 + 8 * spinor_dim; ++i) probe.push_back(i);
    parallel_for(static_cast<long long>(cands.size()), parallel, [&](long long ci) {
        const auto& cand = cands[static_cast<size_t>(ci)];
        Superalgebra alg(cfg, cand.data, kappa, units);
        ConventionCandidate& slot = out[static_cast<size_t>(ci)];
        slot.cliff = cand.data;
        slot.id = cand.id;
        slot.probe_failures = alg.jacobi_failures_on(probe);
    });
    std::stable_sort(out.begin(), out.end(), [](const ConventionCandidate& a, const ConventionCandidate& b) {
        return a.probe_failures < b.probe_failures;
    });
    if (full_verify && !out.empty()) {
        long long best = out.front().probe_failures;
        for (auto& c : out) {
            if (c.probe_failures != best) break;
            Superalgebra alg(cfg, c.cliff, kappa, units);
            c.full_failures = alg.jacobi_report(parallel).failure_count;
        }
        std::stable_sort(out.begin(), out.end(), [&](const ConventionCandidate& a, const ConventionCandidate& b) {
            long long fa = a.full_failures >= 0 ? a.full_failures : a.probe_failures + 1000000;
            long long fb = b.full_failures >= 0 ? b.full_failures : b.probe_failures + 1000000;
            return fa < fb;
        });
    }
    return out;
}

}  // namespace colorpoincare
