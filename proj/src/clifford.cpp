#include "colorpoincare/clifford.hpp"

#include <stdexcept>

namespace colorpoincare {

int CliffordData::pair_index(int alpha, int beta) {
    if (!(1 <= alpha && alpha < beta && beta <= 4))
        throw std::invalid_argument("pair_index wants 1 <= alpha < beta <= 4");
    if (alpha == 1) return beta - 2;          // (1,2)(1,3)(1,4)
    if (alpha == 2) return beta;              // (2,3)->3 (2,4)->4
    return 5;                                 // (3,4)
}

namespace {

const std::array<std::array<int, 4>, 3> kMetrics = {{{{1, 1, 1, -1}}, {{1, 1, 1, 1}}, {{-1, -1, -1, 1}}}};
const char* kMetricNames[3] = {"(+,+,+,-)", "(+,+,+,+)", "(-,-,-,+)"};
const char* kSetNames[3] = {"majorana", "dirac", "chiral"};

std::string metric_name(const std::array<int, 4>& m) {
    for (int i = 0; i < 3; ++i)
        if (kMetrics[static_cast<size_t>(i)] == m) return kMetricNames[i];
    std::string s = "(";
    for (int i = 0; i < 4; ++i) s += std::string(m[static_cast<size_t>(i)] > 0 ? "+" : "-") + (i < 3 ? "," : ")");
    return s;
}

// Hermitian generators squaring to +1; the metric is put in by scaling the
// negative-signature slots with i.
std::vector<MatS> euclid_set(const FieldPtr& f, int which) {
    MatS s0 = pauli(f, 0), s1 = pauli(f, 1), s2 = pauli(f, 2), s3 = pauli(f, 3);
    switch (which) {
        case 0: return {kron(s3, s1), kron(s3, s3), kron(s1, s0), kron(s2, s0)};  // majorana
        case 1: return {kron(s1, s1), kron(s1, s2), kron(s1, s3), kron(s3, s0)};  // dirac
        case 2: return {kron(s1, s1), kron(s1, s2), kron(s1, s3), kron(s2, s0)};  // chiral
        default: throw std::invalid_argument("unknown gamma set");
    }
}

std::vector<MatS> scaled_gammas(const FieldPtr& f, int which, const std::array<int, 4>& metric) {
    auto g = euclid_set(f, which);
    for (int mu = 0; mu < 4; ++mu)
        if (metric[static_cast<size_t>(mu)] < 0) g[static_cast<size_t>(mu)] = Scalar::i(f) * g[static_cast<size_t>(mu)];
    return g;
}

std::vector<MatS> spin_ws(const std::vector<MatS>& gamma, bool order_ab) {
    std::vector<MatS> w;
    w.reserve(6);
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b)
            w.push_back(order_ab ? gamma[static_cast<size_t>(a - 1)] * gamma[static_cast<size_t>(b - 1)]
                                 : gamma[static_cast<size_t>(b - 1)] * gamma[static_cast<size_t>(a - 1)]);
    return w;
}

bool build_pairings_4c(CliffordData& d) {
    const FieldPtr& f = d.C.field();
    // R2: C gamma^T C^-1 = -gamma, and gamma^mu C symmetric; both are needed
    // for the odd tables to close consistently in every orientation.
    for (int mu = 0; mu < 4; ++mu) {
        const MatS& g = d.gamma[static_cast<size_t>(mu)];
        if (d.C * g.transpose() * d.Cinv != -g) return false;
    }
    d.pairP.clear();
    for (int mu = 0; mu < 4; ++mu) {
        MatS up = Scalar::from_rational(f, d.metric[static_cast<size_t>(mu)]) * (d.gamma[static_cast<size_t>(mu)] * d.C);
        if (up != up.transpose()) return false;
        d.pairP.push_back(up);
    }
    d.pairR = d.pairP;
    return true;
}

CliffordData make_2c(const FieldPtr& f, const std::array<int, 4>& metric, const Scalar& sigma4,
                     bool order_ab, bool transpose_x, int p, const Scalar& x4) {
    CliffordData d;
    d.spinor_dim = 2;
    d.metric = metric;
    d.gamma = {pauli(f, 1), pauli(f, 2), pauli(f, 3), sigma4 * MatS::identity(2, f)};
    d.spinW = spin_ws(d.gamma, order_ab);
    d.conj_spin_for_anti = true;
    d.sP = +1;
    std::vector<MatS> x;
    for (int a = 0; a < 3; ++a) {
        MatS m = transpose_x ? d.gamma[static_cast<size_t>(a)].transpose() : d.gamma[static_cast<size_t>(a)];
        x.push_back(Scalar::from_rational(f, p) * m);
    }
    x.push_back(x4 * MatS::identity(2, f));
    d.pairP.clear();
    d.pairR.clear();
    for (int mu = 0; mu < 4; ++mu) {
        Scalar up = Scalar::from_rational(f, metric[static_cast<size_t>(mu)]);
        d.pairP.push_back(up * x[static_cast<size_t>(mu)]);
        d.pairR.push_back(up * x[static_cast<size_t>(mu)]);
    }
    d.record["formulation"] = "two";
    d.record["metric"] = metric_name(metric);
    d.record["sigma4"] = sigma4.str();
    d.record["worder"] = order_ab ? "ab" : "ba";
    d.record["pairing"] = std::string(transpose_x ? "sigma^T" : "sigma") + ", p=" + (p > 0 ? "+1" : "-1") +
                          ", x4=" + x4.str();
    return d;
}

}  // namespace

CliffordData default_clifford(const FieldPtr& f, int spinor_dim) {
    if (spinor_dim == 2) {
        CliffordData d = make_2c(f, kMetrics[0], Scalar::one(f), /*order_ab=*/true,
                                 /*transpose_x=*/false, /*p=*/1, -Scalar::one(f));
        return d;
    }
    if (spinor_dim != 4) throw std::invalid_argument("spinor_dim must be 2 or 4");
    CliffordData d;
    d.spinor_dim = 4;
    d.metric = kMetrics[0];
    d.gamma = scaled_gammas(f, 0, d.metric);
    // C = -i*gamma4 = sigma2 x 1: real, antisymmetric, C gamma^T C^-1 = -gamma.
    d.C = kron(pauli(f, 2), pauli(f, 0));
    d.Cinv = d.C.inverse();
    d.spinW = spin_ws(d.gamma, /*order_ab=*/true);
    d.conj_spin_for_anti = false;
    d.sP = -1;
    if (!build_pairings_4c(d)) throw std::logic_error("default convention failed its structure checks");
    d.record["formulation"] = "four";
    d.record["metric"] = metric_name(d.metric);
    d.record["set"] = "majorana";
    d.record["worder"] = "ab";
    d.record["C"] = "-i*g4 (real antisymmetric)";
    return d;
}

std::vector<CliffordCandidate> enumerate_clifford_candidates(const FieldPtr& f, int spinor_dim) {
    std::vector<CliffordCandidate> out;
    if (spinor_dim == 2) {
        const Scalar one = Scalar::one(f), I = Scalar::i(f);
        const Scalar sig4s[3] = {one, I, -I};
        const Scalar x4s[4] = {one, -one, I, -I};
        for (int mi = 0; mi < 3; ++mi)
            for (int s4 = 0; s4 < 3; ++s4)
                for (int wo = 0; wo < 2; ++wo)
                    for (int tr = 0; tr < 2; ++tr)
                        for (int p = 0; p < 2; ++p)
                            for (int w4 = 0; w4 < 4; ++w4) {
                                CliffordCandidate c;
                                c.data = make_2c(f, kMetrics[static_cast<size_t>(mi)], sig4s[s4], wo == 0,
                                                 tr == 1, p == 0 ? 1 : -1, x4s[w4]);
                                c.id = std::string("2c;metric=") + kMetricNames[mi] + ";sigma4=" + sig4s[s4].str() +
                                       ";worder=" + (wo == 0 ? "ab" : "ba") + ";X=" + (tr ? "sigmaT" : "sigma") +
                                       ";p=" + (p == 0 ? "+1" : "-1") + ";x4=" + x4s[w4].str();
                                out.push_back(std::move(c));
                            }
        return out;
    }
    if (spinor_dim != 4) throw std::invalid_argument("spinor_dim must be 2 or 4");
    // Subsets of {1,2,3,4} ordered by size then lexicographically.
    std::vector<std::vector<int>> subsets;
    for (int size = 0; size <= 4; ++size)
        for (int mask = 0; mask < 16; ++mask) {
            std::vector<int> s;
            for (int b = 0; b < 4; ++b)
                if (mask & (1 << b)) s.push_back(b + 1);
            if (static_cast<int>(s.size()) == size) subsets.push_back(s);
        }
    const Scalar one = Scalar::one(f), I = Scalar::i(f);
    const Scalar phases[4] = {one, I, -one, -I};
    const char* phase_names[4] = {"1", "i", "-1", "-i"};
    for (int mi = 0; mi < 3; ++mi)
        for (int set = 0; set < 3; ++set)
            for (int wo = 0; wo < 2; ++wo) {
                auto gamma = scaled_gammas(f, set, kMetrics[static_cast<size_t>(mi)]);
                for (const auto& sub : subsets)
                    for (int ph = 0; ph < 4; ++ph) {
                        MatS c = phases[ph] * MatS::identity(4, f);
                        std::string cname = "g{";
                        for (size_t k = 0; k < sub.size(); ++k) {
                            c = c * gamma[static_cast<size_t>(sub[k] - 1)];
                            cname += (k ? "," : "") + std::to_string(sub[k]);
                        }
                        cname += "}*";
                        cname += phase_names[ph];
                        CliffordCandidate cand;
                        cand.data.spinor_dim = 4;
                        cand.data.metric = kMetrics[static_cast<size_t>(mi)];
                        cand.data.gamma = gamma;
                        cand.data.C = c;
                        cand.data.Cinv = c.inverse();
                        cand.data.spinW = spin_ws(gamma, wo == 0);
                        cand.data.conj_spin_for_anti = false;
                        cand.data.sP = -1;
                        if (!build_pairings_4c(cand.data)) continue;
                        cand.data.record["formulation"] = "four";
                        cand.data.record["metric"] = kMetricNames[mi];
                        cand.data.record["set"] = kSetNames[set];
                        cand.data.record["worder"] = wo == 0 ? "ab" : "ba";
                        cand.data.record["C"] = cname;
                        cand.id = std::string("4c;metric=") + kMetricNames[mi] + ";set=" + kSetNames[set] +
                                  ";worder=" + (wo == 0 ? "ab" : "ba") + ";C=" + cname;
                        out.push_back(std::move(cand));
                    }
            }
    return out;
}

}  // namespace colorpoincare
