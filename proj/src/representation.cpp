#include "colorpoincare/representation.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <chrono>

#include "colorpoincare/parallel.hpp"

namespace colorpoincare {

namespace {

constexpr Degree D(int r, int g, int b) { return Degree{r, g, b}; }

Degree raw_add(const Degree& x, const Degree& y) { return {x.r + y.r, x.g + y.g, x.b + y.b}; }
Degree raw_sub(const Degree& x, const Degree& y) { return {x.r - y.r, x.g - y.g, x.b - y.b}; }
Degree raw_neg(const Degree& x) { return {-x.r, -x.g, -x.b}; }

// Path potential on block indices; position (i,j) has degree phi[i] - phi[j].
constexpr std::array<Degree, 24> kPhi = {
    D(0, 0, 0),    D(-1, -1, 0),  D(0, -1, -1),  D(-1, 0, -1),  D(-1, 0, 0),   D(0, -1, 0),
    D(0, 0, -1),   D(1, 0, 0),    D(0, 1, 0),    D(0, 0, 1),    D(-1, -1, -1), D(1, 1, 1),
    D(-1, -1, 1),  D(1, -1, -1),  D(-1, 1, -1),  D(-1, -2, 0),  D(-2, -1, 0),  D(0, -1, -2),
    D(0, -2, -1),  D(-2, 0, -1),  D(-1, 0, -2),  D(-2, -2, -1), D(-1, -2, -2), D(-2, -1, -2)};

struct TableEntry {
    int i, j;
    Degree d;
};

// Corner table: degrees of the 4x4 grid of 5x5 blocks.
constexpr std::array<TableEntry, 12> kTableA = {{
    {0, 1, D(1, 1, 0)},   {0, 2, D(0, 1, 1)},   {0, 3, D(1, 0, 1)},
    {1, 0, D(-1, -1, 0)}, {1, 2, D(-1, 0, 1)},  {1, 3, D(0, -1, 1)},
    {2, 0, D(0, -1, -1)}, {2, 1, D(1, 0, -1)},  {2, 3, D(1, -1, 0)},
    {3, 0, D(-1, 0, -1)}, {3, 1, D(0, 1, -1)},  {3, 2, D(-1, 1, 0)},
}};

// Wide table: rows 0..3 against columns 4..23 (5x4 blocks).
constexpr std::array<TableEntry, 32> kTableB = {{
    {0, 4, D(1, 0, 0)},   {0, 5, D(0, 1, 0)},   {0, 6, D(0, 0, 1)},   {0, 7, D(-1, 0, 0)},
    {0, 8, D(0, -1, 0)},  {0, 9, D(0, 0, -1)},  {0, 10, D(1, 1, 1)},  {0, 11, D(-1, -1, -1)},
    {1, 4, D(0, -1, 0)},  {1, 5, D(-1, 0, 0)},  {1, 9, D(-1, -1, -1)}, {1, 10, D(0, 0, 1)},
    {1, 12, D(0, 0, -1)}, {1, 15, D(0, 1, 0)},  {1, 16, D(1, 0, 0)},  {1, 21, D(1, 1, 1)},
    {2, 5, D(0, 0, -1)},  {2, 6, D(0, -1, 0)},  {2, 7, D(-1, -1, -1)}, {2, 10, D(1, 0, 0)},
    {2, 13, D(-1, 0, 0)}, {2, 17, D(0, 0, 1)},  {2, 18, D(0, 1, 0)},  {2, 22, D(1, 1, 1)},
    {3, 4, D(0, 0, -1)},  {3, 6, D(-1, 0, 0)},  {3, 8, D(-1, -1, -1)}, {3, 10, D(0, 1, 0)},
    {3, 14, D(0, -1, 0)}, {3, 19, D(1, 0, 0)},  {3, 20, D(0, 0, 1)},  {3, 23, D(1, 1, 1)},
}};

// Tall table: rows 4..23 against columns 0..3 (4x5 blocks).
constexpr std::array<TableEntry, 32> kTableC = {{
    {4, 0, D(-1, 0, 0)},   {4, 1, D(0, 1, 0)},   {4, 3, D(0, 0, 1)},
    {5, 0, D(0, -1, 0)},   {5, 1, D(1, 0, 0)},   {5, 2, D(0, 0, 1)},
    {6, 0, D(0, 0, -1)},   {6, 2, D(0, 1, 0)},   {6, 3, D(1, 0, 0)},
    {7, 0, D(1, 0, 0)},    {7, 2, D(1, 1, 1)},
    {8, 0, D(0, 1, 0)},    {8, 3, D(1, 1, 1)},
    {9, 0, D(0, 0, 1)},    {9, 1, D(1, 1, 1)},
    {10, 0, D(-1, -1, -1)}, {10, 1, D(0, 0, -1)}, {10, 2, D(-1, 0, 0)}, {10, 3, D(0, -1, 0)},
    {11, 0, D(1, 1, 1)},
    {12, 1, D(0, 0, 1)},
    {13, 2, D(1, 0, 0)},
    {14, 3, D(0, 1, 0)},
    {15, 1, D(0, -1, 0)},
    {16, 1, D(-1, 0, 0)},
    {17, 2, D(0, 0, -1)},
    {18, 2, D(0, -1, 0)},
    {19, 3, D(-1, 0, 0)},
    {20, 3, D(0, 0, -1)},
    {21, 1, D(-1, -1, -1)},
    {22, 2, D(-1, -1, -1)},
    {23, 3, D(-1, -1, -1)},
}};

using Pos = std::pair<int, int>;

const std::array<OddBlockPlacement, 8> kOddPlacement = {{
    // white
    {{{Pos{0, 10}, Pos{1, 21}, Pos{2, 22}, Pos{3, 23}}},
     {{Pos{11, 0}, Pos{9, 1}, Pos{7, 2}, Pos{8, 3}}}},
    // r
    {{{Pos{0, 4}, Pos{1, 16}, Pos{2, 10}, Pos{3, 19}}},
     {{Pos{7, 0}, Pos{5, 1}, Pos{13, 2}, Pos{6, 3}}}},
    // g
    {{{Pos{0, 5}, Pos{1, 15}, Pos{2, 18}, Pos{3, 10}}},
     {{Pos{8, 0}, Pos{4, 1}, Pos{6, 2}, Pos{14, 3}}}},
    // b
    {{{Pos{0, 6}, Pos{1, 10}, Pos{2, 17}, Pos{3, 20}}},
     {{Pos{9, 0}, Pos{12, 1}, Pos{5, 2}, Pos{4, 3}}}},
    // antiwhite
    {{{Pos{0, 11}, Pos{1, 9}, Pos{2, 7}, Pos{3, 8}}},
     {{Pos{10, 0}, Pos{21, 1}, Pos{22, 2}, Pos{23, 3}}}},
    // anti-r
    {{{Pos{0, 7}, Pos{1, 5}, Pos{2, 13}, Pos{3, 6}}},
     {{Pos{4, 0}, Pos{16, 1}, Pos{10, 2}, Pos{19, 3}}}},
    // anti-g
    {{{Pos{0, 8}, Pos{1, 4}, Pos{2, 6}, Pos{3, 14}}},
     {{Pos{5, 0}, Pos{15, 1}, Pos{18, 2}, Pos{10, 3}}}},
    // anti-b
    {{{Pos{0, 9}, Pos{1, 12}, Pos{2, 5}, Pos{3, 4}}},
     {{Pos{6, 0}, Pos{10, 1}, Pos{17, 2}, Pos{20, 3}}}},
}};

const std::array<Pos, 12> kBicolorPos = {{
    {0, 1},  // r+g
    {0, 2},  // g+b
    {0, 3},  // b+r
    {1, 0},  // -r-g
    {2, 0},  // -g-b
    {3, 0},  // -b-r
    {2, 3},  // r-g
    {3, 1},  // g-b
    {1, 2},  // b-r
    {3, 2},  // -r+g
    {1, 3},  // -g+b
    {2, 1},  // -b+r
}};

MatMV to_mv(const GrassmannAlgebra* alg, const MatS& m) {
    MatMV out(alg, m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) out.at(r, c) = Multivector::scalar(*alg, m.at(r, c));
    return out;
}

// Exact rank by Gauss elimination over the coefficient field.
int scalar_rank(std::vector<std::vector<Scalar>> rows) {
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    size_t lead = 0;
    for (size_t r = 0; r < rows.size() && lead < cols; ++lead) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][lead].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Scalar inv = rows[r][lead].inverse();
        for (size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][lead].is_zero()) continue;
            Scalar factor = rows[k][lead] * inv;
            for (size_t c = lead; c < cols; ++c) rows[k][c] = rows[k][c] - factor * rows[r][c];
        }
        ++rank;
        ++r;
    }
    return rank;
}

}  // namespace

const std::array<OddBlockPlacement, 8>& odd_block_placements() { return kOddPlacement; }
const std::array<Pos, 12>& bicolor_block_positions() { return kBicolorPos; }

BlockLayout::BlockLayout() {
    for (int b = 0; b < kBlocks; ++b) sizes_[static_cast<size_t>(b)] = b < 4 ? 5 : 4;
    int off = 0;
    for (int b = 0; b < kBlocks; ++b) {
        offsets_[static_cast<size_t>(b)] = off;
        off += sizes_[static_cast<size_t>(b)];
    }
    total_ = off;
    phi_ = kPhi;
    for (int b = 0; b < kBlocks; ++b) declared_[{b, b}] = D(0, 0, 0);
    for (const auto& e : kTableA) declared_[{e.i, e.j}] = e.d;
    for (const auto& e : kTableB) declared_[{e.i, e.j}] = e.d;
    for (const auto& e : kTableC) declared_[{e.i, e.j}] = e.d;
}

Degree BlockLayout::position_degree(int i, int j) const {
    return raw_sub(phi_[static_cast<size_t>(i)], phi_[static_cast<size_t>(j)]);
}

std::optional<Degree> BlockLayout::declared_degree(int i, int j) const {
    auto it = declared_.find({i, j});
    if (it == declared_.end()) return std::nullopt;
    return it->second;
}

bool MatMV::is_zero() const {
    for (const auto& m : e_)
        if (!m.is_zero()) return false;
    return true;
}

MatMV& MatMV::operator+=(const MatMV& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("block shape mismatch");
    for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

MatMV MatMV::operator*(const MatMV& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("block shape mismatch");
    MatMV out(alg_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Multivector& x = at(r, k);
            if (x.is_zero()) continue;
            for (int c = 0; c < o.cols_; ++c) {
                const Multivector& y = o.at(k, c);
                if (!y.is_zero()) out.at(r, c) += x * y;
            }
        }
    return out;
}

MatMV MatMV::scaled(const Scalar& s) const {
    MatMV out(alg_, rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) out.e_[k] = s * e_[k];
    return out;
}

MatMV MatMV::left_mul(const Multivector& m) const {
    MatMV out(alg_, rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) out.e_[k] = m * e_[k];
    return out;
}

bool MatMV::operator==(const MatMV& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

SuperMatrix SuperMatrix::identity(const GrassmannAlgebra* alg, const BlockLayout* layout) {
    SuperMatrix m(alg, layout);
    for (int b = 0; b < BlockLayout::kBlocks; ++b) {
        int n = layout->block_size(b);
        MatMV blk(alg, n, n);
        for (int k = 0; k < n; ++k) blk.at(k, k) = Multivector::one(*alg);
        m.blocks_.emplace(std::make_pair(b, b), std::move(blk));
    }
    return m;
}

MatMV& SuperMatrix::block(int i, int j) {
    auto it = blocks_.find({i, j});
    if (it == blocks_.end()) {
        it = blocks_
                 .emplace(std::make_pair(i, j),
                          MatMV(alg_, layout_->block_size(i), layout_->block_size(j)))
                 .first;
    }
    return it->second;
}

const MatMV* SuperMatrix::find_block(int i, int j) const {
    auto it = blocks_.find({i, j});
    if (it == blocks_.end() || it->second.is_zero()) return nullptr;
    return &it->second;
}

bool SuperMatrix::is_zero() const {
    for (const auto& [p, b] : blocks_)
        if (!b.is_zero()) return false;
    return true;
}

void SuperMatrix::prune() {
    for (auto it = blocks_.begin(); it != blocks_.end();)
        it = it->second.is_zero() ? blocks_.erase(it) : std::next(it);
}

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& o) {
    for (const auto& [p, b] : o.blocks_) {
        auto it = blocks_.find(p);
        if (it == blocks_.end())
            blocks_.emplace(p, b);
        else
            it->second += b;
    }
    return *this;
}

SuperMatrix& SuperMatrix::operator-=(const SuperMatrix& o) {
    Scalar neg = Scalar::from_rational(alg_->field(), -1);
    for (const auto& [p, b] : o.blocks_) {
        auto it = blocks_.find(p);
        if (it == blocks_.end())
            blocks_.emplace(p, b.scaled(neg));
        else
            it->second += b.scaled(neg);
    }
    return *this;
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
    SuperMatrix out(alg_, layout_);
    for (const auto& [pa, ba] : blocks_) {
        if (ba.is_zero()) continue;
        auto it = o.blocks_.lower_bound({pa.second, 0});
        auto end = o.blocks_.lower_bound({pa.second + 1, 0});
        for (; it != end; ++it) {
            if (it->second.is_zero()) continue;
            out.block(pa.first, it->first.second) += ba * it->second;
        }
    }
    out.prune();
    return out;
}

SuperMatrix SuperMatrix::scaled(const Scalar& s) const {
    SuperMatrix out(alg_, layout_);
    for (const auto& [p, b] : blocks_) out.blocks_.emplace(p, b.scaled(s));
    return out;
}

SuperMatrix SuperMatrix::left_mul(const Multivector& m) const {
    SuperMatrix out(alg_, layout_);
    for (const auto& [p, b] : blocks_) out.blocks_.emplace(p, b.left_mul(m));
    return out;
}

bool SuperMatrix::operator==(const SuperMatrix& o) const {
    SuperMatrix diff = *this;
    diff -= o;
    return diff.is_zero();
}

std::optional<Degree> SuperMatrix::homogeneous_degree() const {
    const GradingConfig& cfg = alg_->config();
    std::optional<Degree> d;
    for (const auto& [p, b] : blocks_) {
        Degree pos = layout_->position_degree(p.first, p.second);
        Degree pos_red = cfg.reduce(pos.r, pos.g, pos.b);
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) {
                const Multivector& e = b.at(r, c);
                if (e.is_zero()) continue;
                auto ed = e.homogeneous_degree();
                if (!ed) return std::nullopt;
                Degree total = cfg.add(*ed, pos_red);
                if (!d)
                    d = total;
                else if (*d != total)
                    return std::nullopt;
            }
    }
    if (!d) return Degree{0, 0, 0};
    return d;
}

std::string SuperMatrix::block_pattern() const {
    std::ostringstream os;
    for (int i = 0; i < BlockLayout::kBlocks; ++i) {
        for (int j = 0; j < BlockLayout::kBlocks; ++j) os << (find_block(i, j) ? '#' : '.');
        os << '\n';
    }
    return os.str();
}

Representation::Representation(const Superalgebra& alg, const GrassmannAlgebra* host)
    : alg_(&alg), own_host_(alg.config()), host_(host ? host : &own_host_), f_(alg.field()) {
    if (alg.clifford().spinor_dim != 4)
        throw std::invalid_argument("the 100x100 representation needs the four-component algebra");
    cache_.resize(static_cast<size_t>(alg.dim()));
}

MatS Representation::vector_block(int alpha, int beta) const {
    const CliffordData& cl = alg_->clifford();
    Scalar hbar_over_i =
        Scalar::from_rational(f_, -alg_->units().hbar) * Scalar::i(f_);  // hbar/i = -i hbar
    MatS m(4, 4, f_);
    for (int mu = 1; mu <= 4; ++mu)
        for (int nu = 1; nu <= 4; ++nu) {
            int val = (beta == mu ? (alpha == nu ? cl.eta(alpha) : 0) : 0) -
                      (alpha == mu ? (beta == nu ? cl.eta(beta) : 0) : 0);
            if (val != 0)
                m.at(mu - 1, nu - 1) = hbar_over_i * Scalar::from_rational(f_, val);
        }
    return m;
}

MatS Representation::translation_block(int mu) const {
    MatS m(5, 5, f_);
    Rational hl = alg_->units().hbar / alg_->units().lambda;
    m.at(mu - 1, 4) = Scalar::from_rational(f_, -hl) * Scalar::i(f_);
    return m;
}

MatS Representation::spin_block(int alpha, int beta) const {
    const CliffordData& cl = alg_->clifford();
    Scalar coeff = Scalar::from_rational(f_, -alg_->units().hbar / 2) * Scalar::i(f_);  // hbar/2i
    MatS w = cl.gamma[static_cast<size_t>(alpha - 1)] * cl.gamma[static_cast<size_t>(beta - 1)];
    return coeff * w.transpose();
}

MatS Representation::odd_block_b(int a) const {
    const CliffordData& cl = alg_->clifford();
    auto root = Scalar::sqrt_rational(f_, alg_->units().hbar / alg_->units().lambda);
    if (!root) throw std::domain_error("sqrt(hbar/lambda) does not exist in the coefficient field");
    Scalar scale = Scalar::from_rational(f_, -1) * *root * Scalar::z8_power(f_, 1);
    MatS m(5, 4, f_);
    for (int mu = 0; mu < 4; ++mu) {
        MatS gc = cl.gamma[static_cast<size_t>(mu)] * cl.C;
        Scalar up = Scalar::from_rational(f_, cl.metric[static_cast<size_t>(mu)]);
        for (int b = 0; b < 4; ++b) {
            Scalar v = gc.at(a, b);
            if (!v.is_zero()) m.at(mu, b) = scale * up * v;
        }
    }
    return m;
}

MatS Representation::odd_block_c(int a) const {
    auto root = Scalar::sqrt_rational(f_, alg_->units().hbar / alg_->units().lambda);
    if (!root) throw std::domain_error("sqrt(hbar/lambda) does not exist in the coefficient field");
    MatS m(4, 5, f_);
    m.at(a, 4) = Scalar::from_rational(f_, -1) * *root * Scalar::z8_power(f_, 1);
    return m;
}

std::map<std::pair<int, int>, MatS> Representation::numeric_gamma(int x) const {
    const BasisElement& e = alg_->at(x);
    std::map<std::pair<int, int>, MatS> out;
    switch (e.kind) {
        case BasisKind::M: {
            MatS vec = vector_block(e.alpha, e.beta);
            MatS corner(5, 5, f_);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) corner.at(r, c) = vec.at(r, c);
            for (int k = 0; k < 4; ++k) out.emplace(std::make_pair(k, k), corner);
            MatS spin = spin_block(e.alpha, e.beta);
            for (int k = 4; k < BlockLayout::kBlocks; ++k) out.emplace(std::make_pair(k, k), spin);
            break;
        }
        case BasisKind::P: {
            MatS t = translation_block(e.mu);
            for (int k = 0; k < 4; ++k) out.emplace(std::make_pair(k, k), t);
            break;
        }
        case BasisKind::Q: {
            const Degree& d = e.deg;
            bool white = (d == D(1, 1, 1)) || (d == D(-1, -1, -1));
            Rational half_kappa = alg_->kappa().of(d) / 2;
            auto root = Scalar::sqrt_rational(f_, half_kappa);
            if (!root)
                throw std::domain_error(
                    "sqrt(kappa_d / 2) does not exist in the coefficient field; pick kappa values "
                    "with rational square roots times a field square");
            Scalar s = white ? Scalar::from_rational(f_, -1) * *root : *root;
            const OddBlockPlacement& pl = kOddPlacement[static_cast<size_t>(e.deg_idx)];
            MatS bb = s * odd_block_b(e.comp);
            MatS cc = s * odd_block_c(e.comp);
            for (const auto& p : pl.b) out.emplace(p, bb);
            for (const auto& p : pl.c) out.emplace(p, cc);
            break;
        }
        case BasisKind::R: {
            // Global sign -1 on every bicolor matrix; see the class comment.
            MatS t = -translation_block(e.comp + 1);
            out.emplace(kBicolorPos[static_cast<size_t>(e.deg_idx)], t);
            break;
        }
    }
    return out;
}

SuperMatrix Representation::build_gamma(int x) const {
    SuperMatrix m(host_, &layout_);
    for (const auto& [p, blk] : numeric_gamma(x)) m.block(p.first, p.second) += to_mv(host_, blk);
    m.prune();
    return m;
}

const SuperMatrix& Representation::gamma_of(int x) const {
    auto& slot = cache_[static_cast<size_t>(x)];
    if (!slot) slot = build_gamma(x);
    return *slot;
}

SuperMatrix Representation::gamma_of_comb(const LinComb& c) const {
    SuperMatrix out = zero();
    for (const auto& [idx, coeff] : c) out += gamma_of(idx).scaled(coeff);
    out.prune();
    return out;
}

SuperMatrix Representation::element_matrix(const ElementCoordinates& coords) const {
    Scalar i_over_hbar =
        Scalar::i(f_) * Scalar::from_rational(f_, Rational(1) / alg_->units().hbar);
    auto root = Scalar::sqrt_rational(f_, Rational(1) / alg_->units().hbar);
    if (!root) throw std::domain_error("sqrt(1/hbar) does not exist in the coefficient field");
    Scalar odd_scale = *root * Scalar::z8_power(f_, 7);  // e^{-i pi/4}
    SuperMatrix out = zero();
    for (const auto& [ab, w] : coords.omega)
        out += gamma_of(alg_->m_index(ab.first, ab.second)).scaled(i_over_hbar * w);
    for (const auto& [mu, tv] : coords.t) out += gamma_of(alg_->p_index(mu)).scaled(i_over_hbar * tv);
    for (const auto& [dc, uv] : coords.u)
        out += gamma_of(alg_->r_index(dc.first, dc.second)).scaled(i_over_hbar * uv);
    for (const auto& [dc, pv] : coords.psi)
        out += gamma_of(alg_->q_index(dc.first, dc.second)).scaled(odd_scale * pv);
    out.prune();
    return out;
}

SuiteReport Representation::degree_consistency_report() const {
    SuiteReport rep;
    rep.name = "degree-consistency";
    auto t0 = std::chrono::steady_clock::now();

    // Declared table entries match the potential and are antisymmetric.
    for (const auto& [p, d] : layout_.declared()) {
        ++rep.cases;
        if (!(layout_.position_degree(p.first, p.second) == d))
            rep.add_failure("table(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")",
                             "declared " + d.str() + " != potential difference " +
                                 layout_.position_degree(p.first, p.second).str());
        auto mirror = layout_.declared_degree(p.second, p.first);
        ++rep.cases;
        if (!mirror || !(*mirror == raw_neg(d)))
            rep.add_failure("table(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")",
                             "transposed position missing or not the negated degree");
    }

    // Re-derive the potential from the table graph alone.
    std::array<std::optional<Degree>, BlockLayout::kBlocks> pot;
    pot[0] = D(0, 0, 0);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [p, d] : layout_.declared()) {
            if (pot[static_cast<size_t>(p.first)] && !pot[static_cast<size_t>(p.second)]) {
                pot[static_cast<size_t>(p.second)] = raw_sub(*pot[static_cast<size_t>(p.first)], d);
                grew = true;
            }
        }
    }
    for (int b = 0; b < BlockLayout::kBlocks; ++b) {
        ++rep.cases;
        if (!pot[static_cast<size_t>(b)])
            rep.add_failure("potential", "block " + std::to_string(b) + " unreachable from 0");
        else if (!(*pot[static_cast<size_t>(b)] == layout_.potential(b)))
            rep.add_failure("potential", "block " + std::to_string(b) + " derived " +
                                              pot[static_cast<size_t>(b)]->str() + " != stored " +
                                              layout_.potential(b).str());
    }
    for (const auto& [p, d] : layout_.declared()) {
        ++rep.cases;
        const auto& pi = pot[static_cast<size_t>(p.first)];
        const auto& pj = pot[static_cast<size_t>(p.second)];
        if (pi && pj && !(raw_sub(*pi, *pj) == d))
            rep.add_failure("path-consistency", "cycle through (" + std::to_string(p.first) + "," +
                                                     std::to_string(p.second) + ") inconsistent");
    }

    // Each generator matrix: allowed positions, right shapes, declared degree
    // equal to the generator degree, and matrix homogeneity.
    const GradingConfig& cfg = alg_->config();
    std::map<BasisKind, size_t> expected_blocks{{BasisKind::M, 24},
                                                {BasisKind::P, 4},
                                                {BasisKind::Q, 8},
                                                {BasisKind::R, 1}};
    for (int x = 0; x < alg_->dim(); ++x) {
        const BasisElement& e = alg_->at(x);
        auto numeric = numeric_gamma(x);
        ++rep.cases;
        if (numeric.size() != expected_blocks[e.kind])
            rep.add_failure(e.name, "unexpected block count " + std::to_string(numeric.size()));
        for (const auto& [p, blk] : numeric) {
            ++rep.cases;
            auto decl = layout_.declared_degree(p.first, p.second);
            Degree want = e.kind == BasisKind::M || e.kind == BasisKind::P ? D(0, 0, 0) : e.deg;
            if (!layout_.position_allowed(p.first, p.second) || !decl || !(*decl == want) ||
                blk.rows() != layout_.block_size(p.first) || blk.cols() != layout_.block_size(p.second))
                rep.add_failure(e.name, "block (" + std::to_string(p.first) + "," +
                                            std::to_string(p.second) + ") misplaced or misshaped");
        }
        ++rep.cases;
        auto hd = gamma_of(x).homogeneous_degree();
        Degree want = cfg.reduce(e.deg.r, e.deg.g, e.deg.b);
        if (!hd || !(*hd == want))
            rep.add_failure(e.name, "matrix not homogeneous of the generator degree");
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport Representation::homomorphism_report(bool parallel) const {
    SuiteReport rep;
    rep.name = "representation-homomorphism";
    auto t0 = std::chrono::steady_clock::now();
    int n = alg_->dim();

    std::vector<std::map<std::pair<int, int>, MatS>> num;
    num.reserve(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) num.push_back(numeric_gamma(x));

    using BMap = std::map<std::pair<int, int>, MatS>;
    auto mul = [](const BMap& a, const BMap& b) {
        BMap out;
        for (const auto& [pa, ba] : a) {
            auto it = b.lower_bound({pa.second, 0});
            auto end = b.lower_bound({pa.second + 1, 0});
            for (; it != end; ++it) {
                auto key = std::make_pair(pa.first, it->first.second);
                MatS prod = ba * it->second;
                auto slot = out.find(key);
                if (slot == out.end())
                    out.emplace(key, std::move(prod));
                else
                    slot->second += prod;
            }
        }
        return out;
    };
    auto axpy = [](BMap& acc, const Scalar& s, const BMap& b) {
        for (const auto& [p, m] : b) {
            MatS scaled = s * m;
            auto slot = acc.find(p);
            if (slot == acc.end())
                acc.emplace(p, std::move(scaled));
            else
                slot->second += scaled;
        }
    };

    std::mutex mtx;
    std::vector<std::tuple<long long, std::string, std::string>> fails;
    long long total = static_cast<long long>(n) * n;
    parallel_for(total, parallel, [&](long long idx) {
        int x = static_cast<int>(idx / n), y = static_cast<int>(idx % n);
        BMap lhs = mul(num[static_cast<size_t>(x)], num[static_cast<size_t>(y)]);
        Scalar meps = Scalar::from_rational(f_, -1) * alg_->epsilon_basis(x, y);
        axpy(lhs, meps, mul(num[static_cast<size_t>(y)], num[static_cast<size_t>(x)]));
        for (const auto& [idx2, coeff] : alg_->bracket(x, y))
            axpy(lhs, Scalar::from_rational(f_, -1) * coeff, num[static_cast<size_t>(idx2)]);
        std::vector<std::string> bad;
        for (const auto& [p, m] : lhs)
            if (!m.is_zero())
                bad.push_back("(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")");
        if (!bad.empty()) {
            std::string where;
            for (const auto& s : bad) where += (where.empty() ? "" : " ") + s;
            std::lock_guard<std::mutex> lock(mtx);
            fails.emplace_back(idx, "(" + alg_->at(x).name + ", " + alg_->at(y).name + ")",
                               "residual blocks " + where);
        }
    });
    std::sort(fails.begin(), fails.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    rep.cases = total;
    for (auto& [k, ctx, det] : fails) rep.add_failure(std::move(ctx), std::move(det));
    rep.info["threads"] = std::to_string(parallel ? effective_threads() : 1);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SuiteReport Representation::poincare_block_report() const {
    SuiteReport rep;
    rep.name = "poincare-blocks";
    auto t0 = std::chrono::steady_clock::now();

    // The ten corner matrices (six rotations, four translations) span a
    // ten-dimensional space: the corner representation is faithful.
    std::vector<std::vector<Scalar>> rows;
    auto flatten = [&](const MatS& m) {
        std::vector<Scalar> row;
        row.reserve(25);
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    };
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) {
            MatS vec = vector_block(a, b), corner(5, 5, f_);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) corner.at(r, c) = vec.at(r, c);
            flatten(corner);
        }
    for (int mu = 1; mu <= 4; ++mu) flatten(translation_block(mu));
    ++rep.cases;
    int rank = scalar_rank(rows);
    if (rank != 10)
        rep.add_failure("faithful-corner", "rank " + std::to_string(rank) + " != 10");
    rep.info["corner_rank"] = std::to_string(rank);

    // Spin blocks and vector blocks each close under the even bracket table.
    struct Named {
        int a, b;
        MatS m;
    };
    std::vector<Named> spins, vecs;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) {
            spins.push_back({a, b, spin_block(a, b)});
            vecs.push_back({a, b, vector_block(a, b)});
        }
    auto check_closure = [&](const std::vector<Named>& set, const std::string& label) {
        for (const auto& x : set)
            for (const auto& y : set) {
                MatS lhs = x.m * y.m - y.m * x.m;
                MatS want(lhs.rows(), lhs.cols(), f_);
                for (const auto& [idx, coeff] :
                     alg_->bracket(alg_->m_index(x.a, x.b), alg_->m_index(y.a, y.b))) {
                    const BasisElement& t = alg_->at(idx);
                    const MatS& tm = set[static_cast<size_t>(
                                             CliffordData::pair_index(t.alpha, t.beta))].m;
                    want += coeff * tm;
                }
                ++rep.cases;
                if (!(lhs == want))
                    rep.add_failure(label, "[" + std::to_string(x.a) + std::to_string(x.b) + "," +
                                               std::to_string(y.a) + std::to_string(y.b) +
                                               "] does not close");
            }
    };
    check_closure(spins, "spin-closure");
    check_closure(vecs, "vector-closure");

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace colorpoincare
