#include "twistcube/rep.hpp"

#include <charconv>

namespace twistcube {

namespace {

// Cartan matrix from the Gram matrix of the simple roots:
// a[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
std::vector<std::vector<Int>> from_gram(const std::vector<std::vector<Int>>& g) {
    const std::size_t r = g.size();
    std::vector<std::vector<Int>> a(r, std::vector<Int>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = 2 * g[i][j] / g[i][i];
    }
    return a;
}

struct Gram {
    explicit Gram(std::size_t r) : g(r, std::vector<Int>(r, 0)) {}
    // 1-based
    void len2(std::size_t i, Int v) { g[i - 1][i - 1] = v; }
    void edge(std::size_t i, std::size_t j, Int v) { g[i - 1][j - 1] = g[j - 1][i - 1] = v; }
    std::vector<std::vector<Int>> g;
};

std::vector<std::vector<Int>> build(char family, std::size_t r) {
    Gram gm(r);
    switch (family) {
    case 'A':
        for (std::size_t i = 1; i <= r; ++i) gm.len2(i, 2);
        for (std::size_t i = 1; i < r; ++i) gm.edge(i, i + 1, -1);
        break;
    case 'B': // alpha_r short
        for (std::size_t i = 1; i < r; ++i) gm.len2(i, 4);
        gm.len2(r, 2);
        for (std::size_t i = 1; i < r; ++i) gm.edge(i, i + 1, -2);
        break;
    case 'C': // alpha_r long
        for (std::size_t i = 1; i < r; ++i) gm.len2(i, 2);
        gm.len2(r, 4);
        for (std::size_t i = 1; i + 1 < r; ++i) gm.edge(i, i + 1, -1);
        gm.edge(r - 1, r, -2);
        break;
    case 'D':
        for (std::size_t i = 1; i <= r; ++i) gm.len2(i, 2);
        for (std::size_t i = 1; i + 1 < r; ++i) gm.edge(i, i + 1, -1);
        gm.edge(r - 2, r, -1);
        break;
    case 'E':
        for (std::size_t i = 1; i <= r; ++i) gm.len2(i, 2);
        gm.edge(1, 3, -1);
        gm.edge(2, 4, -1);
        for (std::size_t i = 3; i < r; ++i) gm.edge(i, i + 1, -1);
        break;
    case 'F': // alpha_1, alpha_2 long
        gm.len2(1, 4);
        gm.len2(2, 4);
        gm.len2(3, 2);
        gm.len2(4, 2);
        gm.edge(1, 2, -2);
        gm.edge(2, 3, -2);
        gm.edge(3, 4, -1);
        break;
    case 'G': // alpha_1 short
        gm.len2(1, 2);
        gm.len2(2, 6);
        gm.edge(1, 2, -3);
        break;
    default:
        throw UsageError(std::string("unknown Cartan family '") + family + "'");
    }
    return from_gram(gm.g);
}

} // namespace

CartanMatrix::CartanMatrix(std::vector<std::vector<Int>> rows) : rank_(rows.size()) {
    a_.reserve(rank_ * rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        if (rows[i].size() != rank_) throw UsageError("Cartan matrix is not square");
        a_.insert(a_.end(), rows[i].begin(), rows[i].end());
    }
    for (std::size_t i = 1; i <= rank_; ++i) {
        if ((*this)(i, i) != 2) {
            throw UsageError("Cartan matrix diagonal entry a[" + std::to_string(i) + "][" +
                             std::to_string(i) + "] must be 2");
        }
        for (std::size_t j = 1; j <= rank_; ++j) {
            if (i == j) continue;
            if ((*this)(i, j) > 0) {
                throw UsageError("Cartan matrix off-diagonal entry a[" + std::to_string(i) + "][" +
                                 std::to_string(j) + "] must be <= 0");
            }
            if (((*this)(i, j) == 0) != ((*this)(j, i) == 0)) {
                throw UsageError("Cartan matrix entries a[" + std::to_string(i) + "][" +
                                 std::to_string(j) + "] and a[" + std::to_string(j) + "][" +
                                 std::to_string(i) + "] must vanish together");
            }
        }
    }
}

CartanMatrix CartanMatrix::of_type(std::string_view label) {
    if (label.size() < 2) throw UsageError("bad Cartan type label '" + std::string(label) + "'");
    const char family = label[0];
    std::size_t r = 0;
    const auto [ptr, ec] = std::from_chars(label.data() + 1, label.data() + label.size(), r);
    if (ec != std::errc() || ptr != label.data() + label.size() || r > 9) {
        throw UsageError("bad Cartan type label '" + std::string(label) + "'");
    }
    const bool ok = (family == 'A' && r >= 1) || (family == 'B' && r >= 2) ||
                    (family == 'C' && r >= 2) || (family == 'D' && r >= 3) ||
                    (family == 'E' && r >= 6 && r <= 8) || (family == 'F' && r == 4) ||
                    (family == 'G' && r == 2);
    if (!ok) throw UsageError("unsupported Cartan type '" + std::string(label) + "'");
    CartanMatrix m(build(family, r));
    m.label_ = std::string(label);
    return m;
}

Int CartanMatrix::operator()(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > rank_ || j > rank_) {
        throw UsageError("Cartan index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") outside rank " + std::to_string(rank_));
    }
    return a_[(i - 1) * rank_ + (j - 1)];
}

std::vector<Int> CartanMatrix::root(std::size_t j) const {
    std::vector<Int> col(rank_);
    for (std::size_t i = 1; i <= rank_; ++i) col[i - 1] = (*this)(i, j);
    return col;
}

std::vector<std::vector<Int>> CartanMatrix::rows() const {
    std::vector<std::vector<Int>> out(rank_);
    for (std::size_t i = 0; i < rank_; ++i) out[i].assign(a_.begin() + i * rank_, a_.begin() + (i + 1) * rank_);
    return out;
}

CubeSpec derive_constants(const CartanMatrix& cartan, const Weight& lambda, const Word& word) {
    if (lambda.size() != cartan.rank()) {
        throw UsageError("weight has " + std::to_string(lambda.size()) + " coordinates, rank is " +
                         std::to_string(cartan.rank()));
    }
    for (std::size_t b : word) {
        if (b < 1 || b > cartan.rank()) {
            throw UsageError("word letter " + std::to_string(b) + " outside 1.." + std::to_string(cartan.rank()));
        }
    }
    const std::size_t n = word.size();
    std::vector<Int> ell(n);
    for (std::size_t j = 0; j < n; ++j) ell[j] = lambda[word[j] - 1]; // <lambda, beta_j^vee>
    CubeSpec spec(n, std::move(ell));
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) spec.set_c(i, j, cartan(word[i - 1], word[j - 1]));
    }
    return spec;
}

NecessaryConditions necessary_conditions(const CartanMatrix& cartan, const Weight& lambda,
                                         const Word& word) {
    if (lambda.size() != cartan.rank()) throw UsageError("weight length does not match rank");
    NecessaryConditions out;
    out.occurrences.assign(cartan.rank() + 1, 0);
    for (std::size_t b : word) {
        if (b < 1 || b > cartan.rank()) throw UsageError("word letter out of range");
        ++out.occurrences[b];
    }
    for (std::size_t i = 1; i <= cartan.rank(); ++i) {
        if (out.occurrences[i] >= 1 && lambda[i - 1] < 0) out.cond1_violators.push_back(i);
        if (out.occurrences[i] >= 2 && lambda[i - 1] != 0) out.cond2_violators.push_back(i);
    }
    out.cond1 = out.cond1_violators.empty();
    out.cond2 = out.cond2_violators.empty();
    return out;
}

} // namespace twistcube
