#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twistcube/cube.hpp"

namespace twistcube {

/// Generalized Cartan matrix with a[i][j] = <alpha_j, alpha_i^vee>.
///
/// Rows are coroots, columns are roots. This is the convention that makes
/// c_ij = <beta_j, beta_i^vee> a plain lookup a[beta_i][beta_j]; transposing
/// it silently swaps long and short roots in the non-simply-laced types.
/// Indices are 1-based.
class CartanMatrix {
public:
    CartanMatrix() = default;
    /// Validates a[i][i] = 2, a[i][j] <= 0 off the diagonal and
    /// a[i][j] = 0 iff a[j][i] = 0.
    explicit CartanMatrix(std::vector<std::vector<Int>> rows);

    /// "A1".."A9", "B2".."B9", "C2".."C9", "D3".."D9", "G2", "F4", "E6",
    /// "E7", "E8" (Bourbaki numbering).
    static CartanMatrix of_type(std::string_view label);

    std::size_t rank() const noexcept { return rank_; }
    Int operator()(std::size_t i, std::size_t j) const;

    /// alpha_j in fundamental-weight coordinates: column j.
    std::vector<Int> root(std::size_t j) const;

    const std::string& label() const noexcept { return label_; }
    std::vector<std::vector<Int>> rows() const;

    friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;

private:
    std::size_t rank_ = 0;
    std::vector<Int> a_;
    std::string label_;
};

/// Coordinates in the fundamental-weight basis: lambda = sum lambda_i w_i.
using Weight = std::vector<Int>;

/// beta_1 .. beta_n as simple-root indices (1-based). Need not be reduced.
using Word = std::vector<std::size_t>;

/// c_ij = a[beta_i][beta_j] for i < j, l_j = lambda_{beta_j}.
CubeSpec derive_constants(const CartanMatrix& cartan, const Weight& lambda, const Word& word);

struct NecessaryConditions {
    bool cond1 = true; // lambda_i >= 0 for every i in the word
    bool cond2 = true; // lambda_i = 0 for every i appearing twice or more
    std::vector<std::size_t> cond1_violators;
    std::vector<std::size_t> cond2_violators;
    std::vector<std::size_t> occurrences; // per simple root, 1-based (index 0 unused)
};

NecessaryConditions necessary_conditions(const CartanMatrix& cartan, const Weight& lambda,
                                         const Word& word);

} // namespace twistcube
