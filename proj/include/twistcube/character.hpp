#pragma once

#include <map>
#include <vector>

#include "twistcube/cube.hpp"
#include "twistcube/rep.hpp"

namespace twistcube {

/// Finitely supported Z-valued function on the weight lattice, keyed by
/// fundamental-weight coordinates. Zero multiplicities are never stored.
class FormalCharacter {
public:
    using Terms = std::map<Weight, Int>;

    FormalCharacter() = default;
    static FormalCharacter monomial(Weight mu, Int mult = 1);

    void add(const Weight& mu, Int mult);
    Int operator[](const Weight& mu) const;

    FormalCharacter& operator+=(const FormalCharacter& o);
    FormalCharacter& operator-=(const FormalCharacter& o);
    friend FormalCharacter operator+(FormalCharacter a, const FormalCharacter& b) { return a += b; }
    friend FormalCharacter operator-(FormalCharacter a, const FormalCharacter& b) { return a -= b; }

    /// Multiplication by e^{shift}.
    FormalCharacter shifted(const Weight& shift) const;

    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    /// Sum of multiplicities (the character evaluated at the identity).
    Int total() const;

    friend bool operator==(const FormalCharacter&, const FormalCharacter&) = default;

private:
    Terms terms_;
};

/// Sum over lattice points of C of rho(x) e^{mu(x)} with
/// mu(x) = lambda - sum_k x_k alpha_{beta_k}. `spec` must come from
/// derive_constants(cartan, lambda, word).
FormalCharacter signed_character(const CubeSpec& spec, const CartanMatrix& cartan,
                                 const Weight& lambda, const Word& word,
                                 const EnumerationOptions& opts = {});

/// Isobaric Demazure operator D_i, applied monomial by monomial through the
/// alpha_i-string of length <mu, alpha_i^vee> + 1.
FormalCharacter demazure_operator(const CartanMatrix& cartan, std::size_t i, const FormalCharacter& f);

/// D_{beta_1}(D_{beta_2}(... D_{beta_n}(e^lambda))).
FormalCharacter demazure_character(const CartanMatrix& cartan, const Weight& lambda, const Word& word);

struct CharacterComparison {
    bool equal = false;
    FormalCharacter signed_side;
    FormalCharacter demazure_side;
    FormalCharacter diff; // signed - demazure
};

CharacterComparison compare_characters(const CubeSpec& spec, const CartanMatrix& cartan,
                                       const Weight& lambda, const Word& word,
                                       const EnumerationOptions& opts = {});

} // namespace twistcube
