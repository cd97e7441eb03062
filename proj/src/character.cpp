#include "twistcube/character.hpp"

namespace twistcube {

FormalCharacter FormalCharacter::monomial(Weight mu, Int mult) {
    FormalCharacter f;
    f.add(mu, mult);
    return f;
}

void FormalCharacter::add(const Weight& mu, Int mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms_.try_emplace(mu, mult);
    if (!inserted) {
        it->second = checked::add(it->second, mult);
        if (it->second == 0) terms_.erase(it);
    }
}

Int FormalCharacter::operator[](const Weight& mu) const {
    const auto it = terms_.find(mu);
    return it == terms_.end() ? 0 : it->second;
}

FormalCharacter& FormalCharacter::operator+=(const FormalCharacter& o) {
    for (const auto& [mu, m] : o.terms_) add(mu, m);
    return *this;
}

FormalCharacter& FormalCharacter::operator-=(const FormalCharacter& o) {
    for (const auto& [mu, m] : o.terms_) add(mu, checked::neg(m));
    return *this;
}

FormalCharacter FormalCharacter::shifted(const Weight& shift) const {
    FormalCharacter out;
    for (const auto& [mu, m] : terms_) {
        if (mu.size() != shift.size()) throw UsageError("weight rank mismatch in shift");
        Weight nu(mu.size());
        for (std::size_t t = 0; t < mu.size(); ++t) nu[t] = checked::add(mu[t], shift[t]);
        out.add(nu, m);
    }
    return out;
}

Int FormalCharacter::total() const {
    Int s = 0;
    for (const auto& [mu, m] : terms_) s = checked::add(s, m);
    return s;
}

FormalCharacter signed_character(const CubeSpec& spec, const CartanMatrix& cartan,
                                 const Weight& lambda, const Word& word,
                                 const EnumerationOptions& opts) {
    if (word.size() != spec.n()) throw UsageError("word length does not match the spec dimension");
    if (lambda.size() != cartan.rank()) throw UsageError("weight length does not match rank");
    const std::size_t r = cartan.rank();

    std::vector<Weight> roots;
    roots.reserve(word.size());
    for (std::size_t b : word) roots.push_back(cartan.root(b));

    FormalCharacter out;
    Weight mu(r);
    for_each_lattice_point(
        spec,
        [&](std::span<const Int> x, int rho) {
            mu = lambda;
            for (std::size_t k = 0; k < x.size(); ++k) {
                if (x[k] == 0) continue;
                for (std::size_t t = 0; t < r; ++t) {
                    mu[t] = checked::sub(mu[t], checked::mul(x[k], roots[k][t]));
                }
            }
            out.add(mu, rho);
            return true;
        },
        opts);
    return out;
}

FormalCharacter demazure_operator(const CartanMatrix& cartan, std::size_t i, const FormalCharacter& f) {
    const Weight alpha = cartan.root(i);
    const std::size_t r = cartan.rank();
    FormalCharacter out;
    for (const auto& [mu, mult] : f.terms()) {
        if (mu.size() != r) throw UsageError("weight rank mismatch in Demazure operator");
        const Int m = mu[i - 1]; // <mu, alpha_i^vee>
        Weight nu = mu;
        if (m >= 0) {
            // e^mu + e^{mu - alpha} + ... + e^{mu - m alpha}
            for (Int t = 0; t <= m; ++t) {
                out.add(nu, mult);
                for (std::size_t s = 0; s < r; ++s) nu[s] = checked::sub(nu[s], alpha[s]);
            }
        } else if (m <= -2) {
            // -(e^{mu + alpha} + ... + e^{mu + (-m-1) alpha})
            for (Int t = 1; t <= -m - 1; ++t) {
                for (std::size_t s = 0; s < r; ++s) nu[s] = checked::add(nu[s], alpha[s]);
                out.add(nu, checked::neg(mult));
            }
        }
    }
    return out;
}

FormalCharacter demazure_character(const CartanMatrix& cartan, const Weight& lambda, const Word& word) {
    if (lambda.size() != cartan.rank()) throw UsageError("weight length does not match rank");
    FormalCharacter f = FormalCharacter::monomial(lambda);
    for (auto it = word.rbegin(); it != word.rend(); ++it) f = demazure_operator(cartan, *it, f);
    return f;
}

CharacterComparison compare_characters(const CubeSpec& spec, const CartanMatrix& cartan,
                                       const Weight& lambda, const Word& word,
                                       const EnumerationOptions& opts) {
    CharacterComparison out;
    out.signed_side = signed_character(spec, cartan, lambda, word, opts);
    out.demazure_side = demazure_character(cartan, lambda, word);
    out.diff = out.signed_side - out.demazure_side;
    out.equal = out.diff.empty();
    return out;
}

} // namespace twistcube
