#include "twistcube/toric.hpp"

#include <algorithm>

#include "twistcube/kernels.hpp"

namespace twistcube {

SignVector::SignVector(std::size_t n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n > 64) throw UsageError("sign vector longer than 64 slots");
    if (n < 64 && (bits >> n) != 0) throw UsageError("sign vector bits exceed its length");
}

SignVector SignVector::parse(std::string_view text) {
    std::size_t n = 0;
    std::uint64_t bits = 0;
    for (char ch : text) {
        if (ch == '+' || ch == '-') {
            if (n == 64) throw UsageError("sign vector longer than 64 slots");
            if (ch == '-') bits |= std::uint64_t{1} << n;
            ++n;
        } else if (ch != '(' && ch != ')' && ch != ',' && ch != ' ') {
            throw UsageError("unexpected character in sign vector: '" + std::string(1, ch) + "'");
        }
    }
    return {n, bits};
}

std::string SignVector::str() const {
    std::string s;
    for (std::size_t j = 1; j <= n_; ++j) s += minus(j) ? '-' : '+';
    return s;
}

std::string SignVector::tuple_str() const {
    std::string s = "(";
    for (std::size_t j = 1; j <= n_; ++j) {
        if (j > 1) s += ',';
        s += minus(j) ? '-' : '+';
    }
    return s + ")";
}

bool SignVector::lex_before(const SignVector& other) const noexcept {
    for (std::size_t j = 1; j <= std::min(n_, other.n_); ++j) {
        if (minus(j) != other.minus(j)) return minus(j);
    }
    return n_ < other.n_;
}

RayVector ray_minus(const CubeSpec& spec, std::size_t j) {
    if (j < 1 || j > spec.n()) throw UsageError("ray_minus: slot " + std::to_string(j) + " out of range");
    RayVector e(spec.n(), 0);
    e[j - 1] = -1;
    const auto row = spec.row(j);
    for (std::size_t k = j + 1; k <= spec.n(); ++k) e[k - 1] = checked::neg(row[k - 1]);
    return e;
}

RayVector ray(const CubeSpec& spec, std::size_t j, bool minus) {
    if (minus) return ray_minus(spec, j);
    if (j < 1 || j > spec.n()) throw UsageError("ray: slot " + std::to_string(j) + " out of range");
    RayVector e(spec.n(), 0);
    e[j - 1] = 1;
    return e;
}

std::uint64_t cone_count(const CubeSpec& spec, const ToricOptions& opts) {
    if (spec.n() > opts.cone_cap || spec.n() >= 63) {
        throw CapacityError("fan has 2^" + std::to_string(spec.n()) + " maximal cones", opts.cone_cap);
    }
    return std::uint64_t{1} << spec.n();
}

std::vector<SignVector> maximal_cones(const CubeSpec& spec, const ToricOptions& opts) {
    const std::uint64_t total = cone_count(spec, opts);
    std::vector<SignVector> out;
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) out.emplace_back(spec.n(), mask);
    return out;
}

CartierPoint cartier_point(const CubeSpec& spec, const SignVector& sigma) {
    if (sigma.n() != spec.n()) {
        throw UsageError("sign vector has length " + std::to_string(sigma.n()) + ", expected " +
                         std::to_string(spec.n()));
    }
    LatticePoint m(spec.n(), 0);
    for (std::size_t j = spec.n(); j >= 1; --j) {
        if (sigma.minus(j)) m[j - 1] = eval_A(spec, j, std::span<const Int>(m).subspan(j));
    }
    return {sigma, std::move(m)};
}

void for_each_cartier_point(const CubeSpec& spec,
                            const std::function<void(std::uint64_t, std::span<const Int>)>& visit,
                            const ToricOptions& opts) {
    const std::uint64_t total = cone_count(spec, opts);
    const std::size_t n = spec.n();
    std::vector<Int> block(n * kernels::block_size);
    LatticePoint m(n);
    for (std::uint64_t first = 0; first < total; first += kernels::block_size) {
        const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(kernels::block_size, total - first));
        kernels::cartier_block(spec, first, count, std::span<Int>(block.data(), n * count));
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < n; ++j) m[j] = block[j * count + i];
            visit(first + i, m);
        }
    }
}

std::vector<CartierPoint> all_cartier_points(const CubeSpec& spec, const ToricOptions& opts) {
    std::vector<CartierPoint> out;
    out.reserve(cone_count(spec, opts));
    for_each_cartier_point(
        spec,
        [&](std::uint64_t mask, std::span<const Int> m) {
            out.push_back({SignVector(spec.n(), mask), LatticePoint(m.begin(), m.end())});
        },
        opts);
    return out;
}

bool pd_contains(const CubeSpec& spec, std::span<const Rational> point) {
    if (point.size() != spec.n()) throw UsageError("pd_contains: point has wrong length");
    for (std::size_t j = 1; j <= spec.n(); ++j) {
        const Rational& x = point[j - 1];
        if (x.sign() < 0) return false;
        if (x > eval_A(spec, j, point.subspan(j))) return false;
    }
    return true;
}

std::optional<std::size_t> pd_violation(const CubeSpec& spec, std::span<const Int> point) {
    if (point.size() != spec.n()) throw UsageError("pd_contains: point has wrong length");
    for (std::size_t j = 1; j <= spec.n(); ++j) {
        if (point[j - 1] < 0) return 2 * (j - 1);
        if (point[j - 1] > eval_A(spec, j, point.subspan(j))) return 2 * (j - 1) + 1;
    }
    return std::nullopt;
}

bool pd_contains(const CubeSpec& spec, std::span<const Int> point) {
    return !pd_violation(spec, point).has_value();
}

BasepointFreeResult is_basepoint_free(const CubeSpec& spec, const ToricOptions& opts) {
    const std::uint64_t total = cone_count(spec, opts);
    const std::size_t n = spec.n();
    std::vector<Int> block(n * kernels::block_size);
    std::vector<std::int32_t> codes(kernels::block_size);

    BasepointFreeResult result;
    std::optional<SignVector> best;
    std::size_t best_index = 0;
    std::uint64_t best_first = 0;
    std::int32_t best_code = -1;

    for (std::uint64_t first = 0; first < total; first += kernels::block_size) {
        const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(kernels::block_size, total - first));
        std::span<Int> m(block.data(), n * count);
        kernels::cartier_block(spec, first, count, m);
        kernels::pd_violation_block(spec, count, m, std::span<std::int32_t>(codes.data(), count));
        for (std::size_t i = 0; i < count; ++i) {
            if (codes[i] < 0) continue;
            SignVector sigma(n, first + i);
            if (!best || sigma.lex_before(*best)) {
                best = sigma;
                best_index = i;
                best_first = first;
                best_code = codes[i];
            }
        }
        if (best && best_first == first) {
            // materialize now; the block buffer is reused
            LatticePoint w(n);
            for (std::size_t j = 0; j < n; ++j) w[j] = block[j * count + best_index];
            result.witness = CartierPoint{*best, std::move(w)};
            result.violated_inequality = static_cast<std::size_t>(best_code);
        }
    }
    result.holds = !best.has_value();
    return result;
}

} // namespace twistcube
