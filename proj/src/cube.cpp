#include "twistcube/cube.hpp"

#include <algorithm>
#include <string>

namespace twistcube {

namespace {

void require_slot(const CubeSpec& spec, std::size_t j, const char* what) {
    if (j < 1 || j > spec.n()) {
        throw UsageError(std::string(what) + ": slot " + std::to_string(j) + " outside 1.." +
                         std::to_string(spec.n()));
    }
}

void require_length(const CubeSpec& spec, std::size_t len) {
    if (len != spec.n()) {
        throw UsageError("point has length " + std::to_string(len) + ", expected " +
                         std::to_string(spec.n()));
    }
}

template <typename T>
bool in_branch(const T& a, const T& x) {
    return (a < x && x < T(0)) || (T(0) <= x && x <= a);
}

} // namespace

CubeSpec::CubeSpec(std::size_t n, std::vector<Int> ell, std::span<const CEntry> c)
    : n_(n), ell_(std::move(ell)), c_(n * n, 0) {
    if (ell_.size() != n) {
        throw UsageError("ell has length " + std::to_string(ell_.size()) + ", expected " +
                         std::to_string(n));
    }
    for (const auto& e : c) set_c(e.i, e.j, e.value);
}

Int CubeSpec::c(std::size_t i, std::size_t j) const {
    if (i < 1 || j > n_ || i >= j) {
        throw UsageError("c_" + std::to_string(i) + "," + std::to_string(j) +
                         " is not a strictly upper-triangular entry");
    }
    return c_[(i - 1) * n_ + (j - 1)];
}

void CubeSpec::set_c(std::size_t i, std::size_t j, Int value) {
    if (i < 1 || j > n_ || i >= j) {
        throw UsageError("c_" + std::to_string(i) + "," + std::to_string(j) +
                         " is not a strictly upper-triangular entry");
    }
    c_[(i - 1) * n_ + (j - 1)] = value;
}

Int CubeSpec::ell(std::size_t j) const {
    if (j < 1 || j > n_) throw UsageError("ell index " + std::to_string(j) + " out of range");
    return ell_[j - 1];
}

std::vector<CEntry> CubeSpec::entries() const {
    std::vector<CEntry> out;
    for (std::size_t i = 1; i <= n_; ++i) {
        for (std::size_t j = i + 1; j <= n_; ++j) {
            if (Int v = c_[(i - 1) * n_ + (j - 1)]; v != 0) out.push_back({i, j, v});
        }
    }
    return out;
}

Int eval_A(const CubeSpec& spec, std::size_t j, std::span<const Int> tail) {
    require_slot(spec, j, "eval_A");
    if (tail.size() != spec.n() - j) {
        throw UsageError("eval_A: tail has length " + std::to_string(tail.size()) + ", expected " +
                         std::to_string(spec.n() - j));
    }
    const auto row = spec.row(j);
    Int acc = spec.ell()[j - 1];
    for (std::size_t t = 0; t < tail.size(); ++t) {
        const Int cjk = row[j + t];
        if (cjk != 0) acc = checked::sub(acc, checked::mul(cjk, tail[t]));
    }
    return acc;
}

Rational eval_A(const CubeSpec& spec, std::size_t j, std::span<const Rational> tail) {
    require_slot(spec, j, "eval_A");
    if (tail.size() != spec.n() - j) {
        throw UsageError("eval_A: tail has length " + std::to_string(tail.size()) + ", expected " +
                         std::to_string(spec.n() - j));
    }
    const auto row = spec.row(j);
    Rational acc = spec.ell()[j - 1];
    for (std::size_t t = 0; t < tail.size(); ++t) {
        const Int cjk = row[j + t];
        if (cjk != 0) acc -= Rational(cjk) * tail[t];
    }
    return acc;
}

bool satisfies_S(const CubeSpec& spec, std::size_t k, std::span<const Int> point) {
    require_length(spec, point.size());
    require_slot(spec, k, "satisfies_S");
    return in_branch(eval_A(spec, k, point.subspan(k)), point[k - 1]);
}

bool satisfies_S(const CubeSpec& spec, std::size_t k, std::span<const Rational> point) {
    require_length(spec, point.size());
    require_slot(spec, k, "satisfies_S");
    return in_branch(eval_A(spec, k, point.subspan(k)), point[k - 1]);
}

bool member(const CubeSpec& spec, std::span<const Int> point) {
    require_length(spec, point.size());
    for (std::size_t k = spec.n(); k >= 1; --k) {
        if (!in_branch(eval_A(spec, k, point.subspan(k)), point[k - 1])) return false;
    }
    return true;
}

bool member(const CubeSpec& spec, std::span<const Rational> point) {
    require_length(spec, point.size());
    for (std::size_t k = spec.n(); k >= 1; --k) {
        if (!in_branch(eval_A(spec, k, point.subspan(k)), point[k - 1])) return false;
    }
    return true;
}

int density(const CubeSpec& spec, std::span<const Int> point) {
    if (!member(spec, point)) return 0;
    int s = (spec.n() % 2 == 0) ? 1 : -1;
    for (Int x : point) s *= sgn(x);
    return s;
}

std::uint64_t for_each_lattice_point(const CubeSpec& spec,
                                     const std::function<bool(std::span<const Int>, int)>& visit,
                                     const EnumerationOptions& opts) {
    const std::size_t n = spec.n();
    LatticePoint x(n, 0);
    std::uint64_t count = 0;
    bool stopped = false;

    // sign of the product over slots > j, carried down the recursion
    auto recurse = [&](auto&& self, std::size_t j, int sign) -> void {
        if (j == 0) {
            if (++count > opts.point_cap) {
                throw CapacityError("lattice enumeration exceeded point cap", opts.point_cap);
            }
            const int rho = (n % 2 == 0) ? sign : -sign;
            if (!visit(x, rho)) stopped = true;
            return;
        }
        const Int a = eval_A(spec, j, std::span<const Int>(x).subspan(j));
        // closed branch {0..a} or open branch {a+1..-1}; ascending order either way
        const Int lo = a >= 0 ? 0 : checked::add(a, 1);
        const Int hi = a >= 0 ? a : -1;
        for (Int v = lo; v <= hi && !stopped; ++v) {
            x[j - 1] = v;
            self(self, j - 1, sign * sgn(v));
        }
        x[j - 1] = 0;
    };

    // Lexicographic in (x_n, ..., x_1) means x_n is the outermost loop.
    recurse(recurse, n, 1);
    return count;
}

SignedLatticeSet enumerate_lattice(const CubeSpec& spec, const EnumerationOptions& opts) {
    SignedLatticeSet out;
    for_each_lattice_point(
        spec,
        [&](std::span<const Int> x, int rho) {
            out.push_back({LatticePoint(x.begin(), x.end()), rho});
            return true;
        },
        opts);
    return out;
}

CubeSpec truncated(const CubeSpec& spec, std::size_t k) {
    const std::size_t n = spec.n();
    if (k < 1 || k > n) {
        throw UsageError("truncated: k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
    }
    const std::size_t offset = n - k;
    std::vector<Int> ell(spec.ell().begin() + static_cast<std::ptrdiff_t>(offset), spec.ell().end());
    CubeSpec out(k, std::move(ell));
    for (const auto& e : spec.entries()) {
        if (e.i > offset) out.set_c(e.i - offset, e.j - offset, e.value);
    }
    return out;
}

ConditionPResult check_condition_P(const CubeSpec& spec, const ConditionPOptions& opts) {
    const std::size_t n = spec.n();
    if (n > opts.cone_cap) {
        throw CapacityError("condition (P) vertex sweep: n = " + std::to_string(n) + " exceeds cone cap",
                            opts.cone_cap);
    }
    // vertices of the polytope on slots k+1..n, stored flat with stride n-k
    std::vector<Int> verts; // level n: one empty tail
    std::size_t count = 1;
    for (std::size_t k = n; k >= 1; --k) {
        const std::size_t width = n - k;
        for (std::size_t v = 0; v < count; ++v) {
            std::span<const Int> tail(verts.data() + v * width, width);
            const Int a = eval_A(spec, k, tail);
            if (a < 0) {
                ConditionPResult r;
                r.holds = false;
                r.failing_k = k;
                r.vertex.assign(tail.begin(), tail.end());
                r.value = a;
                return r;
            }
        }
        if (k == 1) break;
        // extend each tail with x_k in {0, A_k(tail)}
        std::vector<Int> next;
        next.reserve(2 * count * (width + 1));
        for (std::size_t v = 0; v < count; ++v) {
            std::span<const Int> tail(verts.data() + v * width, width);
            const Int a = eval_A(spec, k, tail);
            for (Int xk : {Int{0}, a}) {
                next.push_back(xk);
                next.insert(next.end(), tail.begin(), tail.end());
            }
        }
        verts = std::move(next);
        count *= 2;
    }
    return {};
}

BoundingBox bounding_box(const CubeSpec& spec) {
    const std::size_t n = spec.n();
    BoundingBox box{std::vector<Int>(n, 0), std::vector<Int>(n, 0)};
    for (std::size_t j = n; j >= 1; --j) {
        const auto row = spec.row(j);
        Int alo = spec.ell()[j - 1];
        Int ahi = alo;
        for (std::size_t k = j + 1; k <= n; ++k) {
            const Int c = row[k - 1];
            if (c == 0) continue;
            const Int p1 = checked::mul(c, box.lo[k - 1]);
            const Int p2 = checked::mul(c, box.hi[k - 1]);
            alo = checked::sub(alo, std::max(p1, p2));
            ahi = checked::sub(ahi, std::min(p1, p2));
        }
        // x_j lies between 0 and A_j on either branch
        box.lo[j - 1] = std::min<Int>(0, alo);
        box.hi[j - 1] = std::max<Int>(0, ahi);
    }
    return box;
}

} // namespace twistcube
