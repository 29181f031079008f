#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wickbench {

using Vector = std::vector<double>;

/// Raised whenever two objects living on different ambient dimensions meet.
class DimensionError : public std::invalid_argument {
public:
    DimensionError(std::size_t expected, std::size_t got)
        : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                                ", got " + std::to_string(got)) {}
};

inline void require_dim(std::size_t expected, std::size_t got) {
    if (expected != got) throw DimensionError(expected, got);
}

inline std::uint64_t factorial(unsigned k) {
    if (k > 20) throw std::overflow_error("factorial: argument exceeds 64-bit range");
    std::uint64_t r = 1;
    for (unsigned j = 2; j <= k; ++j) r *= j;
    return r;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

/// Exponent vector of a tensorized Hermite basis element H_m(w) = prod_k H_{m_k}(w_k).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : exps_(dim, 0) {}
    MultiIndex(std::initializer_list<unsigned> exps) : exps_(exps) {}
    explicit MultiIndex(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    static MultiIndex unit(std::size_t dim, std::size_t k) {
        MultiIndex m(dim);
        m.exps_.at(k) = 1;
        return m;
    }

    std::size_t dim() const noexcept { return exps_.size(); }
    unsigned operator[](std::size_t k) const { return exps_[k]; }
    std::span<const unsigned> exponents() const noexcept { return exps_; }

    unsigned degree() const noexcept {
        unsigned d = 0;
        for (unsigned e : exps_) d += e;
        return d;
    }

    /// m! = prod_k m_k!, exact; throws std::overflow_error past 64 bits.
    std::uint64_t factorial() const {
        std::uint64_t r = 1;
        for (unsigned e : exps_) {
            const std::uint64_t f = wickbench::factorial(e);
            if (r > UINT64_MAX / f) throw std::overflow_error("MultiIndex::factorial: exceeds 64-bit range");
            r *= f;
        }
        return r;
    }

    /// m! as a double; exact while m! < 2^53, correctly rounded products beyond.
    double factorial_value() const {
        double r = 1.0;
        for (unsigned e : exps_)
            for (unsigned j = 2; j <= e; ++j) r *= j;
        return r;
    }

    MultiIndex operator+(const MultiIndex& other) const {
        require_dim(dim(), other.dim());
        MultiIndex r = *this;
        for (std::size_t k = 0; k < dim(); ++k) r.exps_[k] += other.exps_[k];
        return r;
    }

    /// m - e_k; caller guarantees m_k > 0.
    MultiIndex lowered(std::size_t k) const {
        MultiIndex r = *this;
        if (r.exps_.at(k) == 0) throw std::domain_error("MultiIndex::lowered: exponent already zero");
        --r.exps_[k];
        return r;
    }

    MultiIndex with(std::size_t k, unsigned e) const {
        MultiIndex r = *this;
        r.exps_.at(k) = e;
        return r;
    }

    /// y^m = prod_k y_k^{m_k}.
    double monomial(std::span<const double> y) const {
        require_dim(dim(), y.size());
        double r = 1.0;
        for (std::size_t k = 0; k < dim(); ++k)
            for (unsigned j = 0; j < exps_[k]; ++j) r *= y[k];
        return r;
    }

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;

private:
    std::vector<unsigned> exps_;
};

/// All multi-indices of dimension `dim` with total degree <= max_degree, graded order.
inline std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned max_degree) {
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(dim, 0);
    auto rec = [&](auto&& self, std::size_t k, unsigned remaining) -> void {
        if (k == dim) {
            out.emplace_back(cur);
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            cur[k] = e;
            self(self, k + 1, remaining - e);
        }
        cur[k] = 0;
    };
    rec(rec, 0, max_degree);
    std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        return a.degree() < b.degree();
    });
    return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    require_dim(a.size(), b.size());
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }

}  // namespace wickbench
