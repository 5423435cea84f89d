#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ulpt/exact.hpp"
#include "ulpt/instance.hpp"
#include "ulpt/lpt.hpp"

namespace ulpt {

/// Dense real polynomial; coefficients[k] multiplies x^k.
struct Polynomial {
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
        return acc;
    }

    Polynomial& operator+=(const Polynomial& other) {
        if (other.coefficients.size() > coefficients.size())
            coefficients.resize(other.coefficients.size(), 0.0);
        for (std::size_t k = 0; k < other.coefficients.size(); ++k)
            coefficients[k] += other.coefficients[k];
        return *this;
    }
};

inline Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    lhs += rhs;
    return lhs;
}

/// P_m(x) = 2x^m - x^{m-1} - ... - x - 2. Its unique positive root is the
/// tight LPT worst-case ratio for m processors (proven tight for m <= 5).
inline Polynomial char_poly(int m) {
    if (m < 1) throw std::invalid_argument("char_poly: m must be >= 1");
    Polynomial poly;
    poly.coefficients.assign(static_cast<std::size_t>(m) + 1, -1.0);
    poly.coefficients.front() = -2.0;
    poly.coefficients.back() = 2.0;
    return poly;
}

struct NoPositiveRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Largest positive real root, for polynomials that are eventually
/// positive (positive leading coefficient). An upper bracket is found by
/// doubling from x = 2; the rightmost sign change on a dense grid below
/// it is then bisected. tol = 0 bisects down to one ulp.
inline double max_positive_root(const Polynomial& poly, double tol = 1e-12) {
    if (tol < 0.0) throw std::invalid_argument("max_positive_root: tol must be >= 0");
    if (poly.degree() < 1) throw NoPositiveRoot("polynomial has no positive root (degree < 1)");

    double upper = 2.0;
    int doublings = 0;
    while (poly.eval(upper) <= 0.0) {
        upper *= 2.0;
        if (++doublings > 60) throw NoPositiveRoot("no positive upper bracket found");
    }

    constexpr int kGrid = 65536;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (int k = kGrid; k >= 1; --k) {
        double x = upper * static_cast<double>(k) / kGrid;
        if (poly.eval(x) <= 0.0) {
            lo = x;
            hi = upper * static_cast<double>(k + 1) / kGrid;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) throw NoPositiveRoot("no positive root found below the upper bracket");

    // Invariant: poly(lo) <= 0 < poly(hi).
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (poly.eval(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
        if (tol > 0.0 && hi - lo <= tol) break;
    }
    return 0.5 * (lo + hi);
}

/// rho(m): unique positive root of P_m. Values for small m are computed
/// once to full binary64 precision and cached (thread-safe static init).
inline double rho(int m) {
    if (m < 1) throw std::invalid_argument("rho: m must be >= 1");
    constexpr int kCacheMax = 16;
    if (m <= kCacheMax) {
        static const std::array<double, kCacheMax + 1> table = [] {
            std::array<double, kCacheMax + 1> t{};
            for (int k = 1; k <= kCacheMax; ++k) t[static_cast<std::size_t>(k)] = max_positive_root(char_poly(k), 0.0);
            return t;
        }();
        return table[static_cast<std::size_t>(m)];
    }
    return max_positive_root(char_poly(m), 0.0);
}

/// 2m/(m+1): the classical upper bound for LPT on uniform processors.
inline double gis_bound(int m) {
    if (m < 1) throw std::invalid_argument("gis_bound: m must be >= 1");
    return 2.0 * m / (m + 1.0);
}

/// 4/3 - 1/(3m): the tight LPT bound for identical processors.
inline double graham_bound(int m) {
    if (m < 1) throw std::invalid_argument("graham_bound: m must be >= 1");
    return 4.0 / 3.0 - 1.0 / (3.0 * m);
}

struct RatioReport {
    double lpt = 0.0;
    double opt = 0.0;
    double ratio = 0.0;
    double rho_m = 0.0;
    double gis_bound = 0.0;
    double graham_bound = 0.0;
    long long nodes_explored = 0;
};

struct SolveUnproven : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// LPT(I)/OPT(I) plus the relevant bounds for the instance's m. Requires
/// t(n) > 0 and an exact solve within the node budget.
inline RatioReport approx_ratio(const Instance& inst, long long node_budget = kDefaultNodeBudget) {
    require_valid(inst);
    if (inst.sizes.back() <= 0.0)
        throw std::invalid_argument("approx_ratio: degenerate instance (smallest task size 0)");
    RatioReport report;
    report.lpt = lpt_makespan(inst);
    OptResult opt = opt_bnb(inst, node_budget);
    if (!opt.proven)
        throw SolveUnproven("approx_ratio: exact solver exhausted its node budget");
    report.opt = opt.makespan;
    report.nodes_explored = opt.nodes_explored;
    report.ratio = report.lpt / report.opt;
    report.rho_m = rho(inst.m());
    report.gis_bound = ulpt::gis_bound(inst.m());
    report.graham_bound = ulpt::graham_bound(inst.m());
    return report;
}

}  // namespace ulpt
