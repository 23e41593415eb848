#include "freelat/simplex.hpp"

#include <stdexcept>

namespace freelat {

namespace {

void check_shape(const RationalMatrix& a, std::size_t rows) {
    if (a.size() != rows)
        throw std::invalid_argument("row count does not match right-hand side");
    for (const auto& row : a)
        if (row.size() != a.front().size())
            throw std::invalid_argument("ragged constraint matrix");
}

}  // namespace

FeasibilityResult solve_feasibility(const RationalMatrix& a, std::span<const Rational> b) {
    const std::size_t m = b.size();
    check_shape(a, m);
    const std::size_t n = m == 0 ? 0 : a.front().size();
    FeasibilityResult result;
    if (m == 0) {
        result.solution = RationalVector(n, Rational(0));
        return result;
    }

    // Tableau columns: n originals, m artificials, then the right-hand side.
    const std::size_t width = n + m + 1;
    const std::size_t rhs = n + m;
    std::vector<int> sign(m, 1);
    RationalMatrix t(m, RationalVector(width, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        sign[i] = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            if (!a[i][j].is_zero()) t[i][j] = sign[i] < 0 ? Rational(-a[i][j]) : a[i][j];
        t[i][n + i] = 1;
        t[i][rhs] = sign[i] < 0 ? Rational(-b[i]) : b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs of min sum(artificials): original columns get -sum_i t[i][j].
    RationalVector cost(width, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (!t[i][j].is_zero()) cost[j] -= t[i][j];
    for (std::size_t i = 0; i < m; ++i) cost[rhs] -= t[i][rhs];

    for (;;) {
        // Bland: lowest-index original column with negative reduced cost.
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter == n)
            break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            throw std::logic_error("phase-1 simplex is bounded below; unbounded ray is impossible");

        ++result.pivots;
        Rational piv = t[leave][enter];
        for (std::size_t j = 0; j < width; ++j)
            if (!t[leave][j].is_zero()) t[leave][j] /= piv;
        auto eliminate = [&](RationalVector& row) {
            if (row[enter].is_zero()) return;
            Rational f = row[enter];
            for (std::size_t j = 0; j < width; ++j)
                if (!t[leave][j].is_zero()) row[j] -= f * t[leave][j];
        };
        for (std::size_t i = 0; i < m; ++i)
            if (i != leave) eliminate(t[i]);
        eliminate(cost);
        basis[leave] = enter;
    }

    // cost[rhs] holds -(phase-1 objective).
    if (cost[rhs].is_zero()) {
        RationalVector x(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = t[i][rhs];
        result.solution = std::move(x);
        return result;
    }

    // Artificial k has unit cost, so its reduced cost is 1 - y_k.
    FarkasCertificate cert;
    cert.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational yi = Rational(1) - cost[n + i];
        cert.y[i] = sign[i] < 0 ? Rational(-yi) : yi;
    }
    result.certificate = std::move(cert);
    return result;
}

bool verify_solution(const RationalMatrix& a, std::span<const Rational> b,
                     std::span<const Rational> x) {
    if (a.size() != b.size()) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) return false;
        Rational s = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) s += a[i][j] * x[j];
        if (s != b[i]) return false;
    }
    return true;
}

bool verify_certificate(const RationalMatrix& a, std::span<const Rational> b,
                        const FarkasCertificate& cert) {
    if (cert.y.size() != b.size() || a.size() != b.size()) return false;
    Rational by = 0;
    for (std::size_t i = 0; i < b.size(); ++i) by += b[i] * cert.y[i];
    if (by <= 0) return false;
    const std::size_t n = a.empty() ? 0 : a.front().size();
    for (std::size_t j = 0; j < n; ++j) {
        Rational col = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i][j].is_zero()) col += a[i][j] * cert.y[i];
        if (col > 0) return false;
    }
    return true;
}

}  // namespace freelat
