#include "reference.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace promov::testing {

namespace {

Integer laplace_det(const std::vector<std::vector<Integer>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<Integer>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Integer> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        const Integer term = m[0][j] * laplace_det(minor);
        total += (j % 2 == 0) ? term : Integer(-term);
    }
    return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

IntVector determinantal_divisors(const IntMatrix& a) {
    IntVector out;
    Integer prev = 1;
    const std::size_t r = std::min(a.rows(), a.cols());
    for (std::size_t k = 1; k <= r; ++k) {
        Integer g = 0;
        for (const auto& rows : subsets(a.rows(), k))
            for (const auto& cols : subsets(a.cols(), k)) {
                std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rows[i], cols[j]);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), laplace_det(m).get_mpz_t());
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

bool congruence_solvable_by_search(const IntMatrix& a, const IntVector& b, const IntVector& moduli) {
    Integer l = 1;
    for (const auto& m : moduli) {
        if (m <= 0) throw std::invalid_argument("congruence_solvable_by_search: positive moduli only");
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.get_mpz_t());
    }
    const unsigned long range = l.get_ui();
    const std::size_t n = a.cols();
    std::vector<unsigned long> x(n, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < a.rows() && ok; ++i) {
            Integer s = -b[i];
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
            ok = mpz_divisible_p(s.get_mpz_t(), moduli[i].get_mpz_t()) != 0;
        }
        if (ok) return true;
        std::size_t j = 0;
        while (j < n && ++x[j] == range) x[j++] = 0;
        if (j == n) return false;
    }
}

template <CategoryBackend C>
bool system_definition_holds(Property p, const InverseSystem<C>& x) {
    const auto& poset = x.index().poset();
    const std::size_t n = poset.size();
    auto above = [&](Index a) {
        std::vector<Index> out;
        for (Index b = 0; b < n; ++b)
            if (poset.leq(a, b)) out.push_back(b);
        return out;
    };
    auto homs = [](const typename C::Object& s, const typename C::Object& t) {
        return C::enumerate_homs(s, t, kHomEnumerationCap);
    };

    auto cone_from = [&](Index lam, Index lam1) {
        std::vector<std::vector<typename C::Morphism>> options(n);
        for (Index i = 0; i < n; ++i)
            for (auto& m : homs(x.object(lam1), x.object(i)))
                if (i != lam || C::equal(m, x.bond(lam, lam1))) options[i].push_back(std::move(m));
        std::vector<std::size_t> choice(n, 0);
        std::function<bool(Index)> place = [&](Index i) -> bool {
            if (i == n) return true;
            for (std::size_t c = 0; c < options[i].size(); ++c) {
                bool ok = true;
                for (Index j = 0; j < i && ok; ++j) {
                    const auto& mj = options[j][choice[j]];
                    const auto& mi = options[i][c];
                    if (poset.leq(j, i)) ok = C::equal(C::compose(x.bond(j, i), mi), mj);
                    if (ok && poset.leq(i, j)) ok = C::equal(C::compose(x.bond(i, j), mj), mi);
                }
                if (!ok) continue;
                choice[i] = c;
                if (place(i + 1)) return true;
            }
            return false;
        };
        return place(0);
    };

    for (Index lam = 0; lam < n; ++lam) {
        bool has_index = false;
        for (Index lam1 : above(lam)) {
            bool good = true;
            if (p == Property::UniformlyMovable) {
                good = cone_from(lam, lam1);
            } else {
                for (Index lam2 : above(lam)) {
                    bool exists = false;
                    for (const auto& r : homs(x.object(lam1), x.object(lam2))) {
                        if (!C::equal(C::compose(x.bond(lam, lam2), r), x.bond(lam, lam1))) continue;
                        if (p == Property::Movable) {
                            exists = true;
                        } else {
                            for (Index s = 0; s < n && !exists; ++s)
                                if (poset.leq(lam1, s) && poset.leq(lam2, s) &&
                                    C::equal(C::compose(r, x.bond(lam1, s)), x.bond(lam2, s)))
                                    exists = true;
                        }
                        if (exists) break;
                    }
                    if (!exists) {
                        good = false;
                        break;
                    }
                }
            }
            if (good) {
                has_index = true;
                break;
            }
        }
        if (!has_index) return false;
    }
    return true;
}

template <CategoryBackend C>
bool sequence_movable_in_box(const InverseSystem<C>& x, const Horizon& h) {
    for (Index lam = x.index().first(); lam <= h.mu_max; ++lam) {
        const Index lam1 = std::max(h.lambda_max, lam);
        for (Index lam2 = lam; lam2 <= std::max(h.muprime_max, lam1); ++lam2) {
            const auto target = x.bond(lam, lam1);
            bool exists = false;
            for (const auto& r : C::enumerate_homs(x.object(lam1), x.object(lam2), kHomEnumerationCap))
                if (C::equal(C::compose(x.bond(lam, lam2), r), target)) {
                    exists = true;
                    break;
                }
            if (!exists) return false;
        }
    }
    return true;
}

bool integral_line_movable_in_box(const InverseSystem<AbelianCategory>& x, const Horizon& h) {
    auto product = [&](Index a, Index b) {
        Integer p = 1;
        for (Index n = a; n < b; ++n) p *= x.step(n).matrix()(0, 0);
        return p;
    };
    for (Index lam = x.index().first(); lam <= h.mu_max; ++lam) {
        const Index lam1 = std::max(h.lambda_max, lam);
        const Integer target = product(lam, lam1);
        for (Index lam2 = lam; lam2 <= std::max(h.muprime_max, lam1); ++lam2) {
            const Integer d = product(lam, lam2);
            const bool divides = d == 0 ? target == 0 : mpz_divisible_p(target.get_mpz_t(), d.get_mpz_t()) != 0;
            if (!divides) return false;
        }
    }
    return true;
}

template bool system_definition_holds<AbelianCategory>(Property, const InverseSystem<AbelianCategory>&);
template bool system_definition_holds<PointedSetCategory>(Property, const InverseSystem<PointedSetCategory>&);
template bool sequence_movable_in_box<AbelianCategory>(const InverseSystem<AbelianCategory>&, const Horizon&);
template bool sequence_movable_in_box<PointedSetCategory>(const InverseSystem<PointedSetCategory>&,
                                                          const Horizon&);

}  // namespace promov::testing
