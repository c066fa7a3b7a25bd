#include <map>

#include "dichotomy/errors.hpp"
#include "dichotomy/presented.hpp"
#include "dichotomy/ring.hpp"

namespace dichotomy {

FiniteRing zmod(unsigned n)
{
    if (n == 0) throw ShapeError("Z/0 is not finite");
    std::vector<Elem> add(n * n), mul(n * n);
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            add[a * n + b] = (a + b) % n;
            mul[a * n + b] = (a * b) % n;
        }
    return FiniteRing(n, std::move(add), std::move(mul), 0, n == 1 ? 0 : 1);
}

FiniteRing galois_field4()
{
    return PresentedRing::poly_quotient(2, {1, 1, 1}).to_finite().ring;
}

FiniteRing monomial_quotient(unsigned p, const std::vector<std::vector<unsigned>>& standard,
                             const std::vector<std::string>& vars)
{
    std::size_t k = standard.size();
    if (k == 0) throw ShapeError("monomial quotient needs at least the monomial 1");
    std::map<std::vector<unsigned>, std::size_t> pos;
    for (std::size_t i = 0; i < k; ++i) {
        if (standard[i].size() != vars.size()) throw ShapeError("exponent vector has wrong length");
        pos[standard[i]] = i;
    }
    std::vector<unsigned> unit(vars.size(), 0);
    if (!pos.count(unit)) throw ShapeError("monomial 1 missing from standard set");

    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) n *= p;
    auto digits = [&](std::size_t x) {
        std::vector<unsigned> d(k);
        for (std::size_t i = 0; i < k; ++i) {
            d[i] = static_cast<unsigned>(x % p);
            x /= p;
        }
        return d;
    };
    auto join = [&](const std::vector<unsigned>& d) {
        std::size_t x = 0, s = 1;
        for (std::size_t i = 0; i < k; ++i) {
            x += (d[i] % p) * s;
            s *= p;
        }
        return static_cast<Elem>(x);
    };
    // product of standard monomials i and j, or k when it dies
    std::vector<std::size_t> prod(k * k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<unsigned> e(vars.size());
            for (std::size_t v = 0; v < vars.size(); ++v) e[v] = standard[i][v] + standard[j][v];
            auto it = pos.find(e);
            if (it != pos.end()) prod[i * k + j] = it->second;
        }
    auto mono_name = [&](std::size_t i) {
        std::string s;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            if (standard[i][v] == 0) continue;
            s += vars[v];
            if (standard[i][v] > 1) s += "^" + std::to_string(standard[i][v]);
        }
        return s;
    };
    std::vector<Elem> add(n * n), mul(n * n);
    std::vector<std::string> names(n);
    for (std::size_t a = 0; a < n; ++a) {
        auto da = digits(a);
        std::string nm;
        for (std::size_t i = 0; i < k; ++i) {
            if (da[i] == 0) continue;
            std::string m = mono_name(i);
            std::string term = m.empty() ? std::to_string(da[i]) : (da[i] == 1 ? m : std::to_string(da[i]) + m);
            nm += (nm.empty() ? "" : "+") + term;
        }
        names[a] = nm.empty() ? "0" : nm;
        for (std::size_t b = 0; b < n; ++b) {
            auto db = digits(b);
            std::vector<unsigned> s(k), q(k, 0);
            for (std::size_t i = 0; i < k; ++i) s[i] = da[i] + db[i];
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    std::size_t t = prod[i * k + j];
                    if (t < k) q[t] = (q[t] + da[i] * db[j]) % p;
                }
            add[a * n + b] = join(s);
            mul[a * n + b] = join(q);
        }
    }
    std::vector<unsigned> one(k, 0);
    one[pos[unit]] = 1;
    return FiniteRing(n, std::move(add), std::move(mul), 0, join(one), std::move(names));
}

std::vector<CatalogEntry> small_catalog()
{
    std::vector<CatalogEntry> c;
    for (unsigned n : {2u, 3u, 4u, 6u, 8u, 9u, 12u}) c.push_back({"Z/" + std::to_string(n), zmod(n)});
    c.push_back({"F4", galois_field4()});
    c.push_back({"F2[x]/(x^2)", monomial_quotient(2, {{0}, {1}}, {"x"})});
    c.push_back({"F2[x]/(x^3)", monomial_quotient(2, {{0}, {1}, {2}}, {"x"})});
    c.push_back({"F3[x]/(x^2)", monomial_quotient(3, {{0}, {1}}, {"x"})});
    c.push_back({"F2[x,y]/(x^2,xy,y^2)", monomial_quotient(2, {{0, 0}, {1, 0}, {0, 1}}, {"x", "y"})});
    c.push_back({"F2[x,y]/(x^2,y^2)", monomial_quotient(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {"x", "y"})});
    c.push_back({"Z/2xZ/2", product_ring({zmod(2), zmod(2)})});
    c.push_back({"Z/2xZ/4", product_ring({zmod(2), zmod(4)})});
    c.push_back({"Z/4[x]/(x^2)", PresentedRing::poly_quotient(4, {0, 0, 1}).to_finite().ring});
    return c;
}

std::optional<FiniteRing> catalog_ring(const std::string& name)
{
    for (auto& e : small_catalog())
        if (e.name == name) return e.ring;
    return std::nullopt;
}

}  // namespace dichotomy
