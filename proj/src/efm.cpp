#include "crnparam/efm.hpp"

#include <algorithm>
#include <cstdint>

namespace crnparam {

namespace {

struct WorkRay {
    std::vector<mpz_class> v;
    std::vector<std::uint64_t> bits;
};

std::vector<std::uint64_t> support_bits(const std::vector<mpz_class>& v) {
    std::vector<std::uint64_t> bits((v.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) bits[i / 64] |= std::uint64_t{1} << (i % 64);
    return bits;
}

bool subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

void make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

FluxModeSet compute_efms(const RationalMatrix& n) {
    const std::size_t r = n.cols();
    std::vector<WorkRay> rays;
    for (std::size_t j = 0; j < r; ++j) {
        WorkRay w;
        w.v.assign(r, 0);
        w.v[j] = 1;
        w.bits = support_bits(w.v);
        rays.push_back(std::move(w));
    }
    for (std::size_t row = 0; row < n.rows(); ++row) {
        std::vector<mpz_class> coeff = primitive_integer_vector(n.row(row));
        std::vector<mpz_class> dot(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<WorkRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            mpz_class d = 0;
            for (std::size_t j = 0; j < r; ++j)
                if (coeff[j] != 0 && rays[i].v[j] != 0) d += coeff[j] * rays[i].v[j];
            dot[i] = d;
            if (d > 0)
                pos.push_back(i);
            else if (d < 0)
                neg.push_back(i);
            else
                next.push_back(rays[i]);
        }
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                std::vector<std::uint64_t> uni(rays[p].bits.size());
                for (std::size_t w = 0; w < uni.size(); ++w) uni[w] = rays[p].bits[w] | rays[q].bits[w];
                // adjacency: no other ray's support fits inside the union
                bool adjacent = true;
                for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
                    if (t != p && t != q && subset(rays[t].bits, uni)) adjacent = false;
                if (!adjacent) continue;
                WorkRay c;
                c.v.resize(r);
                mpz_class a = dot[p], b = -dot[q];
                for (std::size_t j = 0; j < r; ++j) c.v[j] = a * rays[q].v[j] + b * rays[p].v[j];
                make_primitive(c.v);
                c.bits = support_bits(c.v);
                next.push_back(std::move(c));
            }
        }
        // support-minimal filter and dedup
        std::vector<WorkRay> kept;
        for (std::size_t i = 0; i < next.size(); ++i) {
            bool minimal = true;
            for (std::size_t t = 0; t < next.size() && minimal; ++t) {
                if (t == i) continue;
                if (subset(next[t].bits, next[i].bits) && (next[t].bits != next[i].bits || t < i)) minimal = false;
            }
            if (minimal) kept.push_back(next[i]);
        }
        rays = std::move(kept);
    }
    FluxModeSet set;
    set.reactions = r;
    for (auto& w : rays) {
        Ray ray;
        ray.coordinates = std::move(w.v);
        for (std::size_t j = 0; j < r; ++j)
            if (ray.coordinates[j] != 0) ray.support.push_back(j);
        set.modes.push_back(std::move(ray));
    }
    std::sort(set.modes.begin(), set.modes.end(), [](const Ray& a, const Ray& b) { return a.support < b.support; });
    efm_properties(set);
    return set;
}

void efm_properties(FluxModeSet& set) {
    set.unitary = std::all_of(set.modes.begin(), set.modes.end(), [](const Ray& m) {
        return std::all_of(m.coordinates.begin(), m.coordinates.end(), [](const mpz_class& x) { return x == 0 || x == 1; });
    });
    std::vector<bool> hit(set.reactions, false);
    for (const auto& m : set.modes)
        for (std::size_t j : m.support) hit[j] = true;
    set.covers = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

}  // namespace crnparam
