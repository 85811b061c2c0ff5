#include "f2lab/subspace.hpp"

#include <algorithm>

namespace f2lab {

namespace {

// most significant nonzero digit position, or -1 for 0
int top_digit(const GroupSpec& g, point_t x) {
    if (x == 0) return -1;
    if (g.p == 2) return 63 - __builtin_clzll(x);
    int top = -1;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        if (x % g.p != 0) top = int(i);
        x /= g.p;
    }
    return top;
}

}  // namespace

point_t Subspace::reduce(point_t x) const {
    const auto& g = g_;
    if (g.p == 2) {
        for (size_t i = 0; i < rows_.size(); ++i)
            if ((x >> pivots_[i]) & 1) x ^= rows_[i];
        return x;
    }
    for (size_t i = 0; i < rows_.size(); ++i) {
        std::uint32_t d = g.digit(x, pivots_[i]);
        if (d != 0) x = g.sub(x, g.scale(rows_[i], d));
    }
    return x;
}

void Subspace::insert_row(point_t x) {
    x = reduce(x);
    if (x == 0) return;
    int piv = top_digit(g_, x);
    // normalize pivot to 1
    std::uint32_t lead = g_.digit(x, std::uint32_t(piv));
    if (lead != 1) x = g_.scale(x, g_.inv_mod_p(lead));
    // eliminate the new pivot from existing rows
    for (size_t i = 0; i < rows_.size(); ++i) {
        std::uint32_t d = g_.digit(rows_[i], std::uint32_t(piv));
        if (d != 0) rows_[i] = g_.sub(rows_[i], g_.scale(x, d));
    }
    // insert, keeping pivots decreasing
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] > std::uint32_t(piv)) ++pos;
    rows_.insert(rows_.begin() + pos, x);
    pivots_.insert(pivots_.begin() + pos, std::uint32_t(piv));
}

Subspace Subspace::span(const GroupSpec& g, std::span<const point_t> vs) {
    Subspace s(g);
    for (point_t v : vs) {
        if (v >= g.order)
            throw std::invalid_argument("span: vector outside the ambient group");
        s.insert_row(v);
    }
    return s;
}

Subspace Subspace::whole(const GroupSpec& g) {
    Subspace s(g);
    for (std::uint32_t i = 0; i < g.n; ++i) s.insert_row(g.pow(i));
    return s;
}

bool Subspace::encoding_less(const Subspace& o) const {
    if (rows_.size() != o.rows_.size()) return rows_.size() < o.rows_.size();
    return rows_ < o.rows_;
}

point_t Subspace::element(std::uint64_t idx) const {
    if (g_.p == 2) {
        point_t x = 0;
        std::uint64_t v = idx;
        while (v) {
            unsigned b = unsigned(__builtin_ctzll(v));
            x ^= rows_[b];
            v &= v - 1;
        }
        return x;
    }
    point_t x = 0;
    for (size_t i = 0; i < rows_.size(); ++i) {
        std::uint32_t d = std::uint32_t(idx % g_.p);
        idx /= g_.p;
        if (d) x = g_.add(x, g_.scale(rows_[i], d));
    }
    return x;
}

std::uint64_t Subspace::coordinates(point_t x) const {
    // RREF: each pivot digit appears only in its own row with entry 1
    std::uint64_t idx = 0, mul = 1;
    for (size_t i = 0; i < rows_.size(); ++i) {
        idx += std::uint64_t(g_.digit(x, pivots_[i])) * mul;
        mul *= g_.p;
    }
    return idx;
}

bool Subspace::contains_subspace(const Subspace& w) const {
    if (g_ != w.g_) throw std::invalid_argument("ambient mismatch");
    for (point_t r : w.rows_)
        if (!contains(r)) return false;
    return true;
}

Subspace Subspace::annihilator() const {
    // free coordinates (non-pivots) index the kernel basis
    std::vector<bool> is_pivot(g_.n, false);
    for (auto piv : pivots_) is_pivot[piv] = true;
    std::vector<point_t> gens;
    std::vector<std::uint32_t> ds(g_.n, 0);
    for (std::uint32_t f = 0; f < g_.n; ++f) {
        if (is_pivot[f]) continue;
        std::fill(ds.begin(), ds.end(), 0);
        ds[f] = 1;
        for (size_t i = 0; i < rows_.size(); ++i) {
            std::uint32_t coef = g_.digit(rows_[i], f);
            if (coef != 0) ds[pivots_[i]] = g_.p - coef;  // -(row_i)_f
        }
        gens.push_back(g_.from_digits(ds));
    }
    return span(g_, gens);
}

Subspace Subspace::intersect(const Subspace& w) const {
    if (g_ != w.g_) throw std::invalid_argument("intersect: ambient mismatch");
    // ann(V cap W) = ann(V) + ann(W)
    Subspace av = annihilator();
    Subspace aw = w.annihilator();
    std::vector<point_t> both(av.basis());
    both.insert(both.end(), aw.basis().begin(), aw.basis().end());
    return span(g_, both).annihilator();
}

void enumerate_rref_bases(std::uint32_t p, std::uint32_t m, std::uint32_t k,
                          const std::function<bool(std::span<const point_t>)>& cb) {
    if (k > m) throw std::invalid_argument("enumerate: k out of range");
    GroupSpec g = GroupSpec::make(p, m);
    if (k == 0) {
        cb(std::span<const point_t>{});
        return;
    }
    // pivot positions m > piv[0] > ... > piv[k-1] >= 0; row i has entry 1
    // at piv[i], zeros above its pivot and at the other pivots, free
    // digits elsewhere below its pivot
    std::vector<std::uint32_t> piv(k);
    std::vector<point_t> rows(k);
    bool stop = false;

    // free positions for row i: j < piv[i], j not a pivot
    std::function<void(std::uint32_t)> fill_rows = [&](std::uint32_t i) {
        if (stop) return;
        if (i == k) {
            if (!cb(std::span<const point_t>(rows.data(), k))) stop = true;
            return;
        }
        std::vector<std::uint32_t> freepos;
        for (std::uint32_t j = 0; j < piv[i]; ++j) {
            bool isp = false;
            for (std::uint32_t t = 0; t < k; ++t)
                if (piv[t] == j) { isp = true; break; }
            if (!isp) freepos.push_back(j);
        }
        std::vector<std::uint32_t> ds(m, 0);
        std::vector<std::uint32_t> odo(freepos.size(), 0);
        while (true) {
            std::fill(ds.begin(), ds.end(), 0);
            ds[piv[i]] = 1;
            for (size_t t = 0; t < freepos.size(); ++t) ds[freepos[t]] = odo[t];
            rows[i] = g.from_digits(ds);
            fill_rows(i + 1);
            if (stop) return;
            // odometer
            size_t t = 0;
            while (t < odo.size() && odo[t] == p - 1) odo[t++] = 0;
            if (t == odo.size()) break;
            ++odo[t];
        }
    };

    std::function<void(std::uint32_t, std::uint32_t)> choose_pivots =
        [&](std::uint32_t i, std::uint32_t next_below) {
            if (stop) return;
            if (i == k) {
                fill_rows(0);
                return;
            }
            // piv[i] must leave room for k-1-i further pivots below
            for (int pos = int(next_below); pos >= int(k - 1 - i); --pos) {
                piv[i] = std::uint32_t(pos);
                choose_pivots(i + 1, std::uint32_t(pos) - 1);
                if (stop) return;
            }
        };
    choose_pivots(0, m - 1);
}

void enumerate_subspaces(const Subspace& v, std::uint32_t k,
                         const std::function<bool(const Subspace&)>& cb) {
    if (int(k) > v.dim())
        throw std::invalid_argument("enumerate_subspaces: k out of range");
    const GroupSpec& g = v.ambient();
    const bool is_whole = v.dim() == int(g.n);
    enumerate_rref_bases(g.p, std::uint32_t(v.dim()), k,
                         [&](std::span<const point_t> rows) {
                             std::vector<point_t> ambient_rows(rows.size());
                             for (size_t i = 0; i < rows.size(); ++i)
                                 ambient_rows[i] = is_whole ? rows[i] : v.element(rows[i]);
                             return cb(Subspace::span(g, ambient_rows));
                         });
}

Subspace sample_uniform_subspace(const GroupSpec& g, std::uint32_t d,
                                 std::mt19937_64& rng) {
    if (d > g.n)
        throw std::invalid_argument("sample_uniform_subspace: d > n");
    std::uniform_int_distribution<std::uint64_t> dist(0, g.order - 1);
    while (true) {
        std::vector<point_t> vs(d);
        for (auto& v : vs) v = dist(rng);
        Subspace s = Subspace::span(g, vs);
        if (s.dim() == int(d)) return s;
    }
}

CosetIndexer::CosetIndexer(const Subspace& v)
    : g_(v.ambient()), v_(v) {
    Subspace ann = v.annihilator();
    duals_ = ann.basis();
    dual_pivots_ = ann.pivots();
    num_cosets_ = g_.pow(std::uint32_t(duals_.size()));
}

std::uint64_t CosetIndexer::index_of(point_t x) const {
    std::uint64_t idx = 0, mul = 1;
    for (size_t j = 0; j < duals_.size(); ++j) {
        idx += std::uint64_t(g_.dot(duals_[j], x)) * mul;
        mul *= g_.p;
    }
    return idx;
}

point_t CosetIndexer::min_rep(std::uint64_t idx) const {
    // particular solution: syndrome digit j goes to the dual pivot position
    std::vector<std::uint32_t> ds(g_.n, 0);
    for (size_t j = 0; j < duals_.size(); ++j) {
        ds[dual_pivots_[j]] = std::uint32_t(idx % g_.p);
        idx /= g_.p;
    }
    return v_.reduce(g_.from_digits(ds));
}

}  // namespace f2lab
