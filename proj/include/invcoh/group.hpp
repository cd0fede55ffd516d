#pragma once

// Finite groups stored by full multiplication table, with permutation-closure
// construction. Element 0 is always the identity. Each element carries a word
// in the generators so representation matrices can be evaluated from
// generator images.

#include <algorithm>
#include <map>
#include <queue>

#include "intmatrix.hpp"
#include "rational.hpp"

namespace invcoh {

class FiniteGroup {
public:
    FiniteGroup() = default;

    // From an explicit table; table[i*n+j] = index of (element i)*(element j).
    static FiniteGroup from_table(std::vector<int> table, size_t n,
                                  std::vector<std::string> names = {},
                                  std::vector<int> generators = {}) {
        FiniteGroup g;
        g.n_ = n;
        g.mul_ = std::move(table);
        if (g.mul_.size() != n * n) throw std::invalid_argument("table size mismatch");
        g.names_ = std::move(names);
        if (g.names_.empty()) {
            for (size_t i = 0; i < n; ++i) g.names_.push_back("g" + std::to_string(i));
        }
        g.generators_ = std::move(generators);
        if (g.generators_.empty())
            for (size_t i = 1; i < n; ++i) g.generators_.push_back((int)i);
        g.finish();
        return g;
    }

    // Closure of permutations acting on {0..m-1}. Throws if the closure
    // exceeds `bound`.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& perms,
                                         size_t bound = 4096,
                                         std::vector<std::string> gen_names = {}) {
        if (perms.empty()) throw std::invalid_argument("need at least one permutation");
        size_t m = perms[0].size();
        for (const auto& p : perms) {
            if (p.size() != m) throw std::invalid_argument("permutations act on different sets");
            std::vector<bool> seen(m, false);
            for (int v : p) {
                if (v < 0 || (size_t)v >= m || seen[v]) throw std::invalid_argument("not a permutation");
                seen[v] = true;
            }
        }
        std::vector<int> id(m);
        for (size_t i = 0; i < m; ++i) id[i] = (int)i;

        std::map<std::vector<int>, int> index;
        std::vector<std::vector<int>> elems;
        std::vector<std::vector<int>> words;
        elems.push_back(id);
        words.push_back({});
        index[id] = 0;
        std::queue<int> todo;
        todo.push(0);
        while (!todo.empty()) {
            int cur = todo.front();
            todo.pop();
            for (size_t gi = 0; gi < perms.size(); ++gi) {
                // compose: (g . cur)(x) = g(cur(x))
                std::vector<int> next(m);
                for (size_t x = 0; x < m; ++x) next[x] = perms[gi][elems[cur][x]];
                auto it = index.find(next);
                if (it == index.end()) {
                    if (elems.size() >= bound) throw std::runtime_error("closure exceeds bound");
                    int idx = (int)elems.size();
                    index[next] = idx;
                    elems.push_back(next);
                    std::vector<int> w = words[cur];
                    w.insert(w.begin(), (int)gi); // word for g*cur: generator applied on the left
                    words.push_back(std::move(w));
                    todo.push(idx);
                }
            }
        }
        size_t n = elems.size();
        FiniteGroup g;
        g.n_ = n;
        g.mul_.assign(n * n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                std::vector<int> prod(m);
                for (size_t x = 0; x < m; ++x) prod[x] = elems[i][elems[j][x]];
                g.mul_[i * n + j] = index.at(prod);
            }
        g.words_ = std::move(words);
        for (size_t i = 0; i < perms.size(); ++i) g.generators_.push_back(index.at(perms[i]));
        if (gen_names.empty())
            for (size_t i = 0; i < perms.size(); ++i) gen_names.push_back(std::string(1, char('a' + i)));
        g.names_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            if (g.words_[i].empty()) {
                g.names_[i] = "e";
            } else {
                std::string s;
                for (int w : g.words_[i]) s += gen_names[w];
                g.names_[i] = s;
            }
        }
        g.finish();
        return g;
    }

    // Direct sum of cyclic groups Z_{d1} x Z_{d2} x ...
    static FiniteGroup abelian(const std::vector<long>& invariants) {
        size_t n = 1;
        for (long d : invariants) {
            if (d < 1) throw std::invalid_argument("invariant factors must be positive");
            n *= (size_t)d;
        }
        auto unrank = [&](size_t idx) {
            std::vector<long> t(invariants.size());
            for (size_t i = invariants.size(); i-- > 0;) {
                t[i] = (long)(idx % (size_t)invariants[i]);
                idx /= (size_t)invariants[i];
            }
            return t;
        };
        auto rank_of = [&](const std::vector<long>& t) {
            size_t idx = 0;
            for (size_t i = 0; i < invariants.size(); ++i) idx = idx * (size_t)invariants[i] + (size_t)t[i];
            return idx;
        };
        std::vector<int> table(n * n);
        for (size_t i = 0; i < n; ++i) {
            auto a = unrank(i);
            for (size_t j = 0; j < n; ++j) {
                auto b = unrank(j);
                std::vector<long> c(invariants.size());
                for (size_t k = 0; k < invariants.size(); ++k) c[k] = (a[k] + b[k]) % invariants[k];
                table[i * n + j] = (int)rank_of(c);
            }
        }
        std::vector<std::string> names(n);
        for (size_t i = 0; i < n; ++i) {
            auto t = unrank(i);
            std::string s = "(";
            for (size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
            names[i] = s + ")";
        }
        std::vector<int> gens;
        for (size_t k = 0; k < invariants.size(); ++k) {
            if (invariants[k] == 1) continue;
            std::vector<long> t(invariants.size(), 0);
            t[k] = 1;
            gens.push_back((int)rank_of(t));
        }
        if (gens.empty()) gens.push_back(0);
        return from_table(std::move(table), n, std::move(names), std::move(gens));
    }

    size_t order() const { return n_; }
    int mul(int a, int b) const { return mul_[(size_t)a * n_ + (size_t)b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return 0; }
    const std::vector<int>& generators() const { return generators_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    // Word of element i in generator indices (empty for identity); built by
    // the closure constructor, reconstructed on demand otherwise.
    const std::vector<int>& word(int i) const {
        if (words_.empty()) build_words();
        return words_[i];
    }

    int conjugate(int g, int k) const { return mul(mul(inv(k), g), k); } // k^-1 g k

    int element_order(int a) const {
        int ord = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            ++ord;
        }
        return ord;
    }

    bool is_abelian() const {
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = i + 1; j < n_; ++j)
                if (mul((int)i, (int)j) != mul((int)j, (int)i)) return false;
        return true;
    }

    long exponent() const {
        long e = 1;
        for (size_t i = 0; i < n_; ++i) e = (long)lcm(Int(e), Int(element_order((int)i))).get_si();
        return e;
    }

    // Invariant factors (d1 | d2 | ...) of an abelian group, via the Smith
    // machinery on the relation lattice of the full table.
    std::vector<long> abelian_invariants() const {
        if (!is_abelian()) throw std::invalid_argument("group is not abelian");
        if (n_ == 1) return {};
        size_t k = n_ - 1; // generators = nonidentity elements
        IntMatrix rel(n_ * n_, k);
        size_t r = 0;
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j, ++r) {
                if (i > 0) rel(r, i - 1) += 1;
                if (j > 0) rel(r, j - 1) += 1;
                int p = mul((int)i, (int)j);
                if (p > 0) rel(r, p - 1) -= 1;
            }
        AbelianGroup g = quotient_group(rel, k);
        std::vector<long> inv;
        for (const auto& d : g.factors) inv.push_back(d.get_si());
        return inv;
    }

    // Exhaustive associativity / identity / inverse check.
    void validate() const {
        for (size_t i = 0; i < n_; ++i) {
            if (mul(0, (int)i) != (int)i || mul((int)i, 0) != (int)i)
                throw std::invalid_argument("identity law fails");
            if (mul((int)i, inv_[i]) != 0) throw std::invalid_argument("inverse law fails");
        }
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = 0; b < n_; ++b)
                for (size_t c = 0; c < n_; ++c)
                    if (mul(mul((int)a, (int)b), (int)c) != mul((int)a, mul((int)b, (int)c)))
                        throw std::invalid_argument("associativity fails");
    }

private:
    void finish() {
        // identity must be index 0
        for (size_t i = 0; i < n_; ++i)
            if (mul(0, (int)i) != (int)i) throw std::invalid_argument("element 0 is not the identity");
        inv_.assign(n_, -1);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j)
                if (mul((int)i, (int)j) == 0) inv_[i] = (int)j;
        for (int x : inv_)
            if (x < 0) throw std::invalid_argument("missing inverse");
    }

    void build_words() const {
        words_.assign(n_, {});
        std::vector<bool> seen(n_, false);
        seen[0] = true;
        std::queue<int> todo;
        todo.push(0);
        while (!todo.empty()) {
            int cur = todo.front();
            todo.pop();
            for (size_t gi = 0; gi < generators_.size(); ++gi) {
                int nxt = mul(generators_[gi], cur);
                if (!seen[nxt]) {
                    seen[nxt] = true;
                    words_[nxt] = words_[cur];
                    words_[nxt].insert(words_[nxt].begin(), (int)gi);
                    todo.push(nxt);
                }
            }
        }
        for (bool s : seen)
            if (!s) throw std::invalid_argument("declared generators do not generate");
    }

    size_t n_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
    std::vector<int> generators_;
    mutable std::vector<std::vector<int>> words_;
};

} // namespace invcoh
