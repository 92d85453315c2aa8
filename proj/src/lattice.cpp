#include "simerka/lattice.hpp"

#include <algorithm>
#include <limits>

#include "simerka/arith.hpp"
#include "simerka/errors.hpp"

namespace simerka {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod_u64(u64 a, u64 e, u64 p)
{
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod_u64(a, p - 2, p); }

u64 residue(const Int& x, u64 p)
{
    // mpz_fdiv_ui gives the nonnegative residue for negative x too.
    return mpz_fdiv_ui(x.get_mpz_t(), p);
}

constexpr u64 kMersenne61 = (u64{1} << 61) - 1;
constexpr u64 kSecondPrime = 4611686018427387847ULL; // largest prime below 2^62

/// 62-bit primes in descending order, at least `count` of them.
const std::vector<u64>& crt_primes(std::size_t count)
{
    static std::vector<u64> primes;
    u64 next = primes.empty() ? (u64{1} << 62) - 1 : primes.back() - 2;
    while (primes.size() < count) {
        if (is_prime_u64(next)) primes.push_back(next);
        next -= 2;
    }
    return primes;
}

std::vector<std::vector<u64>> reduce_matrix(const Matrix& m, u64 p)
{
    std::vector<std::vector<u64>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].resize(m[i].size());
        for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = residue(m[i][j], p);
    }
    return out;
}

u64 det_mod(const Matrix& square, u64 p)
{
    auto a = reduce_matrix(square, p);
    const std::size_t n = a.size();
    u64 det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = det == 0 ? 0 : p - det;
        }
        det = mulmod(det, a[c][c], p);
        const u64 inv = invmod(a[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const u64 f = mulmod(a[r][c], inv, p);
            for (std::size_t k = c; k < n; ++k) {
                const u64 sub = mulmod(f, a[c][k], p);
                a[r][k] = a[r][k] >= sub ? a[r][k] - sub : a[r][k] + p - sub;
            }
        }
    }
    return det;
}

/// Number of CRT primes whose product exceeds twice the Hadamard bound.
std::size_t primes_needed(const Matrix& square)
{
    std::size_t bits = 2;
    for (const auto& row : square) {
        Int norm2 = 0;
        for (const auto& x : row) norm2 += x * x;
        bits += (mpz_sizeinbase(norm2.get_mpz_t(), 2) + 1) / 2 + 1;
    }
    return bits / 61 + 1;
}

Int crt_combine(const std::vector<u64>& residues, const std::vector<u64>& primes)
{
    Int r = 0, M = 1;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const u64 p = primes[i];
        const u64 rp = residue(r, p);
        const u64 diff = residues[i] >= rp ? residues[i] - rp : residues[i] + p - rp;
        const u64 t = mulmod(diff, invmod(residue(M, p), p), p);
        r += M * from_u64(t);
        M *= from_u64(p);
    }
    if (2 * r > M) r -= M;
    return r;
}

void check_square(const Matrix& m)
{
    for (const auto& row : m)
        if (row.size() != m.size()) throw Error(Errc::invalid_argument, "determinant of a non-square matrix");
}

/// row <- s*row + t*other on columns >= from.
void combine(std::vector<Int>& row, const Int& s, const std::vector<Int>& other, const Int& t, std::size_t from)
{
    for (std::size_t j = from; j < row.size(); ++j) row[j] = s * row[j] + t * other[j];
}

} // namespace

std::vector<std::size_t> independent_rows_mod(const Matrix& rows, std::uint64_t p)
{
    std::vector<std::vector<u64>> basis;
    std::vector<std::size_t> pivots, chosen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<u64> v(rows[i].size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = residue(rows[i][j], p);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const u64 f = v[pivots[b]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) {
                const u64 sub = mulmod(f, basis[b][j], p);
                v[j] = v[j] >= sub ? v[j] - sub : v[j] + p - sub;
            }
        }
        auto it = std::find_if(v.begin(), v.end(), [](u64 x) { return x != 0; });
        if (it == v.end()) continue;
        const auto pc = static_cast<std::size_t>(it - v.begin());
        const u64 inv = invmod(v[pc], p);
        for (auto& x : v) x = mulmod(x, inv, p);
        basis.push_back(std::move(v));
        pivots.push_back(pc);
        chosen.push_back(i);
    }
    return chosen;
}

std::size_t rank_mod(const Matrix& rows, std::uint64_t p) { return independent_rows_mod(rows, p).size(); }

Int modular_determinant(const Matrix& square)
{
    check_square(square);
    if (square.empty()) return 1;
    const std::size_t count = primes_needed(square);
    const std::vector<u64> primes(crt_primes(count).begin(), crt_primes(count).begin() + static_cast<long>(count));
    std::vector<u64> residues(count);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) residues[i] = det_mod(square, primes[i]);
    return crt_combine(residues, primes);
}

Int modular_determinant_serial(const Matrix& square)
{
    check_square(square);
    if (square.empty()) return 1;
    const std::size_t count = primes_needed(square);
    const std::vector<u64> primes(crt_primes(count).begin(), crt_primes(count).begin() + static_cast<long>(count));
    std::vector<u64> residues(count);
    for (std::size_t i = 0; i < count; ++i) residues[i] = det_mod(square, primes[i]);
    return crt_combine(residues, primes);
}

Matrix hermite_mod(const Matrix& rows, std::size_t n, const Int& D)
{
    if (D <= 0) throw Error(Errc::invalid_argument, "hermite_mod needs a positive modulus");
    Matrix H(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = D;

    auto insert = [&](std::vector<Int> v, bool modular) {
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            const Int a = H[i][i], b = v[i];
            if (divides(a, b)) {
                combine(v, 1, H[i], Int(-(b / a)), i);
            } else {
                Int s, t;
                const Int g = xgcd(a, b, s, t);
                std::vector<Int> hi = H[i];
                combine(hi, s, v, t, i);
                combine(v, Int(a / g), H[i], Int(-(b / g)), i);
                H[i] = std::move(hi);
            }
            if (modular) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    H[i][j] = floor_mod(H[i][j], D);
                    v[j] = floor_mod(v[j], D);
                }
            }
        }
    };

    for (const auto& r : rows) {
        if (r.size() != n) throw Error(Errc::invalid_argument, "row length does not match the lattice dimension");
        std::vector<Int> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = floor_mod(r[j], D);
        insert(std::move(v), true);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n, Int(0));
        e[i] = D;
        insert(std::move(e), false);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (H[i][i] < 0)
            for (auto& x : H[i]) x = -x;
        for (std::size_t r = 0; r < i; ++r) {
            const Int q = floor_div(H[r][i], H[i][i]);
            if (q != 0) combine(H[r], 1, H[i], Int(-q), i);
        }
    }
    return H;
}

std::vector<Int> smith_divisors(const Matrix& basis, const Int& D)
{
    const std::size_t n = basis.size();
    Matrix m(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = floor_mod(basis[i][j], D);

    std::vector<Int> out;
    for (std::size_t t = 0; t < n; ++t) {
        // Pivot: entry with the smallest gcd against D.
        std::size_t pr = n, pc = n;
        Int best = D + 1;
        for (std::size_t r = t; r < n; ++r)
            for (std::size_t c = t; c < n; ++c)
                if (m[r][c] != 0) {
                    const Int g = gcd(m[r][c], D);
                    if (g < best) best = g, pr = r, pc = c;
                }
        if (pr == n) {
            for (std::size_t k = t; k < n; ++k) out.push_back(D);
            break;
        }
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);

        for (;;) {
            bool dirty = false;
            for (std::size_t r = t + 1; r < n; ++r) {
                if (m[r][t] == 0) continue;
                const Int a = m[t][t], b = m[r][t];
                if (divides(a, b)) {
                    combine(m[r], 1, m[t], Int(-(b / a)), t);
                } else {
                    Int s, u;
                    const Int g = xgcd(a, b, s, u);
                    std::vector<Int> top = m[t];
                    combine(top, s, m[r], u, t);
                    combine(m[r], Int(a / g), m[t], Int(-(b / g)), t);
                    m[t] = std::move(top);
                }
                for (std::size_t j = t; j < n; ++j) {
                    m[t][j] = floor_mod(m[t][j], D);
                    m[r][j] = floor_mod(m[r][j], D);
                }
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (m[t][c] == 0) continue;
                const Int a = m[t][t], b = m[t][c];
                if (divides(a, b)) {
                    const Int q = b / a;
                    for (std::size_t r = t; r < n; ++r) m[r][c] = floor_mod(Int(m[r][c] - q * m[r][t]), D);
                } else {
                    Int s, u;
                    const Int g = xgcd(a, b, s, u);
                    for (std::size_t r = t; r < n; ++r) {
                        const Int x = m[r][t], y = m[r][c];
                        m[r][t] = floor_mod(Int(s * x + u * y), D);
                        m[r][c] = floor_mod(Int((a / g) * y - (b / g) * x), D);
                    }
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Column and row are clear; enforce divisibility of the rest.
            const Int g = gcd(m[t][t], D);
            std::size_t bad = n;
            for (std::size_t r = t + 1; r < n && bad == n; ++r)
                for (std::size_t c = t + 1; c < n; ++c)
                    if (!divides(g, m[r][c])) {
                        bad = r;
                        break;
                    }
            if (bad == n) break;
            for (std::size_t j = t; j < n; ++j) m[t][j] = floor_mod(Int(m[t][j] + m[bad][j]), D);
        }
        out.push_back(gcd(m[t][t], D));
    }
    std::vector<Int> divisors;
    for (auto& d : out)
        if (d > 1) divisors.push_back(d);
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

RelationLattice::RelationLattice(std::size_t dimension) : dim_(dimension) {}

void RelationLattice::add(const std::vector<std::int64_t>& row)
{
    if (row.size() != dim_) throw Error(Errc::invalid_argument, "relation length does not match the lattice dimension");
    SparseRow s;
    for (std::size_t j = 0; j < dim_; ++j)
        if (row[j] != 0) s.emplace(j, from_i64(row[j]));
    if (s.empty()) return;
    rows_.push_back(std::move(s));
    analyzed_ = false;
}

void RelationLattice::analyze() const
{
    if (analyzed_) return;
    pivots_.clear();
    core_cols_.clear();
    core_h_.clear();
    divisors_.clear();
    det_ = 0;
    full_rank_ = false;

    // Sparse elimination with unit pivots, cheapest fill first.
    constexpr std::size_t kMaxPivotBits = 256;
    std::vector<SparseRow> active = rows_;
    std::vector<bool> eliminated(dim_, false);
    for (;;) {
        std::vector<std::size_t> count(dim_, 0);
        for (const auto& r : active)
            for (const auto& [c, x] : r) ++count[c];
        std::size_t best_row = active.size(), best_col = 0;
        std::size_t best_score = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < active.size(); ++i) {
            const auto& r = active[i];
            bool small = true;
            for (const auto& [c, x] : r)
                if (mpz_sizeinbase(x.get_mpz_t(), 2) > kMaxPivotBits) small = false;
            if (!small) continue;
            for (const auto& [c, x] : r) {
                if (x != 1 && x != -1) continue;
                const std::size_t score = (r.size() - 1) * (count[c] - 1);
                if (score < best_score) best_score = score, best_row = i, best_col = c;
            }
        }
        if (best_row == active.size()) break;

        SparseRow piv = std::move(active[best_row]);
        active.erase(active.begin() + static_cast<long>(best_row));
        if (piv.at(best_col) < 0)
            for (auto& [c, x] : piv) x = -x;
        for (auto& r : active) {
            auto it = r.find(best_col);
            if (it == r.end()) continue;
            const Int f = it->second;
            for (const auto& [c, x] : piv) {
                Int& y = r[c];
                y -= f * x;
                if (y == 0) r.erase(c);
            }
        }
        active.erase(std::remove_if(active.begin(), active.end(), [](const SparseRow& r) { return r.empty(); }),
                     active.end());
        eliminated[best_col] = true;
        pivots_.push_back(Pivot{best_col, std::move(piv)});
    }

    std::vector<std::size_t> where(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        if (!eliminated[j]) {
            where[j] = core_cols_.size();
            core_cols_.push_back(j);
        }
    const std::size_t k = core_cols_.size();
    analyzed_ = true;
    if (k == 0) {
        full_rank_ = true;
        det_ = 1;
        return;
    }
    if (active.size() < k) return;

    Matrix core(active.size(), std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < active.size(); ++i)
        for (const auto& [c, x] : active[i]) core[i][where[c]] = x;

    std::vector<std::size_t> chosen = independent_rows_mod(core, kMersenne61);
    if (chosen.size() < k) chosen = independent_rows_mod(core, kSecondPrime);
    if (chosen.size() < k) return;
    Matrix square;
    for (std::size_t i : chosen) square.push_back(core[i]);
    const Int D = abs(modular_determinant(square));

    core_h_ = hermite_mod(core, k, D);
    det_ = 1;
    for (std::size_t i = 0; i < k; ++i) det_ *= core_h_[i][i];
    divisors_ = smith_divisors(core_h_, det_);
    full_rank_ = true;
}

bool RelationLattice::full_rank() const
{
    analyze();
    return full_rank_;
}

const Int& RelationLattice::determinant() const
{
    if (!full_rank()) throw Error(Errc::rank_deficient, "relation lattice is not of full rank");
    return det_;
}

const std::vector<Int>& RelationLattice::elementary_divisors() const
{
    determinant();
    return divisors_;
}

Int RelationLattice::exponent() const
{
    const auto& d = elementary_divisors();
    return d.empty() ? Int(1) : d.back();
}

const std::vector<std::size_t>& RelationLattice::core_columns() const
{
    determinant();
    return core_cols_;
}

const Matrix& RelationLattice::core_hermite() const
{
    determinant();
    return core_h_;
}

bool RelationLattice::contains(const std::vector<std::int64_t>& v) const
{
    if (v.size() != dim_) throw Error(Errc::invalid_argument, "vector length does not match the lattice dimension");
    determinant();
    std::vector<Int> x(dim_);
    for (std::size_t j = 0; j < dim_; ++j) x[j] = from_i64(v[j]);
    for (const auto& p : pivots_) {
        const Int f = x[p.column];
        if (f == 0) continue;
        for (const auto& [c, e] : p.row) x[c] -= f * e;
    }
    const std::size_t k = core_cols_.size();
    std::vector<Int> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = x[core_cols_[i]];
    for (std::size_t i = 0; i < k; ++i) {
        if (y[i] == 0) continue;
        if (!divides(core_h_[i][i], y[i])) return false;
        const Int q = y[i] / core_h_[i][i];
        combine(y, 1, core_h_[i], Int(-q), i);
    }
    return true;
}

} // namespace simerka
