#pragma once
// Exact binary stabilizer-tableau simulator (destabilizer/stabilizer form,
// bit-packed rows) used as the verification oracle for schedule correctness.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace louvre {

struct MeasureResult {
    int outcome = 0;       // 0 = +1 eigenvalue, 1 = -1
    bool deterministic = false;
};

class Tableau {
public:
    explicit Tableau(int n_qubits)
        : n_(n_qubits), words_((n_qubits + 63) / 64),
          x_(std::size_t(2 * n_qubits) * words_, 0),
          z_(std::size_t(2 * n_qubits) * words_, 0),
          phase_(std::size_t(2 * n_qubits), 0) {
        for (int i = 0; i < n_; ++i) {
            set_bit(x_, i, i);           // destabilizer i = X_i
            set_bit(z_, n_ + i, i);      // stabilizer i  = Z_i
        }
    }

    int n_qubits() const { return n_; }

    void h(int q) {
        for (int r = 0; r < 2 * n_; ++r) {
            bool xb = get_bit(x_, r, q), zb = get_bit(z_, r, q);
            if (xb && zb) phase_[std::size_t(r)] ^= 1;
            put_bit(x_, r, q, zb);
            put_bit(z_, r, q, xb);
        }
    }

    void cx(int c, int t) {
        for (int r = 0; r < 2 * n_; ++r) {
            bool xc = get_bit(x_, r, c), zc = get_bit(z_, r, c);
            bool xt = get_bit(x_, r, t), zt = get_bit(z_, r, t);
            if (xc && zt && (xt == zc)) phase_[std::size_t(r)] ^= 1;
            put_bit(x_, r, t, xt ^ xc);
            put_bit(z_, r, c, zc ^ zt);
        }
    }

    void swap_qubits(int a, int b) {
        for (int r = 0; r < 2 * n_; ++r) {
            bool xa = get_bit(x_, r, a), xb = get_bit(x_, r, b);
            put_bit(x_, r, a, xb);
            put_bit(x_, r, b, xa);
            bool za = get_bit(z_, r, a), zb = get_bit(z_, r, b);
            put_bit(z_, r, a, zb);
            put_bit(z_, r, b, za);
        }
    }

    void cxswap(int c, int t) {
        cx(c, t);
        swap_qubits(c, t);
    }

    // Pauli injections (frame errors).
    void pauli_x(int q) {
        for (int r = 0; r < 2 * n_; ++r)
            if (get_bit(z_, r, q)) phase_[std::size_t(r)] ^= 1;
    }
    void pauli_z(int q) {
        for (int r = 0; r < 2 * n_; ++r)
            if (get_bit(x_, r, q)) phase_[std::size_t(r)] ^= 1;
    }

    // Z-basis measurement; a genuinely random outcome is resolved to
    // `forced` (verification wants reproducible +1 projections).
    MeasureResult measure(int q, int forced = 0) {
        int p = -1;
        for (int r = n_; r < 2 * n_; ++r)
            if (get_bit(x_, r, q)) { p = r; break; }
        if (p >= 0) {
            for (int r = 0; r < 2 * n_; ++r)
                if (r != p && get_bit(x_, r, q)) rowsum(r, p);
            copy_row(p - n_, p);
            zero_row(p);
            put_bit(z_, p, q, true);
            phase_[std::size_t(p)] = std::uint8_t(forced);
            return {forced, false};
        }
        // Deterministic: accumulate stabilizer rows whose destabilizer
        // partner anticommutes with Z_q.
        scratch_clear();
        for (int i = 0; i < n_; ++i)
            if (get_bit(x_, i, q)) scratch_rowsum(i + n_);
        return {scratch_phase_, true};
    }

    MeasureResult measure_x(int q, int forced = 0) {
        h(q);
        MeasureResult r = measure(q, forced);
        h(q);
        return r;
    }

    void reset(int q) {  // to |0>
        MeasureResult r = measure(q, 0);
        if (r.outcome) pauli_x(q);
    }
    void reset_x(int q) {  // to |+>
        MeasureResult r = measure_x(q, 0);
        if (r.outcome) pauli_z(q);
    }

private:
    int n_, words_;
    std::vector<std::uint64_t> x_, z_;
    std::vector<std::uint8_t> phase_;
    std::vector<std::uint64_t> scratch_x_, scratch_z_;
    int scratch_phase_ = 0;

    bool get_bit(const std::vector<std::uint64_t>& v, int row, int q) const {
        return (v[std::size_t(row) * words_ + std::size_t(q >> 6)] >> (q & 63)) & 1;
    }
    void set_bit(std::vector<std::uint64_t>& v, int row, int q) {
        v[std::size_t(row) * words_ + std::size_t(q >> 6)] |= std::uint64_t(1) << (q & 63);
    }
    void put_bit(std::vector<std::uint64_t>& v, int row, int q, bool b) {
        std::uint64_t& w = v[std::size_t(row) * words_ + std::size_t(q >> 6)];
        std::uint64_t m = std::uint64_t(1) << (q & 63);
        w = b ? (w | m) : (w & ~m);
    }
    void copy_row(int dst, int src) {
        for (int w = 0; w < words_; ++w) {
            x_[std::size_t(dst) * words_ + w] = x_[std::size_t(src) * words_ + w];
            z_[std::size_t(dst) * words_ + w] = z_[std::size_t(src) * words_ + w];
        }
        phase_[std::size_t(dst)] = phase_[std::size_t(src)];
    }
    void zero_row(int row) {
        for (int w = 0; w < words_; ++w) {
            x_[std::size_t(row) * words_ + w] = 0;
            z_[std::size_t(row) * words_ + w] = 0;
        }
        phase_[std::size_t(row)] = 0;
    }

    // Phase bookkeeping for multiplying Pauli row i into row h, mod 4.
    static int g_sum(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
        std::uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) | (~x1 & z1 & x2 & z2);
        return __builtin_popcountll(plus) - __builtin_popcountll(minus);
    }

    void rowsum(int h, int i) {
        int acc = 2 * phase_[std::size_t(h)] + 2 * phase_[std::size_t(i)];
        for (int w = 0; w < words_; ++w) {
            std::size_t hw = std::size_t(h) * words_ + w, iw = std::size_t(i) * words_ + w;
            acc += g_sum(x_[iw], z_[iw], x_[hw], z_[hw]);
            x_[hw] ^= x_[iw];
            z_[hw] ^= z_[iw];
        }
        acc %= 4;
        if (acc < 0) acc += 4;
        // Destabilizer rows may absorb an anticommuting factor; their phases
        // are never read, so only stabilizer rows insist on a real sign.
        if (h >= n_ && acc != 0 && acc != 2)
            throw std::logic_error("tableau rowsum produced imaginary phase");
        phase_[std::size_t(h)] = std::uint8_t((acc >> 1) & 1);
    }

    void scratch_clear() {
        scratch_x_.assign(std::size_t(words_), 0);
        scratch_z_.assign(std::size_t(words_), 0);
        scratch_phase_ = 0;
    }
    void scratch_rowsum(int i) {
        int acc = 2 * scratch_phase_ + 2 * phase_[std::size_t(i)];
        for (int w = 0; w < words_; ++w) {
            std::size_t iw = std::size_t(i) * words_ + w;
            acc += g_sum(x_[iw], z_[iw], scratch_x_[std::size_t(w)], scratch_z_[std::size_t(w)]);
            scratch_x_[std::size_t(w)] ^= x_[iw];
            scratch_z_[std::size_t(w)] ^= z_[iw];
        }
        acc %= 4;
        if (acc < 0) acc += 4;
        if (acc != 0 && acc != 2) throw std::logic_error("tableau rowsum produced imaginary phase");
        scratch_phase_ = acc / 2;
    }
};

}  // namespace louvre
