#include "baudsync/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <limits>
#include <string>

#include "baudsync/error.hpp"

namespace baudsync {

BerResult ber(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits,
              std::size_t skip_symbols, const Constellation& c, bool resolve_conjugation) {
    if (tx_bits.size() != rx_bits.size())
        throw ParameterError("ber: length mismatch (" + std::to_string(tx_bits.size()) + " vs " +
                             std::to_string(rx_bits.size()) + ")");
    const auto k = static_cast<std::size_t>(c.bits_per_symbol());
    if (tx_bits.size() % k != 0)
        throw ParameterError("ber: bit count is not a whole number of symbols");
    const std::size_t n_sym = tx_bits.size() / k;
    if (skip_symbols > n_sym)
        throw ParameterError("ber: skip exceeds sequence length");

    const auto label_at = [&](std::span<const std::uint8_t> bits, std::size_t s) {
        unsigned label = 0;
        for (std::size_t b = 0; b < k; ++b)
            label = (label << 1) | (bits[s * k + b] & 1u);
        return label;
    };

    // per ambiguity: label map rx label -> label after undoing the transform
    BerResult best;
    best.errors = std::numeric_limits<std::size_t>::max();
    const int n_conj = resolve_conjugation ? 2 : 1;
    for (int conj = 0; conj < n_conj; ++conj) {
        for (int q = 0; q < 4; ++q) {
            std::vector<unsigned> undo(static_cast<std::size_t>(c.order()));
            const Complex rot = std::polar(1.0, -q * std::numbers::pi / 2.0);
            for (unsigned l = 0; l < undo.size(); ++l) {
                Complex p = c.point(l) * rot;
                if (conj)
                    p = std::conj(p);
                undo[l] = c.nearest_label(p);
            }
            std::size_t errors = 0;
            for (std::size_t s = skip_symbols; s < n_sym; ++s)
                errors += static_cast<std::size_t>(
                    std::popcount(label_at(tx_bits, s) ^ undo[label_at(rx_bits, s)]));
            if (errors < best.errors) {
                best.errors = errors;
                best.rotation_quadrants = q;
                best.conjugated = conj != 0;
            }
        }
    }
    best.bits = (n_sym - skip_symbols) * k;
    best.ber = best.bits == 0 ? 0.0 : static_cast<double>(best.errors) / static_cast<double>(best.bits);
    return best;
}

double evm(std::span<const Complex> y, const Constellation& c, std::size_t skip_symbols) {
    if (skip_symbols >= y.size())
        throw ParameterError("evm: empty measurement window");
    double err = 0.0;
    for (std::size_t n = skip_symbols; n < y.size(); ++n)
        err += std::norm(y[n] - c.nearest_point(y[n]));
    err /= static_cast<double>(y.size() - skip_symbols);
    return 100.0 * std::sqrt(err / c.mean_power());
}

double residual_isi(std::span<const Complex> w) {
    if (w.size() % 2 == 0)
        throw ParameterError("residual_isi: tap count must be odd");
    const std::size_t c = w.size() / 2;
    double total = 0.0;
    double off = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        total += std::norm(w[k]);
        if (k != c)
            off += std::norm(w[k]);
    }
    if (total == 0.0)
        throw ParameterError("residual_isi: all-zero tap vector");
    return off / total;
}

OpCount op_count(TedKind kind, int p) {
    switch (kind) {
    case TedKind::Gardner: return {2, 3};
    case TedKind::Abs: return {1, 2};
    case TedKind::SignMM: return {2, 1};
    case TedKind::ModifiedAbs: return {2, 1};
    case TedKind::CmaFull: return {0, p - 2};
    case TedKind::CmaModified: return {0, 1};
    // real and imaginary sums over p-1 taps each
    case TedKind::CmaComplex: return {0, 2 * p - 3};
    }
    return {};
}

std::size_t convergence_symbol(std::span<const double> isi_trajectory, std::size_t hold) {
    const std::size_t n = isi_trajectory.size();
    if (n == 0)
        return 0;
    const double final_value = isi_trajectory.back();
    const double band = std::max(0.5 * final_value, kConvergenceFloor);
    // run = number of consecutive in-band values starting at s
    std::size_t run = 0;
    std::size_t first = n;
    for (std::size_t s = n; s-- > 0;) {
        run = std::abs(isi_trajectory[s] - final_value) <= band ? run + 1 : 0;
        if (run >= std::min(hold, n - s))
            first = s;
    }
    return first;
}

std::size_t align_lag(std::span<const Complex> rx, std::span<const Complex> tx,
                      std::size_t max_lag, std::size_t skip) {
    std::size_t best_lag = 0;
    double best = -1.0;
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        Complex acc{0.0, 0.0};
        for (std::size_t n = std::max(skip, lag); n < rx.size() && n - lag < tx.size(); ++n)
            acc += rx[n] * std::conj(tx[n - lag]);
        const double m = std::abs(acc);
        if (m > best) {
            best = m;
            best_lag = lag;
        }
    }
    return best_lag;
}

ScurveSummary summarize_scurve(std::span<const ScurvePoint> curve) {
    ScurveSummary out;
    out.zero_crossing = std::numeric_limits<double>::quiet_NaN();
    out.slope = std::numeric_limits<double>::quiet_NaN();
    if (curve.size() < 2)
        return out;

    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const auto& a = curve[i];
        const auto& b = curve[i + 1];
        const bool brackets = (a.mean_eps <= 0.0 && b.mean_eps >= 0.0) ||
                              (a.mean_eps >= 0.0 && b.mean_eps <= 0.0);
        if (!brackets || a.tau == b.tau)
            continue;
        const double slope = (b.mean_eps - a.mean_eps) / (b.tau - a.tau);
        const double cross = slope == 0.0 ? 0.5 * (a.tau + b.tau) : a.tau - a.mean_eps / slope;
        if (std::abs(cross) < best_dist) {
            best_dist = std::abs(cross);
            out.zero_crossing = cross;
            out.slope = slope;
        }
    }
    if (std::isnan(out.zero_crossing)) {
        // no sign change: slope around the grid point closest to 0
        std::size_t i = 0;
        for (std::size_t k = 1; k < curve.size(); ++k)
            if (std::abs(curve[k].tau) < std::abs(curve[i].tau))
                i = k;
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 < curve.size() ? i + 1 : i;
        if (hi > lo)
            out.slope = (curve[hi].mean_eps - curve[lo].mean_eps) / (curve[hi].tau - curve[lo].tau);
    }
    return out;
}

}  // namespace baudsync
