#include "baudsync/sync.hpp"

#include <cmath>
#include <string>

#include "baudsync/error.hpp"

namespace baudsync {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

std::size_t center_index(std::span<const Complex> w) {
    if (w.size() % 2 == 0)
        throw ParameterError("CMA tap vector length must be odd, got " + std::to_string(w.size()));
    return w.size() / 2;
}

}  // namespace

std::string_view ted_name(TedKind kind) {
    switch (kind) {
    case TedKind::CmaFull: return "cma_full";
    case TedKind::CmaComplex: return "cma_complex";
    case TedKind::CmaModified: return "cma_modified";
    case TedKind::Gardner: return "gardner";
    case TedKind::Abs: return "abs";
    case TedKind::SignMM: return "sign_mm";
    case TedKind::ModifiedAbs: return "modified_abs";
    }
    return "unknown";
}

TedKind parse_ted(std::string_view name) {
    for (TedKind k : kAllTeds)
        if (ted_name(k) == name)
            return k;
    throw ParameterError("unknown TED '" + std::string(name) + "'");
}

double default_alpha_c(TedKind kind) { return ted_uses_taps(kind) ? 1.3e-4 : 1e-2; }

Complex farrow_interp(std::span<const Complex, 4> history, double mu) {
    if (!(mu >= 0.0 && mu < 1.0))
        throw ParameterError("farrow_interp: mu must lie in [0, 1), got " + std::to_string(mu));
    const Complex& xm1 = history[0];
    const Complex& x0 = history[1];
    const Complex& x1 = history[2];
    const Complex& x2 = history[3];
    const Complex v3 = (x2 - xm1) / 6.0 + (x0 - x1) / 2.0;
    const Complex v2 = (xm1 + x1) / 2.0 - x0;
    const Complex v1 = x1 - xm1 / 3.0 - x0 / 2.0 - x2 / 6.0;
    return ((v3 * mu + v2) * mu + v1) * mu + x0;
}

TimingLoopState loop_filter_update(TimingLoopState state, double eps) {
    state.eps_prev = eps;
    state.base_index += 2;
    state.mu += state.alpha_c * state.eps_prev;
    while (state.mu >= 1.0) {
        state.mu -= 1.0;
        ++state.base_index;
        ++state.skips;
    }
    while (state.mu < 0.0) {
        state.mu += 1.0;
        --state.base_index;
        ++state.stalls;
    }
    return state;
}

double ted_cma_full(std::span<const Complex> w) {
    const std::size_t c = center_index(w);
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != c)
            acc += w[k].real();
    return -acc;
}

double ted_cma_complex(std::span<const Complex> w) {
    const std::size_t c = center_index(w);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != c) {
            re += w[k].real();
            im += w[k].imag();
        }
    return -(re + im);
}

double ted_cma_modified(std::span<const Complex> w) {
    const std::size_t c = center_index(w);
    if (w.size() < 3)
        throw ParameterError("modified CMA TED needs at least 3 taps");
    return -(w[c - 1].real() + w[c + 1].real());
}

double ted_gardner(Complex y_prev, Complex y_mid, Complex y_curr) {
    return ((y_prev - y_curr) * std::conj(y_mid)).real();
}

double ted_sign_mm(Complex y_prev, Complex y_curr) {
    const double i = sgn(y_prev.real()) * y_curr.real() - sgn(y_curr.real()) * y_prev.real();
    const double q = sgn(y_prev.imag()) * y_curr.imag() - sgn(y_curr.imag()) * y_prev.imag();
    return i + q;
}

double ted_abs(Complex y_prev, Complex y_mid, Complex y_curr) {
    const double i = std::abs(y_prev.real() + y_mid.real()) - std::abs(y_curr.real() + y_mid.real());
    const double q = std::abs(y_prev.imag() + y_mid.imag()) - std::abs(y_curr.imag() + y_mid.imag());
    return i + q;
}

double ted_modified_abs(Complex y_prev, Complex y_mid, Complex y_curr) {
    return sgn(y_prev.real() - y_curr.real()) * y_mid.real() +
           sgn(y_prev.imag() - y_curr.imag()) * y_mid.imag();
}

double ted_baseline(TedKind kind, Complex y_prev, Complex y_mid, Complex y_curr) {
    switch (kind) {
    case TedKind::Gardner: return ted_gardner(y_prev, y_mid, y_curr);
    case TedKind::Abs: return ted_abs(y_prev, y_mid, y_curr);
    case TedKind::SignMM: return ted_sign_mm(y_prev, y_curr);
    case TedKind::ModifiedAbs: return ted_modified_abs(y_prev, y_mid, y_curr);
    default: break;
    }
    throw ParameterError("ted_baseline: '" + std::string(ted_name(kind)) + "' reads equalizer taps");
}

double ted_from_taps(TedKind kind, std::span<const Complex> w) {
    switch (kind) {
    case TedKind::CmaFull: return ted_cma_full(w);
    case TedKind::CmaComplex: return ted_cma_complex(w);
    case TedKind::CmaModified: return ted_cma_modified(w);
    default: break;
    }
    throw ParameterError("ted_from_taps: '" + std::string(ted_name(kind)) + "' reads samples");
}

ClockRecovery::ClockRecovery(TedKind ted, double alpha_c, std::size_t gate_symbols)
    : ted_(ted), gate_symbols_(gate_symbols) {
    state_.alpha_c = alpha_c;
}

std::optional<SyncOutput> ClockRecovery::step(std::span<const Complex> input,
                                              std::span<const Complex> eq_taps) {
    const std::int64_t base = state_.base_index;
    if (base + 2 >= static_cast<std::int64_t>(input.size()))
        return std::nullopt;

    const auto at = [&](std::int64_t n) {
        return n < 0 ? Complex{} : input[static_cast<std::size_t>(n)];
    };
    const std::array<Complex, 4> sym_hist{at(base - 1), at(base), at(base + 1), at(base + 2)};
    const std::array<Complex, 4> mid_hist{at(base - 2), at(base - 1), at(base), at(base + 1)};

    SyncOutput out;
    out.mu = state_.mu;
    out.base = base;
    out.symbol = farrow_interp(sym_hist, state_.mu);
    out.mid = farrow_interp(mid_hist, state_.mu);

    if (ted_uses_taps(ted_)) {
        out.eps = symbols_ < gate_symbols_ ? 0.0 : ted_from_taps(ted_, eq_taps);
    } else {
        out.eps = ted_baseline(ted_, prev_symbol_, out.mid, out.symbol);
    }

    state_ = loop_filter_update(state_, out.eps);
    prev_symbol_ = out.symbol;
    ++symbols_;
    return out;
}

}  // namespace baudsync
