#include "iss/rng.hpp"

#include <cmath>
#include <mutex>

#include "iss/errors.hpp"

namespace iss {
namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// 256-layer ziggurat tables for the standard normal. X[i] is the right edge
// of rectangle i, Y[i] its bottom; rectangle 0 is the base strip whose tail
// mass beyond r is handled separately. All rectangles have equal area v.
constexpr int kLayers = 256;
constexpr double kR = 3.6541528853610088;
double zig_x[kLayers + 1];
double zig_y[kLayers + 1];
std::once_flag zig_once;

inline double fgauss(double x) { return std::exp(-0.5 * x * x); }

void zig_setup() {
    const double tail = std::sqrt(std::acos(-1.0) / 2) * std::erfc(kR / std::sqrt(2.0));
    const double v = kR * fgauss(kR) + tail;
    zig_x[0] = v / fgauss(kR);
    zig_x[1] = kR;
    zig_y[0] = 0.0;
    zig_y[1] = fgauss(kR);
    for (int i = 2; i <= kLayers - 1; ++i) {
        zig_y[i] = zig_y[i - 1] + v / zig_x[i - 1];
        zig_x[i] = std::sqrt(-2.0 * std::log(zig_y[i]));
    }
    zig_x[kLayers] = 0.0;
    zig_y[kLayers] = 1.0;
    // The recursion must close at the top of the density; kR above is the
    // constant that makes it do so.
    const double top = zig_y[kLayers - 1] + v / zig_x[kLayers - 1];
    if (std::abs(top - 1.0) > 1e-7)
        throw Error("ziggurat table closure failed");
}

} // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id) : ctr_(0) {
    const std::uint64_t a = mix64(seed + kGolden);
    const std::uint64_t b = mix64(stream_id + 0xbb67ae8584caa73bULL);
    key_ = mix64(a ^ (b + kGolden + (a << 6) + (a >> 2)));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(mix64(seed + kGolden) ^ (salt + 0x452821e638d01377ULL));
}

std::uint64_t Stream::next_u64() {
    ctr_ += 1;
    return mix64(key_ + ctr_ * kGolden);
}

double Stream::uniform01() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::normal() {
    std::call_once(zig_once, zig_setup);
    for (;;) {
        const std::uint64_t u = next_u64();
        const int i = int(u & 0xff);
        const double sign = (u & 0x100) ? -1.0 : 1.0;
        const double ux = double(u >> 12) * 0x1.0p-52;
        const double x = ux * zig_x[i];
        if (x < zig_x[i + 1])
            return sign * x;
        if (i == 0) {
            // Tail sample beyond r.
            for (;;) {
                const double e1 = -std::log(1.0 - uniform01()) / kR;
                const double e2 = -std::log(1.0 - uniform01());
                if (e1 * e1 < 2.0 * e2)
                    return sign * (kR + e1);
            }
        }
        const double y = zig_y[i] + uniform01() * (zig_y[i + 1] - zig_y[i]);
        if (y < fgauss(x))
            return sign * x;
    }
}

double Stream::normal_icdf() {
    // (0,1) open interval: shift the 53-bit grid by half a step.
    const double p = (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return normal_quantile(p);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw BadParameter("normal_quantile requires p in (0,1)");
    static const double A[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e+2,
        1.9715909503065514427e+3, 1.3731693765509461125e+4,
        4.5921953931549871457e+4, 6.7265770927008700853e+4,
        3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static const double B[8] = {
        1.0,                      4.2313330701600911252e+1,
        6.8718700749205790830e+2, 5.3941960214247511077e+3,
        2.1213794301586595867e+4, 3.9307895800092710610e+4,
        2.8729085735721942674e+4, 5.2264952788528545610e+3};
    static const double C[8] = {
        1.42343711074968357734e0,  4.63033784615654529590e0,
        5.76949722146069140550e0,  3.64784832476320460504e0,
        1.27045825245236838258e0,  2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double D[8] = {
        1.0,                       2.05319162663775882187e0,
        1.67638483018380384940e0,  6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double E[8] = {
        6.65790464350110377720e0,  5.46378491116411436990e0,
        1.78482653991729133580e0,  2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double F[8] = {
        1.0,                       5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};
    auto poly = [](const double* c, double x) {
        double s = c[7];
        for (int i = 6; i >= 0; --i)
            s = s * x + c[i];
        return s;
    };
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(A, r) / poly(B, r);
    }
    double r = (q < 0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = poly(C, r) / poly(D, r);
    } else {
        r -= 5.0;
        val = poly(E, r) / poly(F, r);
    }
    return (q < 0) ? -val : val;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

} // namespace iss
