#include "radialspec/spectral_geometry.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace radialspec {

SpectralValue SpectralValue::rational(const Rational& q) { return {q, Complex(to_double(q), 0.0)}; }

SpectralValue SpectralValue::complex(Complex z) { return {std::nullopt, z}; }

SpectralValue SpectralValue::operator+(const SpectralValue& rhs) const
{
    if (exact && rhs.exact) return rational(*exact + *rhs.exact);
    return complex(value + rhs.value);
}

std::string SpectralValue::str() const
{
    if (exact) return to_string(*exact);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", value.real(), value.imag());
    return buf;
}

namespace {

const std::string& point_key()
{
    static const std::string k = canonical_key(RootSystem::point());
    return k;
}

bool same_value(const SpectralValue& a, const SpectralValue& b, double tol)
{
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return std::abs(a.value - b.value) <= tol * std::max(1.0, std::abs(a.value));
}

} // namespace

PointSpectrumOverlay::PointSpectrumOverlay() { entries_[point_key()] = {SpectralValue::rational(0)}; }

void PointSpectrumOverlay::inject(const RootSystem& system, std::vector<SpectralValue> values)
{
    inject_key(canonical_key(system), std::move(values));
}

void PointSpectrumOverlay::inject_key(const std::string& key, std::vector<SpectralValue> values)
{
    auto& slot = entries_[key];
    for (auto& v : values) {
        bool dup = false;
        for (const auto& w : slot) dup = dup || same_value(v, w, 0.0);
        if (!dup) slot.push_back(std::move(v));
    }
    if (key == point_key()) {
        bool has_zero = false;
        for (const auto& w : slot) has_zero = has_zero || (w.exact && sgn(*w.exact) == 0);
        if (!has_zero) slot.insert(slot.begin(), SpectralValue::rational(0));
    }
}

const std::vector<SpectralValue>& PointSpectrumOverlay::values_for(const RootSystem& system) const
{
    static const std::vector<SpectralValue> none;
    auto it = entries_.find(canonical_key(system));
    return it == entries_.end() ? none : it->second;
}

std::vector<Complex> ThresholdSet::complex_values() const
{
    std::vector<Complex> out;
    for (const auto& t : values) out.push_back(t.value.value);
    return out;
}

namespace {

struct RawThreshold {
    SpectralValue value;
    ThresholdChain chain;
};

class ThresholdRecursion {
public:
    ThresholdRecursion(const PointSpectrumOverlay& overlay, const Config& config)
        : overlay_(overlay), config_(config)
    {
    }

    std::vector<RawThreshold> run(const RootSystem& input)
    {
        const RootSystem rs = essential_part(input);
        const std::string memo_key = to_key(rs);
        if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

        std::vector<RawThreshold> out;
        if (rs.rank() > 0) {
            const WallLattice lat = compute_lattice(rs);
            for (std::size_t b = 0; b < lat.star(); ++b) {
                if (!is_face_index(rs, lat, b)) continue;
                const SubsystemData s = subsystem(rs, lat, b);
                const SpectralValue base = SpectralValue::rational(s.rho_diff_norm2);
                const std::string key = canonical_key(s.system);
                used_.insert(key);
                if (auto it = overlay_.entries().find(key); it != overlay_.entries().end())
                    for (const auto& g : it->second) out.push_back({base + g, {{b}, g}});
                for (const auto& sub : run(s.system)) {
                    ThresholdChain c = sub.chain;
                    c.path.insert(c.path.begin(), b);
                    out.push_back({base + sub.value, std::move(c)});
                }
            }
        }
        memo_.emplace(memo_key, out);
        return out;
    }

    const std::set<std::string>& used() const { return used_; }

private:
    static std::string to_key(const RootSystem& rs)
    {
        // exact identity of the system, including its coordinates
        std::string k = to_string(rs.normalization()) + "|";
        for (std::size_t i = 0; i < rs.dim(); ++i)
            for (std::size_t j = 0; j < rs.dim(); ++j) k += to_string(rs.space().gram()(i, j)) + ",";
        for (const auto& r : rs.roots()) {
            k += "[";
            for (const auto& x : r.coords) k += to_string(x) + ",";
            k += std::to_string(r.mult) + "]";
        }
        return k;
    }

    const PointSpectrumOverlay& overlay_;
    const Config& config_;
    std::map<std::string, std::vector<RawThreshold>> memo_;
    std::set<std::string> used_;
};

bool value_less(const SpectralValue& a, const SpectralValue& b)
{
    if (a.exact && b.exact) return *a.exact < *b.exact;
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
}

} // namespace

ThresholdSet thresholds(const RootSystem& rs, const PointSpectrumOverlay& overlay, const Config& config)
{
    if (rs.rank() == 0 && rs.dim() > 0) throw DomainError("thresholds need at least one root");
    ThresholdRecursion rec(overlay, config);
    auto raw = rec.run(rs);

    ThresholdSet out;
    for (auto& r : raw) {
        auto it = std::find_if(out.values.begin(), out.values.end(), [&](const Threshold& t) {
            return same_value(t.value, r.value, config.threshold_tolerance);
        });
        if (it == out.values.end()) out.values.push_back({r.value, {std::move(r.chain)}});
        else it->chains.push_back(std::move(r.chain));
    }
    std::stable_sort(out.values.begin(), out.values.end(),
                     [](const Threshold& a, const Threshold& b) { return value_less(a.value, b.value); });
    for (auto& t : out.values)
        std::sort(t.chains.begin(), t.chains.end(),
                  [](const ThresholdChain& a, const ThresholdChain& b) { return a.path < b.path; });

    for (const auto& [key, vals] : overlay.entries()) {
        if (key == point_key() || rec.used().count(key)) continue;
        out.warnings.push_back("overlay key matches no subsystem and was ignored: " + key);
    }
    return out;
}

void check_scaling(Complex theta)
{
    if (!(std::abs(theta.imag()) < std::numbers::pi / 2) || !std::isfinite(theta.real()))
        throw DomainError("scaling parameter needs |Im theta| < pi/2");
}

std::vector<SpectralRay> rays_from_thresholds(const ThresholdSet& t, Complex theta)
{
    check_scaling(theta);
    std::vector<SpectralRay> rays;
    for (const auto& v : t.values) rays.push_back({v.value.value, -2.0 * theta.imag()});
    std::stable_sort(rays.begin(), rays.end(), [](const SpectralRay& a, const SpectralRay& b) {
        if (a.base.real() != b.base.real()) return a.base.real() < b.base.real();
        return a.base.imag() < b.base.imag();
    });
    return rays;
}

std::vector<SpectralRay> ess_spectrum_rays(const RootSystem& rs, Complex theta, const PointSpectrumOverlay& overlay,
                                           const Config& config)
{
    check_scaling(theta);
    return rays_from_thresholds(thresholds(rs, overlay, config), theta);
}

SpectralRay spec_tangential(const RootSystem& rs, const WallLattice& lat, std::size_t b, Complex theta)
{
    check_scaling(theta);
    auto s = subsystem(rs, lat, b);
    return {Complex(to_double(s.rho_diff_norm2), 0.0), -2.0 * theta.imag()};
}

RiemannAtlas build_atlas(const ThresholdSet& t, Side side, double tolerance)
{
    if (t.values.empty()) throw DomainError("atlas needs at least one threshold");
    RiemannAtlas a;
    a.thresholds = t.complex_values();
    a.lambda0 = a.thresholds.front().real();
    for (const auto& z : a.thresholds) a.lambda0 = std::min(a.lambda0, z.real());
    a.side = side;
    a.tolerance = tolerance;
    return a;
}

std::string to_string(SheetClass c)
{
    switch (c) {
    case SheetClass::physical: return "physical";
    case SheetClass::continued_in_chart: return "continued_in_chart";
    case SheetClass::on_cut: return "on_cut";
    case SheetClass::outside_chart: return "outside_chart";
    }
    return "outside_chart";
}

namespace {

void check_beta(double beta)
{
    if (!(beta >= 0.0 && beta < std::numbers::pi / 2)) throw ParameterError("chart parameter needs 0 <= beta < pi/2");
}

// distance from z to the ray base + e^{i phi} [0, inf)
double ray_distance(Complex z, Complex base, double phi)
{
    Complex d = (z - base) * std::polar(1.0, -phi);
    return d.real() >= 0 ? std::abs(d.imag()) : std::abs(d);
}

Complex oriented(Complex lambda, const RiemannAtlas& a) { return a.side == Side::upper ? std::conj(lambda) : lambda; }

} // namespace

SheetClass sheet_classify(Complex lambda, double beta, const RiemannAtlas& atlas)
{
    check_beta(beta);
    lambda = oriented(lambda, atlas);
    const double eps = atlas.tolerance * (1.0 + std::abs(lambda));
    for (const auto& g : atlas.thresholds) {
        if (std::abs(lambda - g) <= eps) return SheetClass::on_cut;
        if (ray_distance(lambda, g, 2.0 * beta) <= eps) return SheetClass::on_cut;
    }
    const double phi = std::arg(lambda - atlas.lambda0);
    if (phi > -std::numbers::pi && phi < 0.0) return SheetClass::physical;
    if (phi >= 0.0 && phi < 2.0 * beta) return SheetClass::continued_in_chart;
    return SheetClass::outside_chart;
}

std::optional<SheetPoint> sheet_point(Complex lambda, double beta, const RiemannAtlas& atlas)
{
    auto c = sheet_classify(lambda, beta, atlas);
    if (c != SheetClass::physical && c != SheetClass::continued_in_chart) return std::nullopt;
    Complex d = oriented(lambda, atlas) - atlas.lambda0;
    Complex z = std::polar(std::sqrt(std::abs(d)), std::arg(d) / 2.0);
    if (atlas.side == Side::upper) z = std::conj(z);
    return SheetPoint{z, beta};
}

bool identify_points(Complex lambda, double beta, double gamma, const RiemannAtlas& atlas)
{
    check_beta(beta);
    if (!(gamma >= 0.0 && gamma <= beta)) throw ParameterError("identify_points needs 0 <= gamma <= beta");
    lambda = oriented(lambda, atlas);
    const double eps = atlas.tolerance * (1.0 + std::abs(lambda));
    for (const auto& g : atlas.thresholds) {
        Complex d = lambda - g;
        if (std::abs(d) <= eps) return false;
        double psi = std::arg(d);
        if (psi < 0) psi += 2.0 * std::numbers::pi;
        // angular slack equivalent to the distance tolerance
        const double slack = eps / std::abs(d);
        if (psi >= 2.0 * gamma - slack && psi <= 2.0 * beta + slack) return false;
    }
    return true;
}

std::vector<Complex> ramification_points(const RiemannAtlas& atlas, double beta)
{
    check_beta(beta);
    std::vector<Complex> out = atlas.thresholds;
    if (atlas.side == Side::upper)
        for (auto& z : out) z = std::conj(z);
    return out;
}

} // namespace radialspec
