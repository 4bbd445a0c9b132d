#pragma once

#include "radialspec/config.hpp"
#include "radialspec/rational.hpp"
#include "radialspec/root_system.hpp"
#include "radialspec/wall_lattice.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radialspec {

using Complex = std::complex<double>;

/// A spectral value that stays exact while it is rational.
struct SpectralValue {
    std::optional<Rational> exact;
    Complex value;

    static SpectralValue rational(const Rational& q);
    static SpectralValue complex(Complex z);

    SpectralValue operator+(const SpectralValue& rhs) const;
    std::string str() const;  ///< "p/q" when exact, otherwise "re+imi" with 17 digits
};

/// Injected point spectra of lower-rank subsystems, keyed by canonical_key().
/// The rank-0 system always carries {0}.
class PointSpectrumOverlay {
public:
    PointSpectrumOverlay();

    void inject(const RootSystem& system, std::vector<SpectralValue> values);
    void inject_key(const std::string& key, std::vector<SpectralValue> values);

    /// Values for `system`; empty unless injected (except the rank-0 entry).
    const std::vector<SpectralValue>& values_for(const RootSystem& system) const;
    const std::map<std::string, std::vector<SpectralValue>>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::vector<SpectralValue>> entries_;
};

/// One way a threshold arises: `path` lists lattice indices chosen at each
/// level of the recursion; the last system on the path supplied a point
/// eigenvalue (`point_value`).
struct ThresholdChain {
    std::vector<std::size_t> path;
    SpectralValue point_value;
};

struct Threshold {
    SpectralValue value;
    std::vector<ThresholdChain> chains;
};

struct ThresholdSet {
    std::vector<Threshold> values;  ///< sorted by real part, then imaginary part
    std::vector<std::string> warnings;

    std::vector<Complex> complex_values() const;
};

/// T(rs) = union over chamber-face indices b != * of
///   { |rho - rho_b|^2 + g : g in P(Sigma^b) or T(Sigma^b) }.
/// A system whose roots do not span is reduced to the span of its roots.
/// Overlay keys never reached by the recursion produce a warning.
ThresholdSet thresholds(const RootSystem& rs, const PointSpectrumOverlay& overlay = {},
                        const Config& config = {});

struct SpectralRay {
    Complex base;
    double angle = 0.0;  ///< radians; the ray is base + e^{i angle} [0, inf)
};

/// DomainError unless |Im theta| < pi/2.
void check_scaling(Complex theta);

/// One ray per threshold, angle -2 Im theta, sorted by base.
std::vector<SpectralRay> ess_spectrum_rays(const RootSystem& rs, Complex theta,
                                           const PointSpectrumOverlay& overlay = {}, const Config& config = {});
std::vector<SpectralRay> rays_from_thresholds(const ThresholdSet& t, Complex theta);

/// Spectrum of the tangential operator at b: base |rho - rho_b|^2.
SpectralRay spec_tangential(const RootSystem& rs, const WallLattice& lat, std::size_t b, Complex theta);

/// Which half-plane the continuation comes from. Only the lower one is
/// modelled; the upper one is handled by complex conjugation.
enum class Side { lower, upper };

struct RiemannAtlas {
    double lambda0 = 0.0;              ///< smallest threshold (real part)
    std::vector<Complex> thresholds;
    Side side = Side::lower;
    double tolerance = 1e-9;           ///< cut tests use tolerance * (1 + |lambda|)
};

RiemannAtlas build_atlas(const ThresholdSet& t, Side side = Side::lower, double tolerance = 1e-9);

enum class SheetClass { physical, continued_in_chart, on_cut, outside_chart };
std::string to_string(SheetClass c);

/// Classification of lambda with respect to the chart Y_beta, 0 <= beta < pi/2.
SheetClass sheet_classify(Complex lambda, double beta, const RiemannAtlas& atlas);

/// sqrt(lambda - lambda0) on the chart Y_beta: arg z in (-pi/2, beta).
struct SheetPoint {
    Complex z;
    double beta = 0.0;
    Complex lambda(double lambda0) const { return z * z + lambda0; }
};

/// The chart point over lambda, or nothing when lambda is on a cut or outside.
std::optional<SheetPoint> sheet_point(Complex lambda, double beta, const RiemannAtlas& atlas);

/// Whether the copies of lambda in the charts Y_gamma and Y_beta are the same
/// point: no cut swept for theta in [gamma, beta] passes through lambda.
bool identify_points(Complex lambda, double beta, double gamma, const RiemannAtlas& atlas);

/// Bases of the cuts present for some theta in [0, beta].
std::vector<Complex> ramification_points(const RiemannAtlas& atlas, double beta);

} // namespace radialspec
