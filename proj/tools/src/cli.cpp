#include "radialspec_cli/cli.hpp"

#include "radialspec/config.hpp"
#include "radialspec/errors.hpp"
#include "radialspec/json_io.hpp"
#include "radialspec/numerics/continuation.hpp"
#include "radialspec/numerics/eigencloud.hpp"
#include "radialspec/numerics/kron_resolvent.hpp"
#include "radialspec/numerics/rank1_operator.hpp"
#include "radialspec/radial_operator.hpp"
#include "radialspec/spectral_geometry.hpp"
#include "radialspec/wall_lattice.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace radialspec::cli {

namespace {

std::string num(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << (x == 0.0 ? 0.0 : x);  // no "-0"
    return os.str();
}

Json complex_json(Complex z)
{
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json config_json(const Config& c)
{
    return Json{{"weyl_cap", c.weyl_cap},
                {"sign_rank_cap", c.sign_rank_cap},
                {"cut_tolerance", c.cut_tolerance},
                {"threshold_tolerance", c.threshold_tolerance},
                {"energy_cap", c.energy_cap},
                {"eigencloud_margin", c.eigencloud_margin},
                {"eigencloud_tolerance", c.eigencloud_tolerance},
                {"max_matrix_dim", c.max_matrix_dim}};
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ParameterError("not a number: '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw ParameterError("not a number: '" + text + "'");
    return v;
}

int parse_int(const std::string& name, const std::string& text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(t, &used);
    } catch (const std::exception&) {
        throw ParameterError(name + ": not an integer: '" + text + "'");
    }
    if (used != t.size()) throw ParameterError(name + ": not an integer: '" + text + "'");
    return v;
}

/// One command: the subcommand path, the option echo and the handler.
struct Invocation {
    std::string command;
    CLI::App* app = nullptr;
    std::function<void()> handler;
};

Json option_echo(const CLI::App* app)
{
    Json params = Json::object();
    for (const CLI::Option* opt : app->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name.empty()) continue;
        if (opt->get_items_expected_max() == 0 || opt->get_group() == "Flags") {
            params[name] = opt->count() > 0;
            continue;
        }
        if (opt->count() == 0) {
            const std::string d = opt->get_default_str();
            params[name] = d.empty() ? Json(nullptr) : Json(d);
        } else if (opt->get_expected_max() > 1) {
            params[name] = opt->results();
        } else {
            params[name] = opt->results().back();
        }
    }
    return params;
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    void emit(const Json& result, const std::string& normalization);
    void emit_text(const std::string& text);
    void emit_error(const Error& e);

    RootSystem system() const;
    void setup_rootsys(CLI::App& app);
    void setup_walls(CLI::App& app);
    void setup_thresholds(CLI::App& app);
    void setup_rays(CLI::App& app);
    void setup_sheet(CLI::App& app);
    void setup_radial(CLI::App& app);
    void setup_num(CLI::App& app);

    CLI::Option* add_system(CLI::App* sub)
    {
        return sub->add_option("--system", system_, "root system: JSON file or built-in name (A2, rank1:2, A1xA1)")
            ->required();
    }
    CLI::App* verb(CLI::App* parent, const std::string& name, const std::string& help, std::function<void()> f)
    {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->callback([this, sub, f] {
            inv_.app = sub;
            inv_.handler = f;
            std::string path;
            for (const CLI::App* a = sub; a != nullptr && a->get_parent() != nullptr; a = a->get_parent())
                path = a->get_name() + (path.empty() ? "" : " " + path);
            inv_.command = path;
        });
        return sub;
    }
    std::string format_choice(CLI::App* sub, std::initializer_list<std::string> allowed)
    {
        format_ = *allowed.begin();
        sub->add_option("--format", format_, "output format")->capture_default_str()->check(CLI::IsMember(std::vector<std::string>(allowed)));
        return format_;
    }

    std::ostream& out_;
    std::ostream& err_;
    Invocation inv_;
    Config config_;
    std::string config_path_;

    // option storage, shared by the verbs (only one verb runs)
    std::string system_;
    std::string format_;
    std::string out_path_;
    std::string theta_ = "0";
    std::string side_ = "lower";
    std::vector<std::string> lambdas_;
    std::vector<std::string> thetas_;
    std::string path_;
    std::string point_;
    std::string direction_;
    std::string localize_;
    std::string a_, b_, lambda_;
    double beta_ = 0.0;
    double R_ = 30.0;
    double h_ = 0.01;
    double rmax_ = 5.0;
    int samples_ = 100;
    int m_ = 1;
    int m_continue_ = 2;
    int dim_ = 4;
    int nodes_ = 256;
    int index_ = -1;
    std::uint64_t seed_ = 1;
    bool weighted_ = false;
    bool no_richardson_ = false;
};

RootSystem Runner::system() const
{
    if (std::filesystem::is_regular_file(system_)) return load_root_system(system_);
    try {
        return builtin_system(system_);
    } catch (const ParameterError&) {
        throw ParameterError("--system: '" + system_ + "' is neither a readable file nor a built-in name");
    }
}

void Runner::emit(const Json& result, const std::string& normalization)
{
    Json env;
    env["schema"] = report_schema;
    env["command"] = inv_.command;
    env["params"] = option_echo(inv_.app);
    env["config"] = config_json(config_);
    env["normalization"] = normalization;
    env["result"] = result;
    out_ << env.dump(2) << "\n";
}

void Runner::emit_text(const std::string& text)
{
    out_ << text;
}

void Runner::emit_error(const Error& e)
{
    Json env;
    env["schema"] = report_schema;
    env["command"] = inv_.command;
    env["params"] = inv_.app ? option_echo(inv_.app) : Json::object();
    env["error"] = Json{{"kind", e.kind()}, {"message", e.what()}};
    if (const auto* d = dynamic_cast<const DiscretizationError*>(&e)) env["error"]["node"] = d->node();
    out_ << env.dump(2) << "\n";
    err_ << "error (" << e.kind() << "): " << e.what() << "\n";
}

// --- rootsys ---------------------------------------------------------------

void Runner::setup_rootsys(CLI::App& app)
{
    CLI::App* rs = app.add_subcommand("rootsys", "root system documents");
    rs->require_subcommand(1);

    auto* exp = verb(rs, "export", "write the canonical JSON document of a root system", [this] {
        const Json doc = to_json(system());
        if (out_path_.empty()) {
            out_ << doc.dump(2) << "\n";
        } else {
            std::ofstream f(out_path_);
            if (!f) throw ParameterError("--out: cannot write " + out_path_);
            f << doc.dump(2) << "\n";
        }
    });
    add_system(exp);
    exp->add_option("--out", out_path_, "output file (default stdout)");

    auto* imp = verb(rs, "import", "read a JSON document and print it in canonical form", [this] {
        if (!std::filesystem::is_regular_file(system_)) throw ParameterError("--system: no such file " + system_);
        out_ << to_json(load_root_system(system_)).dump(2) << "\n";
    });
    add_system(imp);

    auto* show = verb(rs, "show", "summary of a root system", [this] {
        const RootSystem r = system();
        Json res;
        res["type"] = type_label(r);
        res["dim"] = r.dim();
        res["rank"] = r.rank();
        res["positive_roots"] = r.positive_count();
        res["rho"] = vector_json(rho(r));
        res["rho_norm2"] = to_string(rho_norm2(r));
        res["weyl_order"] = weyl_group(r, config_.weyl_cap).size();
        res["key"] = canonical_key(r);
        emit(res, to_string(r.normalization()));
    });
    add_system(show);
}

// --- walls / subsystems ----------------------------------------------------

namespace {

void poset_lines(const WallLattice& lat, std::size_t b, int depth, std::vector<bool>& seen, std::ostringstream& os)
{
    os << std::string(static_cast<std::size_t>(2 * depth), ' ') << "[" << b << "] dim " << lat.dim(b);
    if (seen[b]) {
        os << " ^\n";
        return;
    }
    seen[b] = true;
    os << "\n";
    // covers: contained flats of dimension exactly one less
    for (std::size_t c : lat.contains(b))
        if (lat.dim(c) + 1 == lat.dim(b)) poset_lines(lat, c, depth + 1, seen, os);
}

} // namespace

void Runner::setup_walls(CLI::App& app)
{
    auto* w = verb(&app, "walls", "intersection lattice of the walls", [this] {
        const RootSystem r = system();
        const WallLattice lat = compute_lattice(r);
        const auto faces = chamber_faces(r, lat);
        if (format_ == "text") {
            std::ostringstream os;
            os << type_label(r) << ": " << lat.size() << " flats, " << faces.size() << " chamber faces\n";
            std::vector<bool> seen(lat.size(), false);
            poset_lines(lat, lat.origin(), 0, seen, os);
            emit_text(os.str());
            return;
        }
        Json res;
        res["size"] = lat.size();
        res["star"] = lat.star();
        res["flats"] = lattice_json(r, lat);
        Json fj = Json::array();
        for (const auto& f : faces) fj.push_back(Json{{"b", f.b}, {"zero_simples", f.zero_simples}});
        res["chamber_faces"] = fj;
        emit(res, to_string(r.normalization()));
    });
    add_system(w);
    format_choice(w, {"json", "text"});

    auto* s = verb(&app, "subsystems", "subsystem data Lambda_b for each flat", [this] {
        const RootSystem r = system();
        const WallLattice lat = compute_lattice(r);
        if (index_ >= 0 && static_cast<std::size_t>(index_) >= lat.star())
            throw ParameterError("--index must be below " + std::to_string(lat.star()));
        Json res = Json::array();
        for (std::size_t b = 0; b < lat.star(); ++b) {
            if (index_ >= 0 && b != static_cast<std::size_t>(index_)) continue;
            res.push_back(subsystem_json(subsystem(r, lat, b)));
        }
        emit(res, to_string(r.normalization()));
    });
    add_system(s);
    s->add_option("--index", index_, "only this lattice index")->check(CLI::NonNegativeNumber);
}

// --- thresholds, rays, sheet ----------------------------------------------

void Runner::setup_thresholds(CLI::App& app)
{
    auto* t = verb(&app, "thresholds", "thresholds of the essential spectrum", [this] {
        const RootSystem r = system();
        const ThresholdSet ts = thresholds(r, {}, config_);
        Json res;
        res["values"] = Json::array();
        res["chains"] = Json::array();
        for (const auto& v : ts.values) {
            res["values"].push_back(v.value.str());
            Json cj = Json::array();
            for (const auto& c : v.chains) cj.push_back(Json{{"path", c.path}, {"point", c.point_value.str()}});
            res["chains"].push_back(cj);
        }
        res["warnings"] = ts.warnings;
        emit(res, to_string(r.normalization()));
    });
    add_system(t);
}

void Runner::setup_rays(CLI::App& app)
{
    auto* r = verb(&app, "rays", "essential spectrum rays of the scaled operator", [this] {
        const Complex theta = parse_complex(theta_);
        check_scaling(theta);
        const RootSystem rs = system();
        Json res = Json::array();
        for (const auto& ray : ess_spectrum_rays(rs, theta, {}, config_))
            res.push_back(Json{{"base_re", ray.base.real()}, {"base_im", ray.base.imag()}, {"angle", ray.angle}});
        emit(res, to_string(rs.normalization()));
    });
    add_system(r);
    r->add_option("--theta", theta_, "scaling parameter re,im")->capture_default_str();
}

namespace {

std::vector<Complex> read_lambda_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ParameterError("--path: cannot read " + path);
    std::vector<Complex> out;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ' ', ',');
        std::replace(line.begin(), line.end(), '\t', ',');
        out.push_back(parse_complex(line));
    }
    return out;
}

std::vector<Complex> gather_lambdas(const std::vector<std::string>& inline_values, const std::string& path)
{
    std::vector<Complex> out;
    for (const auto& s : inline_values) out.push_back(parse_complex(s));
    if (!path.empty()) {
        const auto f = read_lambda_file(path);
        out.insert(out.end(), f.begin(), f.end());
    }
    if (out.empty()) throw ParameterError("no lambda values: give --lambda or --path");
    return out;
}

} // namespace

void Runner::setup_sheet(CLI::App& app)
{
    auto* s = verb(&app, "sheet", "classify spectral parameters against the chart Y_beta", [this] {
        if (!(beta_ >= 0.0 && beta_ < std::numbers::pi / 2)) throw ParameterError("--beta must lie in [0, pi/2)");
        const std::vector<Complex> lambdas = gather_lambdas(lambdas_, path_);
        const RootSystem rs = system();
        const RiemannAtlas atlas = build_atlas(thresholds(rs, {}, config_),
                                               side_ == "upper" ? Side::upper : Side::lower, config_.cut_tolerance);
        std::vector<SheetClass> verdicts;
        for (Complex l : lambdas) verdicts.push_back(sheet_classify(l, beta_, atlas));
        if (format_ == "csv") {
            std::ostringstream os;
            os << "lambda_re,lambda_im,beta,verdict\n";
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                os << num(lambdas[i].real()) << "," << num(lambdas[i].imag()) << "," << num(beta_) << ","
                   << to_string(verdicts[i]) << "\n";
            emit_text(os.str());
            return;
        }
        Json res;
        res["lambda0"] = atlas.lambda0;
        res["rows"] = Json::array();
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            res["rows"].push_back(Json{{"lambda_re", lambdas[i].real()},
                                       {"lambda_im", lambdas[i].imag()},
                                       {"beta", beta_},
                                       {"verdict", to_string(verdicts[i])}});
        emit(res, to_string(rs.normalization()));
    });
    add_system(s);
    s->add_option("--beta", beta_, "chart angle in [0, pi/2)")->required();
    s->add_option("--lambda", lambdas_, "spectral parameters re,im")->expected(0, -1);
    s->add_option("--path", path_, "file with one lambda per line");
    s->add_option("--side", side_, "half-plane of approach")->capture_default_str()->check(CLI::IsMember({"lower", "upper"}));
    format_choice(s, {"json", "csv"});
}

// --- radial ----------------------------------------------------------------

namespace {

Eigen::VectorXd parse_point(const std::string& name, const std::string& text, std::size_t dim)
{
    const std::vector<double> v = parse_reals(text);
    if (v.size() != dim)
        throw ParameterError(name + ": expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

} // namespace

void Runner::setup_radial(CLI::App& app)
{
    CLI::App* rad = app.add_subcommand("radial", "coefficients of the radial Laplacian");
    rad->require_subcommand(1);

    auto* ev = verb(rad, "eval", "coefficient table and Jacobian at a regular point", [this] {
        const RootSystem rs = system();
        const Eigen::VectorXd a = parse_point("--point", point_, rs.dim());
        const ScalingParameter theta(parse_complex(theta_));
        if (!is_regular(rs, RadialJet::constant(a, 0.0))) throw DomainError("--point lies on a wall");
        Json rows = Json::array();
        for (std::size_t i = 0; i < rs.positive_count(); ++i) {
            const Root& root = rs.roots()[i];
            const double alpha_a = to_eigen(root.coords).dot(a);
            const Complex c = stable_coth(theta.w() * alpha_a);
            rows.push_back(Json{{"root", vector_json(root.coords)},
                                {"mult", root.mult},
                                {"alpha_a", alpha_a},
                                {"coth", complex_json(c)},
                                {"coefficient", complex_json(static_cast<double>(root.mult) * c)}});
        }
        Json res;
        res["point"] = std::vector<double>(a.data(), a.data() + a.size());
        res["theta"] = complex_json(theta.theta());
        res["roots"] = rows;
        res["eta"] = eval_eta(rs, a);
        res["jacobian"] = complex_json(jacobian(rs, a, theta));
        emit(res, to_string(rs.normalization()));
    });
    add_system(ev);
    ev->add_option("--point", point_, "comma separated coordinates")->required();
    ev->add_option("--theta", theta_, "scaling parameter re,im")->capture_default_str();

    auto* pr = verb(rad, "profile", "coefficients along the ray t * direction", [this] {
        const RootSystem rs = system();
        const Eigen::VectorXd dir = parse_point("--direction", direction_, rs.dim());
        const ScalingParameter theta(parse_complex(theta_));
        if (!is_regular(rs, RadialJet::constant(dir, 0.0))) throw DomainError("--direction lies on a wall");
        std::ostringstream os;
        os << "t";
        for (std::size_t i = 0; i < rs.positive_count(); ++i) os << ",coef" << i << "_re,coef" << i << "_im";
        os << ",eta,jacobian_re,jacobian_im\n";
        for (int k = 1; k <= samples_; ++k) {
            const double t = rmax_ * k / samples_;
            const Eigen::VectorXd a = t * dir;
            os << num(t);
            for (std::size_t i = 0; i < rs.positive_count(); ++i) {
                const Root& root = rs.roots()[i];
                const Complex c = static_cast<double>(root.mult) * stable_coth(theta.w() * to_eigen(root.coords).dot(a));
                os << "," << num(c.real()) << "," << num(c.imag());
            }
            const Complex j = jacobian(rs, a, theta);
            os << "," << num(eval_eta(rs, a)) << "," << num(j.real()) << "," << num(j.imag()) << "\n";
        }
        emit_text(os.str());
    });
    add_system(pr);
    pr->add_option("--direction", direction_, "comma separated coordinates")->required();
    pr->add_option("--theta", theta_, "scaling parameter re,im")->capture_default_str();
    pr->add_option("--rmax", rmax_, "largest t")->capture_default_str()->check(CLI::PositiveNumber);
    pr->add_option("--samples", samples_, "number of samples")->capture_default_str()->check(CLI::PositiveNumber);
}

// --- num -------------------------------------------------------------------

namespace {

/// Mollified bumps used as test functions for matrix elements.
struct TestFunctions {
    HeatExtension f;
    HeatExtension g;
};

TestFunctions default_test_functions()
{
    const auto fs = sample([](double x) { return bump(x); }, -1.0, 1.0, 0.005);
    const auto gs = sample([](double x) { return bump(x) * (1 + x * x); }, -1.0, 1.0, 0.005);
    return {HeatExtension(fs, 0.5), HeatExtension(gs, 0.5)};
}

} // namespace

void Runner::setup_num(CLI::App& app)
{
    CLI::App* n = app.add_subcommand("num", "desk-scale numerical checks");
    n->require_subcommand(1);

    auto* r1 = verb(n, "rank1", "eigenvalues of the discretized rank-one operator", [this] {
        if (m_ < 1) throw ParameterError("--m must be at least 1");
        const Complex theta = parse_complex(theta_);
        check_scaling(theta);
        const RadialGrid grid(R_, h_);
        if (grid.size() > config_.max_matrix_dim)
            throw ParameterError("grid has " + std::to_string(grid.size()) + " nodes, above max_matrix_dim");
        const DiscretizedOperator op = discretize_rank1(m_, grid, theta, weighted_);
        const Eigen::VectorXcd ev = eigenvalues(op, config_);
        if (format_ == "csv") {
            std::ostringstream os;
            os << "index,re,im\n";
            for (Eigen::Index i = 0; i < ev.size(); ++i)
                os << i << "," << num(ev(i).real()) << "," << num(ev(i).imag()) << "\n";
            emit_text(os.str());
            return;
        }
        const auto rays = ess_spectrum_rays(rank_one(m_), theta, {}, config_);
        std::vector<Complex> values(ev.data(), ev.data() + ev.size());
        const EigencloudReport cloud = eigencloud_ray_check(values, rays, config_);
        Json res;
        res["size"] = grid.size();
        res["rho_norm2"] = to_string(rho_norm2(rank_one(m_)));
        res["bottom"] = complex_json(ev(0));
        Json evj = Json::array();
        for (Complex z : values) evj.push_back(complex_json(z));
        res["eigenvalues"] = evj;
        res["cloud"] = Json{{"predicted_angle", cloud.predicted_angle},
                            {"fitted_angle", cloud.fitted_angle},
                            {"selected", cloud.selected.size()},
                            {"fraction_within", cloud.fraction_within},
                            {"max_abs_deviation", cloud.max_abs_deviation}};
        emit(res, to_string(rank_one(m_).normalization()));
    });
    r1->add_option("--m", m_, "root multiplicity")->required();
    r1->add_option("--R", R_, "truncation radius")->capture_default_str();
    r1->add_option("--h", h_, "grid step")->capture_default_str();
    r1->add_option("--theta", theta_, "scaling parameter re,im")->capture_default_str();
    r1->add_flag("--weighted", weighted_, "symmetrise with eta^{1/2}")->group("Flags");
    format_choice(r1, {"json", "csv"});

    auto* kr = verb(n, "kron", "contour formula for the resolvent of a Kronecker sum", [this] {
        const bool scalar = !a_.empty() || !b_.empty();
        if (scalar && (a_.empty() || b_.empty() || lambda_.empty()))
            throw ParameterError("--a, --b and --lambda go together");
        if (scalar && dim_ != 1) throw ParameterError("--a/--b need --dim 1");
        if (dim_ < 1) throw ParameterError("--dim must be positive");
        if (nodes_ < 4 || nodes_ % 4 != 0) throw ParameterError("--nodes must be a positive multiple of 4");
        Eigen::MatrixXcd A, B;
        Complex lambda;
        if (scalar) {
            A = Eigen::MatrixXcd::Constant(1, 1, parse_complex(a_));
            B = Eigen::MatrixXcd::Constant(1, 1, parse_complex(b_));
            lambda = parse_complex(lambda_);
        } else {
            const RandomPair p = random_pair(static_cast<std::size_t>(dim_), seed_);
            A = p.A;
            B = p.B;
            lambda = lambda_.empty() ? p.lambda : parse_complex(lambda_);
        }
        const MatrixModel model{A, B, separating_rectangle(A, B, lambda, static_cast<std::size_t>(nodes_))};
        const KronResolventResult k = contour_kron_resolvent(model, lambda);
        const SpectrumSumReport s = spectrum_sum_check(A, B);
        Json res;
        res["lambda"] = complex_json(lambda);
        if (dim_ == 1) {
            res["value"] = complex_json(k.integral(0, 0));
            res["direct"] = complex_json(k.direct(0, 0));
        }
        res["relative_error"] = k.relative_error;
        res["separation"] = k.separation;
        res["spectrum_sum"] = Json{{"hausdorff", s.hausdorff}, {"scale", s.scale}};
        emit(res, "none");
    });
    kr->add_option("--dim", dim_, "matrix size")->capture_default_str();
    kr->add_option("--seed", seed_, "seed of the random pair")->capture_default_str();
    kr->add_option("--nodes", nodes_, "quadrature nodes on the rectangle")->capture_default_str();
    kr->add_option("--a", a_, "scalar A (with --dim 1)");
    kr->add_option("--b", b_, "scalar B (with --dim 1)");
    kr->add_option("--lambda", lambda_, "spectral parameter re,im");

    auto* co = verb(n, "continue", "matrix elements of the scaled resolvent across charts", [this] {
        if (m_continue_ < 1) throw ParameterError("--m must be at least 1");
        if (thetas_.empty()) throw ParameterError("--thetas needs at least one value");
        std::vector<Complex> thetas;
        for (const auto& t : thetas_) {
            thetas.push_back(parse_complex(t));
            check_scaling(thetas.back());
        }
        const std::vector<Complex> lambdas = gather_lambdas(lambdas_, path_);
        ContinuationOptions o;
        o.element.R = R_;
        o.element.h = h_;
        o.element.richardson = !no_richardson_;
        o.cut_tolerance = config_.cut_tolerance;
        const RadialGrid grid(R_, h_);
        if (2 * grid.size() > config_.max_matrix_dim)
            throw ParameterError("refined grid exceeds max_matrix_dim");
        if (!localize_.empty()) {
            const auto v = parse_reals(localize_);
            if (v.size() != 2) throw ParameterError("--localize expects T,T1");
            ScalingPath::localized(thetas.front(), v[0], v[1]);  // validates
            o.localize = std::make_pair(v[0], v[1]);
        }
        const TestFunctions tf = default_test_functions();
        const ContinuationReport rep = matrix_element_continuation(m_continue_, tf.f, tf.g, lambdas, thetas, o);
        if (format_ == "csv") {
            std::ostringstream os;
            os << "lambda_re,lambda_im,theta_re,theta_im,value_re,value_im,rcond\n";
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                for (std::size_t j = 0; j < thetas.size(); ++j) {
                    if (!rep.values[i][j]) continue;
                    os << num(lambdas[i].real()) << "," << num(lambdas[i].imag()) << "," << num(thetas[j].real())
                       << "," << num(thetas[j].imag()) << "," << num(rep.values[i][j]->real()) << ","
                       << num(rep.values[i][j]->imag()) << "," << num(rep.rcond[i][j]) << "\n";
                }
            emit_text(os.str());
            return;
        }
        Json res;
        res["lambda0"] = rep.lambda0;
        res["test_functions"] = "heat extensions (t = 0.5) of bump(x) and bump(x)(1 + x^2) on [-1, 1], step 0.005";
        Json rows = Json::array();
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            Json vals = Json::array();
            for (std::size_t j = 0; j < thetas.size(); ++j)
                vals.push_back(rep.values[i][j] ? complex_json(*rep.values[i][j]) : Json(nullptr));
            rows.push_back(Json{{"lambda", complex_json(lambdas[i])}, {"values", vals}});
        }
        res["rows"] = rows;
        res["consistency"] = rep.consistency;
        res["max_inconsistency"] = rep.max_inconsistency;
        res["warnings"] = rep.warnings;
        emit(res, to_string(rank_one(m_continue_).normalization()));
    });
    co->add_option("--m", m_continue_, "root multiplicity")->capture_default_str();
    co->add_option("--thetas", thetas_, "scaling parameters re,im")->required()->expected(1, -1);
    co->add_option("--lambda", lambdas_, "spectral parameters re,im")->expected(0, -1);
    co->add_option("--path", path_, "file with one lambda per line");
    co->add_option("--R", R_, "truncation radius")->capture_default_str();
    co->add_option("--h", h_, "grid step")->capture_default_str();
    co->add_option("--localize", localize_, "localized scaling profile T,T1");
    co->add_flag("--no-richardson", no_richardson_, "single grid, no extrapolation")->group("Flags");
    format_choice(co, {"json", "csv"});
}

int Runner::run(const std::vector<std::string>& args)
{
    CLI::App app{"radialspec: spectral data of radial Laplacians on symmetric spaces"};
    app.name("radialspec");
    // -h would collide with the grid step --h
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    app.add_option("--config", config_path_, "key=value config file (overrides RADIALSPEC_CONFIG)");

    setup_rootsys(app);
    setup_walls(app);
    setup_thresholds(app);
    setup_rays(app);
    setup_sheet(app);
    setup_radial(app);
    setup_num(app);

    if (!args.empty() && !args.front().starts_with("-")) {
        const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
        const bool known = std::any_of(subs.begin(), subs.end(), [&](const CLI::App* a) { return a->get_name() == args.front(); });
        if (!known) {
            err_ << "unknown command '" << args.front() << "'\nRun with --help for more information.\n";
            return usage;
        }
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out_, err_);
        return usage;
    }
    if (!inv_.handler) {
        err_ << "no command given\n";
        return usage;
    }

    try {
        config_ = config_path_.empty() ? config_from_environment() : load_config(config_path_);
        inv_.handler();
    } catch (const ParameterError& e) {
        emit_error(e);
        return usage;
    } catch (const Error& e) {
        emit_error(e);
        return failure;
    } catch (const std::exception& e) {
        emit_error(InternalError(e.what()));
        return failure;
    }
    return ok;
}

} // namespace

RootSystem builtin_system(const std::string& name)
{
    std::vector<RootSystem> factors;
    std::size_t start = 0;
    while (start <= name.size()) {
        const auto x = name.find('x', start);
        const std::string part = name.substr(start, x == std::string::npos ? std::string::npos : x - start);
        if (part.size() >= 2 && part[0] == 'A') {
            const int n = parse_int("--system", part.substr(1));
            if (n < 1) throw ParameterError("A_n needs n >= 1");
            factors.push_back(a_series(n));
        } else if (part.rfind("rank1:", 0) == 0) {
            factors.push_back(rank_one(parse_int("--system", part.substr(6))));
        } else if (part.rfind("flat:", 0) == 0) {
            factors.push_back(flat_factor(parse_int("--system", part.substr(5))));
        } else {
            throw ParameterError("unknown built-in system '" + part + "'");
        }
        if (x == std::string::npos) break;
        start = x + 1;
    }
    if (factors.empty()) throw ParameterError("empty system name");
    return factors.size() == 1 ? factors.front() : product(factors);
}

std::complex<double> parse_complex(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_real(text), 0.0};
    if (text.find(',', comma + 1) != std::string::npos) throw ParameterError("expected re,im: '" + text + "'");
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

std::vector<double> parse_reals(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw ParameterError("expected a comma separated list of numbers");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Runner r(out, err);
    return r.run(args);
}

} // namespace radialspec::cli
