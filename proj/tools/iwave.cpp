// iwave: internal capillary-gravity solitary waves with layer-wise constant
// vorticity.  Every computation in the library is exposed as a subcommand
// with JSON/CSV output; exit codes are 0 (ok), 2 (bad input), 3 (numerical
// fault or failed verification).

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "iwave/dispersion.hpp"
#include "iwave/dno.hpp"
#include "iwave/functionals.hpp"
#include "iwave/json_io.hpp"
#include "iwave/params.hpp"
#include "iwave/profile.hpp"
#include "iwave/reduced.hpp"
#include "iwave/spatial_linear.hpp"
#include "iwave/spectral.hpp"
#include "iwave/stability.hpp"

using namespace iwave;

namespace {

int max_threads() {
    const char* env = std::getenv("IWAVE_THREADS");
    if (!env) return std::max(1u, std::thread::hardware_concurrency());
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

/** Either a file or stdout ("-"). */
class output {
public:
    explicit output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw config_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string fmt(double v) { return json_writer::format(v); }

void emit_critical(const physical_params& p) {
    nondim_params np = nondim(p);
    json_writer w;
    w.begin_object();
    w.key("alpha").value(np.alpha);
    w.key("beta").value(np.beta);
    w.key("alpha0").value(np.alpha0);
    w.key("beta0").value(np.beta0);
    w.key("beta_star").value(np.beta_star);
    w.key("frak_A").value(np.frak_A);
    w.key("frak_B").value(np.frak_B);
    w.key("K").value(np.coeff_K);
    w.key("epsilon").value(np.epsilon);
    w.end_object();
    std::cout << w.str() << "\n";
}

void emit_dispersion(const physical_params& p, double kmax, int samples, const std::string& out_path) {
    nondim_params np = nondim(p);
    dispersion::curve cv = dispersion::sample(np, kmax, samples);
    {
        output out(out_path);
        out.stream() << "k,residual\n";
        for (size_t i = 0; i < cv.k_samples.size(); i++)
            out.stream() << fmt(cv.k_samples[i]) << "," << fmt(cv.residuals[i]) << "\n";
    }
    json_writer w;
    w.begin_object();
    w.key("k_max").value(kmax);
    w.key("n_samples").value(samples);
    w.key("roots").begin_array();
    for (double r : cv.roots) w.value(r);
    w.end_array();
    w.key("root_tol").value(1e-12);
    w.end_object();
    std::cout << w.str() << "\n";
}

void emit_profile(const physical_params& p, double eps, int points, const std::string& out_path) {
    physical_params q = (eps > 0.0) ? with_epsilon(p, eps) : p;
    std::vector<double> grid = default_profile_grid(q, points);
    wave_profile wp = leading_order(q, grid);
    {
        output out(out_path);
        out.stream() << "x,eta\n";
        for (size_t i = 0; i < wp.x.size(); i++) out.stream() << fmt(wp.x[i]) << "," << fmt(wp.eta[i]) << "\n";
    }
    json_writer w;
    w.begin_object();
    w.key("epsilon").value(wp.epsilon);
    w.key("polarity").value(to_string(wp.pol));
    w.key("decay_scale").value(wp.decay_scale);
    w.key("amplitude").value(wp.amplitude);
    w.key("points").value(points);
    w.end_object();
    std::cout << w.str() << "\n";
}

void emit_classify(const physical_params& p, alpha0_mode mode) {
    stability_report rep = classify(p, mode);
    json_writer w;
    w.begin_object();
    w.key("m").value(rep.m);
    w.key("m_prime").value(rep.m_prime);
    w.key("bracket").value(rep.bracket);
    w.key("verdict").value(rep.degenerate ? "degenerate" : to_string(rep.verdict));
    w.key("polarity").value(to_string(rep.pol));
    w.key("inputs").begin_object();
    w.key("rho_plus").value(p.rho_plus);
    w.key("rho_minus").value(p.rho_minus);
    w.key("d_plus").value(p.d_plus);
    w.key("d_minus").value(p.d_minus);
    w.key("omega_plus").value(p.omega_plus);
    w.key("omega_minus").value(p.omega_minus);
    w.key("sigma").value(p.sigma);
    w.key("g").value(p.g);
    w.key("c").value(p.c);
    w.end_object();
    w.end_object();
    std::cout << w.str() << "\n";
}

void emit_spectrum(const physical_params& p, const std::string& op_name, double L, int M, int N, double window,
                   const std::string& efn_path) {
    json_writer w;
    w.begin_object();
    w.key("operator").value(op_name);
    if (op_name == "qc0") {
        double ts = spectral::tau_star(p);
        w.key("essential_edge").value(ts);
        w.key("eigenvalues").begin_array().end_array();
        w.key("symbol_at_zero").value(spectral::qc0_symbol(0.0, p));
    } else if (op_name == "spatial") {
        spatial::discrete_operator op = spatial::assemble(p, N);
        auto spec = spatial::spectrum(op, window);
        w.key("N").value(N);
        w.key("window").value(window);
        w.key("eigenvalues").begin_array();
        for (auto& l : spec) {
            w.begin_array();
            w.value(l.real());
            w.value(l.imag());
            w.end_array();
        }
        w.end_array();
    } else {
        spectral::spectrum_result res = spectral::limiting_spectrum(L, M);
        w.key("L").value(res.L);
        w.key("M").value(res.M);
        w.key("essential_edge").value(res.essential_edge);
        w.key("eigenvalues").begin_array();
        for (double lam : res.eigenvalues) w.value(lam);
        w.end_array();
        w.key("scaled_negative_eigenvalue").value(spectral::scaled_spectrum_estimate(p));
        if (!efn_path.empty()) {
            output out(efn_path);
            out.stream() << "x";
            for (size_t q = 0; q < res.eigenvectors.size(); q++) out.stream() << ",phi_" << q;
            out.stream() << "\n";
            for (int j = 0; j < res.M; j++) {
                out.stream() << fmt(res.x[j]);
                for (const auto& v : res.eigenvectors) out.stream() << "," << fmt(v[j]);
                out.stream() << "\n";
            }
        }
    }
    w.end_object();
    std::cout << w.str() << "\n";
}

void emit_reduce(const physical_params& p, bool do_integrate, double x0, double x1, double step,
                 const std::string& out_path) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("reduce: requires beta > beta0");
    reduced_system sys = reduced_system::from_params(np);
    output out(out_path);
    out.stream() << "X,Q,P,H\n";
    if (do_integrate) {
        reduced_state s0 = homoclinic(x0, sys);
        auto traj = integrate(s0, sys, x1 - x0, step);
        for (const auto& s : traj)
            out.stream() << fmt(s.X) << "," << fmt(s.Q) << "," << fmt(s.P) << ","
                         << fmt(reduced_hamiltonian(s, sys)) << "\n";
    } else {
        int n = static_cast<int>(std::ceil((x1 - x0) / step));
        for (int i = 0; i <= n; i++) {
            double X = x0 + (x1 - x0) * i / n;
            reduced_state s = homoclinic(X, sys);
            out.stream() << fmt(X) << "," << fmt(s.Q) << "," << fmt(s.P) << "," << fmt(reduced_hamiltonian(s, sys))
                         << "\n";
        }
    }
}

struct ledger_entry {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

interface_field verify_field(int M, double L, int seed, double amp) {
    interface_field f(M, L);
    for (int k = 1; k <= 5; k++) {
        double a = amp * std::cos(0.7 * seed + 1.3 * k) / k;
        double b = amp * std::sin(1.1 * seed + 0.9 * k) / k;
        for (int j = 0; j < M; j++) {
            double th = 2.0 * M_PI * k * (f.x(j) + 0.5 * L) / L;
            f.v[j] += a * std::cos(th) + b * std::sin(th);
        }
    }
    return f;
}

void verify_operators(const physical_params& p, std::vector<ledger_entry>& led) {
    int M = 64;
    double L = 2.0 * M_PI;
    interface_field eta0(M, L);
    for (layer_side s : {layer_side::upper, layer_side::lower}) {
        layer_solver ls(eta0, s, p, 96);
        double worst = 0.0;
        for (int mode = 1; mode <= M / 4; mode++) {
            double k = 2.0 * M_PI * mode / L;
            interface_field xi = interface_field::sample(M, L, [&](double x) { return std::cos(k * x); });
            interface_field g = ls.dno(xi);
            double sym = flat_symbol_G(k, s, p);
            for (int j = 0; j < M; j++)
                worst = std::max(worst, std::fabs(g.v[j] - sym * xi.v[j]) / std::max(1.0, sym));
        }
        led.push_back({std::string("flat_dno_symbol_") + (s == layer_side::upper ? "upper" : "lower"), worst, 1e-10,
                       worst <= 1e-10});
    }
    double amp = 0.04 * std::min(p.d_plus, p.d_minus);
    interface_field eta = verify_field(M, 8.0, 3, amp);
    {
        two_layer_context ctx(eta, p, 48);
        double worst = 0.0;
        for (int t = 0; t < 3; t++) {
            interface_field xi = verify_field(M, 8.0, 10 + t, 1.0), ze = verify_field(M, 8.0, 20 + t, 1.0);
            for (layer_side s : {layer_side::upper, layer_side::lower}) {
                double lhs = inner(ctx.G(s, xi), ze), rhs = inner(xi, ctx.G(s, ze));
                worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
            }
        }
        led.push_back({"dno_self_adjoint", worst, 1e-9, worst <= 1e-9});
    }
    {
        double h = 1e-4, worst = 0.0;
        for (int t = 0; t < 3; t++) {
            interface_field etad = verify_field(M, 8.0, 30 + t, 1.0);
            interface_field xi = verify_field(M, 8.0, 40 + t, 1.0), ze = verify_field(M, 8.0, 50 + t, 1.0);
            for (layer_side s : {layer_side::upper, layer_side::lower}) {
                double lhs = shape_derivative_pairing(eta, etad, xi, ze, s, p, 48);
                layer_solver lp(eta + h * etad, s, p, 48), lm(eta - h * etad, s, p, 48);
                double fd = (inner(ze, lp.dno(xi)) - inner(ze, lm.dno(xi))) / (2.0 * h);
                worst = std::max(worst, std::fabs(lhs - fd) / std::max(std::fabs(fd), 1e-6));
            }
        }
        led.push_back({"shape_derivative_fd", worst, 1e-6, worst <= 1e-6});
    }
    {
        double h = 1e-3, worst = 0.0;
        for (int t = 0; t < 2; t++) {
            interface_field etad = verify_field(M, 8.0, 60 + t, 1.0);
            interface_field xi = verify_field(M, 8.0, 70 + t, 1.0);
            for (layer_side s : {layer_side::upper, layer_side::lower}) {
                double lhs = second_shape_derivative_pairing(eta, etad, xi, s, p, 48);
                layer_solver l0(eta, s, p, 48), lp(eta + h * etad, s, p, 48), lm(eta - h * etad, s, p, 48);
                double fd = (inner(xi, lp.dno(xi)) - 2.0 * inner(xi, l0.dno(xi)) + inner(xi, lm.dno(xi))) / (h * h);
                worst = std::max(worst, std::fabs(lhs - fd) / std::max(std::fabs(fd), 1e-6));
            }
        }
        led.push_back({"second_shape_derivative_fd", worst, 1e-4, worst <= 1e-4});
    }
    {
        two_layer_context ctx(eta, p, 48);
        interface_field xi = verify_field(M, 8.0, 80, 1.0);
        interface_field a1 = ctx.A(xi, true), a2 = ctx.A(xi, false);
        double dev = max_abs(a1 - a2) / std::max(1.0, max_abs(a1));
        led.push_back({"a_operator_orderings", dev, 1e-8, dev <= 1e-8});
    }
    {
        two_layer_context ctx(eta, p, 48);
        interface_field one(M, 8.0);
        for (double& v : one.v) v = 1.0;
        double dev = std::max(max_abs(ctx.G(layer_side::upper, one)), max_abs(ctx.G(layer_side::lower, one)));
        interface_field g = ctx.G(layer_side::lower, verify_field(M, 8.0, 90, 1.0));
        dev = std::max(dev, std::fabs(g.mean()));
        led.push_back({"dno_annihilates_constants", dev, 1e-11, dev <= 1e-11});
    }
}

void verify_jordan(const physical_params& p, std::vector<ledger_entry>& led) {
    // retune gravity to the critical speed family: alpha = alpha0 exactly
    nondim_params np = nondim(p);
    double a1 = -jump(p.rho_plus, p.rho_minus) * p.d_plus / (p.rho_minus * p.c * p.c);
    physical_params q = p;
    q.g = np.alpha0 / a1;
    if (!(q.g > 0.0)) throw config_error("verify: cannot reach criticality (alpha0 <= 0)");
    spatial::jordan_report rep = spatial::jordan_chain_check(q, 64);
    led.push_back({"jordan_L_e1", rep.res_e1, 1e-8, rep.res_e1 <= 1e-8});
    led.push_back({"jordan_L_e2_minus_e1", rep.res_e2, 1e-8, rep.res_e2 <= 1e-8});
    double dev = std::fabs(rep.pairing - rep.beta_star);
    led.push_back({"jordan_symplectic_pairing", dev, 1e-10, dev <= 1e-10});
    led.push_back({"jordan_kernel_dimension", static_cast<double>(rep.kernel_dim), 1.0, rep.kernel_dim == 1});
}

void verify_dprime(const physical_params& p, std::vector<ledger_entry>& led) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("verify: dprime suite requires beta > beta0");
    if (np.degenerate_B()) throw config_error("verify: dprime suite requires nondegenerate frak_B");
    dprime_report rep = dprime_check(p, {0.1, 0.05, 0.025});
    for (const auto& r : rep.rows) {
        // the relative error carries the O(eps) remainder; expect linear decay
        double tol = 0.2 * (r.eps / 0.1);
        char name[64];
        std::snprintf(name, sizeof name, "dprime_rel_err_eps_%g", r.eps);
        led.push_back({name, r.rel_err, tol, r.rel_err <= tol});
    }
    led.push_back({"dprime_fitted_order", rep.fitted_order, 0.8, rep.fitted_order >= 0.8});
    bool sign_ok = true;
    for (const auto& r : rep.rows) sign_ok = sign_ok && (r.minus_P * r.m > 0.0);
    led.push_back({"dprime_sign_agreement", sign_ok ? 0.0 : 1.0, 0.5, sign_ok});
}

int run_verify(const physical_params& p, const std::string& suite) {
    std::vector<ledger_entry> led;
    if (suite == "operators" || suite == "all") verify_operators(p, led);
    if (suite == "jordan" || suite == "all") verify_jordan(p, led);
    if (suite == "dprime" || suite == "all") verify_dprime(p, led);
    bool all_pass = true;
    json_writer w;
    w.begin_object();
    w.key("suite").value(suite);
    w.key("entries").begin_array();
    for (const auto& e : led) {
        w.begin_object();
        w.key("name").value(e.name);
        w.key("residual").value(e.residual);
        w.key("tol").value(e.tol);
        w.key("pass").value(e.pass);
        w.end_object();
        all_pass = all_pass && e.pass;
    }
    w.end_array();
    w.key("all_pass").value(all_pass);
    w.end_object();
    std::cout << w.str() << "\n";
    return all_pass ? 0 : 3;
}

void write_sweep_csv(std::ostream& os, const std::vector<std::pair<regime_case, sweep_result>>& results) {
    os << "case,varrho,d,s,sign_c,constructed,skip_reason,m,m_prime,verdict,predicted,match\n";
    for (const auto& [rc, res] : results) {
        for (const auto& pt : res.points) {
            os << to_string(rc) << "," << fmt(pt.varrho) << "," << fmt(pt.d) << "," << fmt(pt.s) << "," << pt.sign_c
               << "," << (pt.constructed ? 1 : 0) << "," << pt.skip_reason << ",";
            if (pt.constructed)
                os << fmt(pt.m) << "," << fmt(pt.m_prime) << "," << to_string(pt.verdict) << ","
                   << to_string(pt.predicted) << "," << (pt.match ? 1 : 0) << "\n";
            else
                os << ",,," << to_string(pt.predicted) << ",\n";
        }
    }
}

int run_sweep(const std::string& grid, double eps, double bx, const std::string& out_path, alpha0_mode mode) {
    std::vector<regime_case> cases;
    int n = 200;
    std::string name = grid;
    auto colon = grid.find(':');
    if (colon != std::string::npos) {
        name = grid.substr(0, colon);
        n = std::atoi(grid.substr(colon + 1).c_str());
        if (n <= 0) throw config_error("sweep: bad grid count in '" + grid + "'");
    }
    if (name == "all") {
        cases = {regime_case::fig1_elevation, regime_case::fig1_depression, regime_case::fig2_elevation,
                 regime_case::fig2_depression};
    } else if (name == "fig1_elevation") {
        cases = {regime_case::fig1_elevation};
    } else if (name == "fig1_depression") {
        cases = {regime_case::fig1_depression};
    } else if (name == "fig2_elevation") {
        cases = {regime_case::fig2_elevation};
    } else if (name == "fig2_depression") {
        cases = {regime_case::fig2_depression};
    } else {
        throw config_error("sweep: unknown grid case '" + name + "' (use fig1_elevation, fig1_depression, "
                           "fig2_elevation, fig2_depression or all, optionally :count)");
    }

    // fan out across cases, capped by IWAVE_THREADS; gather in case order
    std::vector<std::pair<regime_case, sweep_result>> results(cases.size());
    int nthreads = std::min<int>(max_threads(), static_cast<int>(cases.size()));
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < nthreads; t++)
        pool.emplace_back([&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= cases.size()) return;
                results[i] = {cases[i], regime_sweep(cases[i], n, eps, bx, mode)};
            }
        });
    for (auto& th : pool) th.join();

    output out(out_path);
    write_sweep_csv(out.stream(), results);
    json_writer w;
    w.begin_object();
    w.key("cases").begin_array();
    for (const auto& [rc, res] : results) {
        w.begin_object();
        w.key("case").value(to_string(rc));
        w.key("constructed").value(res.n_constructed);
        w.key("match").value(res.n_match);
        w.key("mismatch").value(res.n_mismatch);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    std::cout << w.str() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"internal capillary-gravity solitary waves with layer-wise constant vorticity"};
    app.require_subcommand(1);
    app.footer("config schema (JSON object, SI units, all keys required, unknown keys rejected):\n"
               "  rho_plus, rho_minus   layer densities, 0 < rho_plus <= rho_minus\n"
               "  d_plus, d_minus       layer depths (> 0)\n"
               "  omega_plus, omega_minus  layer vorticities\n"
               "  sigma                 surface tension coefficient (> 0)\n"
               "  g                     gravity (> 0)\n"
               "  c                     wave speed (!= 0)\n"
               "environment: IWAVE_THREADS caps sweep parallelism\n"
               "exit codes: 0 ok, 2 invalid input, 3 numerical fault / failed verification");

    std::string config_path;
    std::string out_path = "-";
    double kmax = 10.0;
    int samples = 501;
    double eps = 0.0;
    int points = 4096;
    std::string op_name = "limiting";
    double L = 80.0;
    int M = 1024;
    int N_spatial = 64;
    double window = 10.0;
    bool do_integrate = false, do_homoclinic = false;
    double x0 = -15.0, x1 = 15.0, step = 1e-3;
    std::string suite = "all";
    std::string grid = "all:200";
    double sweep_eps = 0.1, sweep_bx = 0.5;
    std::string a0mode = "pointwise";
    std::string efn_path;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("config,--config", config_path, "JSON configuration file")->required();
    };

    CLI::App* c_critical = app.add_subcommand("critical", "critical parameters and stability coefficients");
    add_config(c_critical);

    CLI::App* c_disp = app.add_subcommand("dispersion", "dispersion residual samples and real roots");
    add_config(c_disp);
    c_disp->add_option("--kmax", kmax, "wavenumber range [0, kmax]");
    c_disp->add_option("--samples", samples, "number of CSV samples");
    c_disp->add_option("--out", out_path, "CSV destination ('-' for stdout)");

    CLI::App* c_prof = app.add_subcommand("profile", "leading-order solitary wave profile");
    add_config(c_prof);
    c_prof->add_option("--epsilon", eps, "retune gravity to this amplitude parameter (default: use config)");
    c_prof->add_option("--points", points, "grid points");
    c_prof->add_option("--out", out_path, "CSV destination ('-' for stdout)");

    CLI::App* c_cls = app.add_subcommand("classify", "orbital stability verdict from m'(c)");
    add_config(c_cls);
    c_cls->add_option("--alpha0-mode", a0mode, "pointwise or frozen epsilon_c reading")
        ->check(CLI::IsMember({"pointwise", "frozen"}));

    CLI::App* c_spec = app.add_subcommand("spectrum", "spectra of the linearized augmented potential");
    add_config(c_spec);
    c_spec->add_option("--operator", op_name, "qc0, limiting or spatial")
        ->check(CLI::IsMember({"qc0", "limiting", "spatial"}));
    c_spec->add_option("--L", L, "limiting operator domain length");
    c_spec->add_option("--M", M, "limiting operator collocation points");
    c_spec->add_option("--N", N_spatial, "spatial operator z-collocation points (even)");
    c_spec->add_option("--window", window, "spatial operator |Im lambda| window");
    c_spec->add_option("--eigenfunctions-out", efn_path, "CSV dump of the limiting operator eigenfunctions");

    CLI::App* c_red = app.add_subcommand("reduce", "reduced center-manifold dynamics");
    add_config(c_red);
    c_red->add_flag("--integrate", do_integrate, "RK4 trajectory started on the homoclinic at --x0");
    c_red->add_flag("--homoclinic", do_homoclinic, "sample the closed-form homoclinic");
    c_red->add_option("--x0", x0, "start of the X range");
    c_red->add_option("--x1", x1, "end of the X range");
    c_red->add_option("--step", step, "step size");
    c_red->add_option("--out", out_path, "CSV destination ('-' for stdout)");

    CLI::App* c_ver = app.add_subcommand("verify", "numerical self-checks with a pass/fail ledger");
    add_config(c_ver);
    c_ver->add_option("--suite", suite, "operators, jordan, dprime or all")
        ->check(CLI::IsMember({"operators", "jordan", "dprime", "all"}));

    CLI::App* c_swp = app.add_subcommand("sweep", "regime table sweeps of the stability verdict");
    add_config(c_swp);
    c_swp->add_option("--grid", grid, "case[:count], case in {fig1_elevation, fig1_depression, fig2_elevation, "
                                      "fig2_depression, all}");
    c_swp->add_option("--epsilon", sweep_eps, "amplitude parameter of the constructed waves");
    c_swp->add_option("--beta-excess", sweep_bx, "beta - beta0 of the constructed waves");
    c_swp->add_option("--out", out_path, "CSV destination ('-' for stdout)");
    c_swp->add_option("--alpha0-mode", a0mode, "pointwise or frozen epsilon_c reading")
        ->check(CLI::IsMember({"pointwise", "frozen"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        alpha0_mode mode = (a0mode == "frozen") ? alpha0_mode::frozen : alpha0_mode::pointwise;
        if (app.got_subcommand(c_critical)) {
            emit_critical(load_config(config_path));
        } else if (app.got_subcommand(c_disp)) {
            if (samples < 2) throw config_error("dispersion: need at least 2 samples");
            emit_dispersion(load_config(config_path), kmax, samples, out_path);
        } else if (app.got_subcommand(c_prof)) {
            emit_profile(load_config(config_path), eps, points, out_path);
        } else if (app.got_subcommand(c_cls)) {
            emit_classify(load_config(config_path), mode);
        } else if (app.got_subcommand(c_spec)) {
            emit_spectrum(load_config(config_path), op_name, L, M, N_spatial, window, efn_path);
        } else if (app.got_subcommand(c_red)) {
            if (do_integrate == do_homoclinic)
                throw config_error("reduce: choose exactly one of --integrate, --homoclinic");
            emit_reduce(load_config(config_path), do_integrate, x0, x1, step, out_path);
        } else if (app.got_subcommand(c_ver)) {
            return run_verify(load_config(config_path), suite);
        } else if (app.got_subcommand(c_swp)) {
            load_config(config_path).validate(); // the sweep constructs its own parameter points
            return run_sweep(grid, sweep_eps, sweep_bx, out_path, mode);
        }
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical fault: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
