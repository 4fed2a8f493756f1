#include "schrowave/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace schrowave {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string scheme_name(TimeScheme s) {
    switch (s) {
        case TimeScheme::crank_nicolson: return "crank-nicolson";
        case TimeScheme::implicit_euler: return "implicit-euler";
        case TimeScheme::exact_exponential: return "exact-exponential";
    }
    return "?";
}

TimeScheme scheme_from(const std::string& s) {
    if (s == "crank-nicolson") return TimeScheme::crank_nicolson;
    if (s == "implicit-euler") return TimeScheme::implicit_euler;
    if (s == "exact-exponential") return TimeScheme::exact_exponential;
    throw std::invalid_argument("config: unknown time.scheme '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os << "dimension = " << dimension << "\n";
    os << "force.constant = " << fmt(force_constant) << "\n";
    os << "formulation = " << formulation_to_string(formulation) << "\n";
    os << "grid.M = " << grid_M << "\n";
    os << "grid.a = " << fmt(grid_a) << "\n";
    os << "grid.b = " << fmt(grid_b) << "\n";
    os << "homogenization.c = " << (homog_c > 0.0 ? fmt(homog_c) : "auto") << "\n";
    os << "init.center = " << fmt(init_center) << "\n";
    os << "init.preset = " << init_preset << "\n";
    os << "init.width = " << fmt(init_width) << "\n";
    if (medium_preset.empty()) {
        os << "medium.lambda = " << fmt(medium_lambda) << "\n";
        os << "medium.mu = " << fmt(medium_mu) << "\n";
        os << "medium.rho = " << fmt(medium_rho) << "\n";
    } else {
        os << "medium.preset = " << medium_preset << "\n";
    }
    os << "p.N = " << p_N << "\n";
    os << "p.hi = " << fmt(p_hi) << "\n";
    os << "p.lo = " << fmt(p_lo) << "\n";
    os << "recovery.mode = " << (recovery_mode == RecoveryMode::point ? "point" : "integral") << "\n";
    os << "recovery.p1 = " << (recovery_p1 ? fmt(*recovery_p1) : "auto") << "\n";
    os << "recovery.threshold = " << recovery_threshold << "\n";
    os << "time.T = " << fmt(T) << "\n";
    os << "time.dt = " << fmt(dt) << "\n";
    os << "time.scheme = " << scheme_name(scheme) << "\n";
    os << "warp = " << warp << "\n";
    return os.str();
}

uint64_t ExperimentConfig::hash() const {
    const std::string text = canonical_text();
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ExperimentConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (kv.count(key)) throw std::invalid_argument("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const std::vector<std::string> required = {"formulation", "dimension", "grid.a", "grid.b",
                                                      "grid.M",      "p.lo",      "p.hi",   "p.N",
                                                      "time.scheme", "time.dt",   "time.T"};
    std::string missing;
    for (const auto& k : required)
        if (!kv.count(k)) missing += (missing.empty() ? "" : ", ") + k;
    if (!missing.empty())
        throw std::invalid_argument("config: missing required keys: " + missing);

    static const std::vector<std::string> known = {
        "formulation",   "dimension",     "grid.a",       "grid.b",       "grid.M",
        "medium.preset", "medium.rho",    "medium.lambda", "medium.mu",
        "force.constant", "init.preset",  "init.center",  "init.width",
        "p.lo",          "p.hi",          "p.N",          "warp",
        "time.scheme",   "time.dt",       "time.T",       "homogenization.c",
        "recovery.mode", "recovery.p1",   "recovery.threshold", "output.dir"};
    for (const auto& [k, v] : kv)
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw std::invalid_argument("config: unknown key '" + k + "'");

    auto get = [&](const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    };
    auto getd = [&](const std::string& k, double dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : std::stod(it->second);
    };

    ExperimentConfig cfg;
    cfg.formulation = formulation_from_string(kv.at("formulation"));
    cfg.dimension = std::stoi(kv.at("dimension"));
    cfg.grid_a = std::stod(kv.at("grid.a"));
    cfg.grid_b = std::stod(kv.at("grid.b"));
    cfg.grid_M = std::stoi(kv.at("grid.M"));
    cfg.medium_preset = get("medium.preset", "");
    cfg.medium_rho = getd("medium.rho", 1.0);
    cfg.medium_lambda = getd("medium.lambda", 1.0);
    cfg.medium_mu = getd("medium.mu", 1.0);
    cfg.force_constant = getd("force.constant", 0.0);
    cfg.init_preset = get("init.preset", "none");
    cfg.init_center = getd("init.center", 0.0);
    cfg.init_width = getd("init.width", 1.0);
    cfg.p_lo = std::stod(kv.at("p.lo"));
    cfg.p_hi = std::stod(kv.at("p.hi"));
    cfg.p_N = std::stoi(kv.at("p.N"));
    cfg.warp = get("warp", "exact-kink");
    cfg.scheme = scheme_from(kv.at("time.scheme"));
    cfg.dt = std::stod(kv.at("time.dt"));
    cfg.T = std::stod(kv.at("time.T"));
    const std::string c = get("homogenization.c", "auto");
    cfg.homog_c = (c == "auto") ? 0.0 : std::stod(c);
    const std::string mode = get("recovery.mode", "point");
    if (mode == "point") cfg.recovery_mode = RecoveryMode::point;
    else if (mode == "integral") cfg.recovery_mode = RecoveryMode::integral;
    else throw std::invalid_argument("config: unknown recovery.mode '" + mode + "'");
    const std::string p1 = get("recovery.p1", "auto");
    if (p1 != "auto") cfg.recovery_p1 = std::stod(p1);
    cfg.recovery_threshold = get("recovery.threshold", "global");
    if (cfg.recovery_threshold != "global" && cfg.recovery_threshold != "subspace")
        throw std::invalid_argument("config: unknown recovery.threshold '" +
                                    cfg.recovery_threshold + "'");
    cfg.output_dir = get("output.dir", "");

    if (cfg.init_preset != "none" && cfg.init_preset != "gaussian-stress" &&
        cfg.init_preset != "exact-hyperbolic")
        throw std::invalid_argument("config: unknown init.preset '" + cfg.init_preset + "'");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "paper-6.1") {
        cfg.formulation = Formulation::smf_spectral;
        cfg.dimension = 1;
        cfg.grid_a = 0.0;
        cfg.grid_b = 10.0;
        cfg.grid_M = 64;
        cfg.medium_rho = 1.0;
        cfg.medium_lambda = 1.0;
        cfg.medium_mu = 1.0;
        cfg.force_constant = 0.1;
        cfg.init_preset = "gaussian-stress";
        cfg.init_center = 5.0;
        cfg.init_width = 1.0;
        cfg.p_lo = -4.2;
        cfg.p_hi = 5.0;
        cfg.p_N = 1024;
        cfg.scheme = TimeScheme::crank_nicolson;
        cfg.dt = 0.01;
        cfg.T = 1.0;
        cfg.homog_c = 1.0;
        cfg.recovery_p1 = 3.203;
        return cfg;
    }
    if (name == "paper-6.2") {
        cfg.formulation = Formulation::staggered_vs;
        cfg.dimension = 2;
        cfg.grid_a = 0.0;
        cfg.grid_b = 10.0;
        cfg.grid_M = 32;
        cfg.medium_preset = "sincos";
        cfg.init_preset = "gaussian-stress";
        cfg.init_center = 5.0;
        cfg.init_width = 1.0;
        cfg.p_lo = -3.0 * M_PI;
        cfg.p_hi = 3.0 * M_PI;
        cfg.p_N = 1024;
        cfg.scheme = TimeScheme::implicit_euler;
        cfg.dt = 1.0 / 200.0;
        cfg.T = 1.0;
        return cfg;
    }
    const bool spectral = name.find("spectral") != std::string::npos;
    const bool central = name.find("central") != std::string::npos;
    if ((spectral || central) && name.rfind("paper-6.3-", 0) == 0) {
        cfg.formulation =
            spectral ? Formulation::displacement_spectral : Formulation::displacement_central;
        cfg.dimension = 1;
        cfg.grid_a = 0.0;
        cfg.grid_b = 1.0;
        cfg.grid_M = spectral ? 32 : 64;
        cfg.medium_rho = 1.41;
        cfg.init_preset = "exact-hyperbolic";
        cfg.p_lo = -3.0 * M_PI;
        cfg.p_hi = 3.0 * M_PI;
        cfg.p_N = 512;
        cfg.scheme = TimeScheme::crank_nicolson;
        cfg.dt = 1.0 / 2000.0;
        cfg.T = 1.0;
        if (name.find("row1") != std::string::npos) {
            cfg.medium_lambda = 0.71;
            cfg.medium_mu = 0.35;
            if (spectral) cfg.recovery_p1 = 0.037;
        } else if (name.find("row2") != std::string::npos) {
            cfg.medium_lambda = 0.61;
            cfg.medium_mu = 0.40;
            cfg.recovery_p1 = spectral ? 6.774 : 4.306;
        } else {
            throw std::invalid_argument("unknown preset: " + name);
        }
        return cfg;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"paper-6.1",
            "paper-6.2",
            "paper-6.3-spectral-row1",
            "paper-6.3-spectral-row2",
            "paper-6.3-central-row1",
            "paper-6.3-central-row2"};
}

namespace {

struct AssembledBundle {
    LinearODESystem ode;
    std::vector<std::string> names;
    int ncomp = 0;
    Eigen::Index npts = 0;
    std::function<DenseVec(const DenseVec&)> to_physical;
    std::optional<Eigen::Index> anti_split;
    std::vector<std::array<double, 2>> offsets;  // per-component staggering, fractions of h
};

IsotropicMedium medium_from(const ExperimentConfig& cfg) {
    if (!cfg.medium_preset.empty()) return medium_preset(cfg.medium_preset);
    return IsotropicMedium::constants(cfg.medium_rho, cfg.medium_lambda, cfg.medium_mu);
}

FieldFn gaussian_of(const ExperimentConfig& cfg) {
    const double c = cfg.init_center;
    const double w = cfg.init_width;
    if (cfg.dimension == 1)
        return [c, w](double x, double, double) { return std::exp(-((x - c) * (x - c)) / (w * w)); };
    return [c, w](double x, double y, double) {
        return std::exp(-((x - c) * (x - c) + (y - c) * (y - c)) / (w * w));
    };
}

AssembledBundle assemble_bundle(const ExperimentConfig& cfg) {
    const Grid1D grid = make_uniform_grid(cfg.grid_a, cfg.grid_b, cfg.grid_M);
    const IsotropicMedium medium = medium_from(cfg);
    AssembledBundle bundle;
    Eigen::Index npts = 1;
    for (int i = 0; i < cfg.dimension; ++i) npts *= cfg.grid_M;
    bundle.npts = npts;

    std::vector<FieldFn> force;
    if (cfg.force_constant != 0.0)
        force = {[f = cfg.force_constant](double, double, double) { return f; }};

    switch (cfg.formulation) {
        case Formulation::smf_spectral: {
            std::vector<FieldFn> init_stress;
            if (cfg.init_preset == "gaussian-stress") init_stress = {gaussian_of(cfg)};
            SmfSystem sys = assemble_smf(grid, medium, cfg.dimension, force, init_stress);
            bundle.ode = to_linear_system(sys);
            bundle.ncomp = sys.ncomp;
            if (cfg.dimension == 1) bundle.names = {"sigma", "v"};
            else if (cfg.dimension == 2) bundle.names = {"s11", "s22", "s12", "v1", "v2"};
            else bundle.names = {"s11", "s22", "s33", "s12", "s13", "s23", "v1", "v2", "v3"};
            const int nstress = sys.ncomp - cfg.dimension;
            const RealMat Mhalf = sys.Mhalf;
            const double rho = sys.rho;
            const int d = cfg.dimension, ncomp = sys.ncomp;
            bundle.to_physical = [grid, d, ncomp, nstress, Mhalf, rho, npts](const DenseVec& u) {
                DenseVec phys = hat_inverse(grid, d, ncomp, u);
                DenseVec out(u.size());
                for (Eigen::Index j = 0; j < npts; ++j) {
                    DenseVec comp(ncomp);
                    for (int c = 0; c < ncomp; ++c) comp[c] = phys[c * npts + j];
                    comp = Mhalf.cast<cxd>() * comp;  // back to (sigma/rho, v)
                    for (int c = 0; c < ncomp; ++c)
                        out[c * npts + j] = (c < nstress) ? rho * comp[c].real() : comp[c].real();
                }
                return out;
            };
            bundle.offsets.assign(bundle.ncomp, {0.0, 0.0});
            break;
        }
        case Formulation::staggered_vs: {
            if (cfg.force_constant != 0.0)
                throw std::invalid_argument("staggered-vs runs do not take a body force");
            std::vector<FieldFn> init_stress;
            if (cfg.init_preset == "gaussian-stress") init_stress = {gaussian_of(cfg)};
            StaggeredVSSystem sys =
                assemble_staggered_vs(grid, medium, cfg.dimension, init_stress);
            bundle.ode = to_linear_system(sys);
            bundle.ncomp = static_cast<int>((sys.nv + sys.ns) / npts);
            if (cfg.dimension == 2) {
                bundle.names = {"v1", "v2", "s11", "s22", "s12"};
                bundle.offsets = {{0.5, 0.0}, {0.0, 0.5}, {0.0, 0.0}, {0.0, 0.0}, {0.5, 0.5}};
            } else {
                bundle.names = {"v1", "v2", "v3", "s11", "s22", "s33", "s12", "s13", "s23"};
                bundle.offsets.assign(9, {0.0, 0.0});
            }
            bundle.to_physical = [](const DenseVec& u) { return DenseVec(u.real().cast<cxd>()); };
            if (cfg.force_constant == 0.0) bundle.anti_split = sys.nv;
            break;
        }
        case Formulation::displacement_spectral:
        case Formulation::displacement_central: {
            const SpatialScheme scheme = (cfg.formulation == Formulation::displacement_spectral)
                                             ? SpatialScheme::spectral
                                             : SpatialScheme::central;
            std::vector<FieldFn> init;
            if (cfg.init_preset == "exact-hyperbolic") {
                if (cfg.dimension != 1)
                    throw std::invalid_argument("exact-hyperbolic initial data is 1-D only");
                ExactHyperbolicSolution exact(medium.mu.constant, medium.lambda.constant);
                init = {[exact](double x, double, double) { return exact.xi(x, 0.0); },
                        [exact](double x, double, double) { return exact.eps(x, 0.0); },
                        [exact](double x, double, double) { return exact.p(x, 0.0); }};
            } else if (cfg.init_preset == "gaussian-stress") {
                init = {FieldFn{}, gaussian_of(cfg)};  // bump on the strain component
            }
            DisplacementSystem sys = assemble_displacement(grid, medium, scheme, cfg.dimension,
                                                           force, init);
            bundle.ode = to_linear_system(sys);
            bundle.ncomp = sys.ncomp;
            if (cfg.dimension == 1) bundle.names = {"xi", "eps", "p"};
            else
                bundle.names = {"xi1", "xi2", "xi3", "z11", "z22", "z33",
                                "z23", "z13", "z12", "p"};
            const bool hat = sys.hat_basis;
            const int d = cfg.dimension, ncomp = sys.ncomp;
            bundle.to_physical = [grid, d, ncomp, hat](const DenseVec& u) {
                DenseVec phys = hat ? hat_inverse(grid, d, ncomp, u) : u;
                return DenseVec(phys.real().cast<cxd>());
            };
            bundle.offsets.assign(bundle.ncomp, {0.0, 0.0});
            break;
        }
    }
    return bundle;
}

WarpFunction warp_from(const std::string& spec) {
    if (spec == "exact-kink") return WarpFunction::exact_kink();
    if (spec.rfind("smooth:", 0) == 0) return WarpFunction::smooth(std::stoi(spec.substr(7)));
    throw std::invalid_argument("config: unknown warp '" + spec + "'");
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    RunResult result;
    result.cfg = cfg;
    result.config_hash = cfg.hash();

    AssembledBundle bundle = assemble_bundle(cfg);
    const Grid1D grid = make_uniform_grid(cfg.grid_a, cfg.grid_b, cfg.grid_M);

    HomogenizeResult hom =
        homogenize(bundle.ode, cfg.homog_c > 0.0 ? std::optional<double>(cfg.homog_c) : std::nullopt);
    HermitianPair pair = hermitian_split(hom.system.A);
    result.lambda_max_h1 = largest_eigenvalue(pair.H1);
    result.p_star = (cfg.recovery_threshold == "subspace")
                        ? pstar_subspace(pair, hom.system.u0, cfg.T)
                        : std::max(result.lambda_max_h1 * cfg.T, 0.0);
    result.n_base = hom.n_base;

    PGrid pg = make_pgrid_window(cfg.p_lo, cfg.p_hi, cfg.p_N);
    if (result.p_star > pg.node(pg.N - 1)) {
        if (cfg.strict)
            throw std::runtime_error("p window [" + std::to_string(pg.lo) + ", " +
                                     std::to_string(pg.hi) + ") does not admit p* = " +
                                     std::to_string(result.p_star));
        std::cerr << "warning: extending p window to admit p* = " << result.p_star << "\n";
        pg = make_pgrid_window(cfg.p_lo, result.p_star + 1.0, cfg.p_N);
        result.window_extended = true;
    }
    result.pgrid_used = pg;

    SchrodingerizedSystem ssys = schrodingerize(pair, hom.system.u0, pg, warp_from(cfg.warp));
    if (bundle.anti_split && !hom.augmented) ssys.anti_diagonal_split = *bundle.anti_split;

    EvolutionConfig ecfg{cfg.scheme, cfg.dt, cfg.T};
    DenseVec cT = evolve_schrodingerized(ssys, ecfg);
    DenseVec vh = qft_p(cT, ssys.n_aug, pg);

    RecoveryPlan plan;
    plan.p_star = result.p_star;
    if (cfg.recovery_mode == RecoveryMode::point) {
        plan.mode = RecoveryMode::point;
        plan.p1_index =
            cfg.recovery_p1 ? pg.nearest_node(*cfg.recovery_p1) : pg.first_node_at_or_above(result.p_star);
        if (pg.node(plan.p1_index) < result.p_star - 1e-9) {
            const std::string msg = "recovery point p1 = " + std::to_string(pg.node(plan.p1_index)) +
                                    " lies below p* = " + std::to_string(result.p_star);
            if (cfg.strict) throw std::runtime_error(msg);
            std::cerr << "warning: " << msg << "\n";
        }
    } else {
        plan.mode = RecoveryMode::integral;
    }
    result.p1_index = plan.p1_index;
    result.p1_value = pg.node(plan.p1_index);

    DenseVec u_aug = (plan.mode == RecoveryMode::point) ? recover_point(vh, pg, plan)
                                                        : recover_integral(vh, pg, plan);
    result.quantum = bundle.to_physical(u_aug.head(hom.n_base));
    result.classical = bundle.to_physical(classical_solve(bundle.ode, ecfg));
    result.field_names = bundle.names;

    const double cell = std::pow(grid.h, cfg.dimension);
    result.vs_classical = error_norms(result.quantum, result.classical, bundle.names, cell);

    const IsotropicMedium medium = medium_from(cfg);
    if ((cfg.formulation == Formulation::displacement_spectral ||
         cfg.formulation == Formulation::displacement_central) &&
        cfg.dimension == 1 && cfg.init_preset == "exact-hyperbolic") {
        ExactHyperbolicSolution exact(medium.mu.constant, medium.lambda.constant);
        result.exact = exact.sample(grid, cfg.T);
        result.vs_exact = error_norms(result.quantum, *result.exact, bundle.names, cell);
    }

    result.resources = measure(ssys, cfg.T, 0.01, 7);

    // node coordinates for the result table (per component via offsets)
    result.xs.resize(bundle.npts);
    if (cfg.dimension == 1) {
        for (int j = 0; j < grid.M; ++j) result.xs[j] = grid.node(j);
    } else {
        result.ys.resize(bundle.npts);
        for (int i = 0; i < grid.M; ++i)
            for (int j = 0; j < grid.M; ++j) {
                result.xs[static_cast<size_t>(i) * grid.M + j] = grid.node(i);
                result.ys[static_cast<size_t>(i) * grid.M + j] = grid.node(j);
            }
    }
    return result;
}

namespace {

std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string result_table_csv(const RunResult& r) {
    std::ostringstream os;
    os << "# schrowave result table\n";
    os << "# config_hash=" << hash_hex(r.config_hash) << "\n";
    os << "# formulation=" << formulation_to_string(r.cfg.formulation)
       << " dimension=" << r.cfg.dimension << " M=" << r.cfg.grid_M << " N=" << r.pgrid_used.N
       << " p_star=" << fmt(r.p_star) << " p1=" << fmt(r.p1_value) << "\n";
    const bool has_exact = r.exact.has_value();
    const bool two_d = !r.ys.empty();
    os << "component,x" << (two_d ? ",y" : "") << ",quantum,classical"
       << (has_exact ? ",exact" : "") << ",abs_err,rel_err\n";

    const Eigen::Index npts = static_cast<Eigen::Index>(r.xs.size());
    for (size_t c = 0; c < r.field_names.size(); ++c) {
        double cmax = 0.0;
        for (Eigen::Index j = 0; j < npts; ++j)
            cmax = std::max(cmax, std::abs(r.classical[c * npts + j]));
        const double denom = cmax > 0.0 ? cmax : 1.0;
        for (Eigen::Index j = 0; j < npts; ++j) {
            const double q = r.quantum[c * npts + j].real();
            const double cl = r.classical[c * npts + j].real();
            const double abs_err = std::abs(q - cl);
            os << r.field_names[c] << "," << fmt(r.xs[j]);
            if (two_d) os << "," << fmt(r.ys[j]);
            os << "," << fmt(q) << "," << fmt(cl);
            if (has_exact) os << "," << fmt((*r.exact)[c * npts + j].real());
            os << "," << fmt(abs_err) << "," << fmt(abs_err / denom) << "\n";
        }
    }
    return os.str();
}

std::string recovered_fields_csv(const RunResult& r) {
    std::ostringstream os;
    const bool two_d = !r.ys.empty();
    os << "# config_hash=" << hash_hex(r.config_hash) << "\n";
    os << "x" << (two_d ? ",y" : "") << ",component,value\n";
    const Eigen::Index npts = static_cast<Eigen::Index>(r.xs.size());
    for (size_t c = 0; c < r.field_names.size(); ++c)
        for (Eigen::Index j = 0; j < npts; ++j) {
            os << fmt(r.xs[j]);
            if (two_d) os << "," << fmt(r.ys[j]);
            os << "," << r.field_names[c] << "," << fmt(r.quantum[c * npts + j].real()) << "\n";
        }
    return os.str();
}

std::string error_report_csv(const RunResult& r) {
    std::ostringstream os;
    os << "# config_hash=" << hash_hex(r.config_hash) << "\n";
    os << "component,l2_abs,l2_rel,linf_abs,linf_rel\n";
    for (const auto& c : r.vs_classical.components)
        os << c.name << "," << fmt(c.l2_abs) << "," << fmt(c.l2_rel) << "," << fmt(c.linf_abs)
           << "," << fmt(c.linf_rel) << "\n";
    return os.str();
}

namespace {

nlohmann::json report_to_json(const ErrorReport& rep) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : rep.components) {
        nlohmann::json jc = {{"name", c.name},     {"l2_abs", c.l2_abs},
                             {"l2_rel", c.l2_rel},  {"linf_abs", c.linf_abs},
                             {"linf_rel", c.linf_rel}, {"rel_defined", c.rel_defined}};
        comps.push_back(jc);
    }
    return {{"cell_volume", rep.cell_volume}, {"components", comps}};
}

}  // namespace

std::string error_report_json(const RunResult& r) {
    nlohmann::json j;
    j["config_hash"] = hash_hex(r.config_hash);
    j["formulation"] = formulation_to_string(r.cfg.formulation);
    j["lambda_max_h1"] = r.lambda_max_h1;
    j["p_star"] = r.p_star;
    j["p1"] = r.p1_value;
    j["window_extended"] = r.window_extended;
    j["vs_classical"] = report_to_json(r.vs_classical);
    if (r.vs_exact) j["vs_exact"] = report_to_json(*r.vs_exact);
    return j.dump(2) + "\n";
}

std::string resources_json(const RunResult& r) {
    const ResourceEstimate& e = r.resources;
    nlohmann::json j;
    j["config_hash"] = hash_hex(r.config_hash);
    j["label"] = e.label;
    j["s"] = e.s;
    j["hmax"] = e.hmax;
    j["tau"] = e.tau;
    j["m_H"] = e.m_H;
    j["m_e"] = e.m_e;
    j["delta"] = e.delta;
    j["n_query"] = e.n_query;
    j["n_gate"] = e.n_gate;
    j["predicted_m_H"] =
        predicted_qubits(r.cfg.formulation, r.cfg.dimension, r.cfg.grid_M, r.pgrid_used.N);
    return j.dump(2) + "\n";
}

std::string resources_csv_row(const RunResult& r) {
    std::ostringstream os;
    const ResourceEstimate& e = r.resources;
    os << formulation_to_string(r.cfg.formulation) << "," << r.cfg.dimension << ",,," << fmt(r.cfg.T)
       << "," << e.s << "," << fmt(e.hmax) << "," << fmt(e.tau) << "," << e.m_H << "," << e.n_query
       << "," << e.n_gate << ",\n";
    return os.str();
}

void write_run_artifacts(const RunResult& r) {
    std::string dir = r.cfg.output_dir;
    if (dir.empty()) {
        const char* env = std::getenv("SCHROWAVE_OUT");
        dir = env ? env : "out";
    }
    std::filesystem::create_directories(dir);
    auto write_atomic = [&](const std::string& name, const std::string& content) {
        const std::string tmp = dir + "/." + name + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            f << content;
        }
        std::filesystem::rename(tmp, dir + "/" + name);
    };
    write_atomic("result_table.csv", result_table_csv(r));
    write_atomic("quantum_fields.csv", recovered_fields_csv(r));
    write_atomic("error_report.json", error_report_json(r));
    write_atomic("error_report.csv", error_report_csv(r));
    write_atomic("resources.json", resources_json(r));
    write_atomic("resources.csv",
                 "# config_hash=" + hash_hex(r.config_hash) +
                     "\nformulation,d,r,epsilon,T,s,hmax,tau,m_H,n_query,n_gate_proxy,"
                     "classical_ops_proxy\n" +
                     resources_csv_row(r));
}

SweepResult sweep_experiment(const ExperimentConfig& base, const std::string& axis,
                             const std::vector<double>& values) {
    if (values.size() < 3) throw std::invalid_argument("sweep: need at least 3 values");
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1]) throw std::invalid_argument("sweep: values must increase");

    SweepResult out;
    out.axis = axis;
    out.base_hash = base.hash();
    for (double v : values) {
        ExperimentConfig cfg = base;
        double err = 0.0;
        if (axis == "M") {
            cfg.grid_M = static_cast<int>(v);
            const bool has_exact = (cfg.formulation == Formulation::displacement_spectral ||
                                    cfg.formulation == Formulation::displacement_central) &&
                                   cfg.dimension == 1 && cfg.init_preset == "exact-hyperbolic";
            if (has_exact) {
                // spatial-order metric: classical solve against the closed form
                AssembledBundle bundle = assemble_bundle(cfg);
                EvolutionConfig ecfg{cfg.scheme, cfg.dt, cfg.T};
                DenseVec w = bundle.to_physical(classical_solve(bundle.ode, ecfg));
                const IsotropicMedium medium = medium_from(cfg);
                ExactHyperbolicSolution exact(medium.mu.constant, medium.lambda.constant);
                const Grid1D grid = make_uniform_grid(cfg.grid_a, cfg.grid_b, cfg.grid_M);
                err = error_norms(w, exact.sample(grid, cfg.T), bundle.names, grid.h).max_l2_rel();
                out.metric = "classical_vs_exact_l2";
            } else {
                RunResult r = run_experiment(cfg);
                err = r.vs_classical.max_l2_rel();
                out.metric = "quantum_vs_classical_l2";
            }
        } else if (axis == "N") {
            cfg.p_N = static_cast<int>(v);
            RunResult r = run_experiment(cfg);
            err = r.vs_classical.max_l2_rel();
            out.metric = "quantum_vs_classical_l2";
        } else if (axis == "dt") {
            cfg.dt = v;
            AssembledBundle bundle = assemble_bundle(cfg);
            EvolutionConfig stepped{cfg.scheme, cfg.dt, cfg.T};
            EvolutionConfig oracle{TimeScheme::exact_exponential, cfg.T, cfg.T};
            DenseVec u = classical_solve(bundle.ode, stepped);
            DenseVec u_exact = classical_solve(bundle.ode, oracle);
            err = (u - u_exact).norm() / u_exact.norm();
            out.metric = "classical_vs_exponential_l2";
        } else {
            throw std::invalid_argument("sweep: axis must be M, N, or dt");
        }
        out.points.push_back({v, err});
    }

    // least-squares slope of log(err) against log(value)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(out.points.size());
    for (const auto& p : out.points) {
        const double lx = std::log(p.value), ly = std::log(std::max(p.error, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.observed_order = (axis == "dt") ? slope : -slope;
    return out;
}

std::string sweep_csv(const SweepResult& s) {
    std::ostringstream os;
    os << "# schrowave sweep axis=" << s.axis << " metric=" << s.metric << "\n";
    os << "# base_config_hash=" << hash_hex(s.base_hash) << "\n";
    os << s.axis << ",error\n";
    for (const auto& p : s.points) os << fmt(p.value) << "," << fmt(p.error) << "\n";
    os << "# observed_order=" << fmt(s.observed_order) << "\n";
    return os.str();
}

}  // namespace schrowave
